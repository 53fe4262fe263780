#!/usr/bin/env python3
"""Multistart comparison of the Armijo and adaptive stepsize rules on the portfolio problem.

Writes ``front.csv``, ``stats.csv`` and ``stats.json`` to ``--out-dir``,
verifies every trace, and measures how close each attained point comes to
being dominated by a uniform sample of the simplex.
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

import numpy as np

from vecfw import bench, solve
from vecfw.problem import portfolio_problem
from vecfw.solver import SolverConfig, verify_trace


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--starts", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--epsilon", type=float, default=1e-5)
    parser.add_argument("--samples", type=int, default=100_000, help="simplex samples for the dominance check")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--out-dir", default="results")
    args = parser.parse_args()

    p = portfolio_problem()
    configs = {name: SolverConfig(stepsize=name, epsilon=args.epsilon) for name in ("armijo", "adaptive")}
    t0 = time.perf_counter()
    records = bench.multistart(p.cone, p.objective, p.region, configs, args.starts, args.seed, args.jobs)
    stats = bench.aggregate(records)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    bench.export(records, stats, out / "front.csv", out / "stats.csv", p.labels, out / "stats.json")
    print(bench.summary_table(stats))
    print(f"multistart: {time.perf_counter() - t0:.2f}s")

    violations = 0
    for r in records:
        res = solve(p.cone, p.objective, p.region, configs[r.algorithm], r.x0)
        violations += len(verify_trace(res, p.cone, p.objective, p.region, configs[r.algorithm]))
    print(f"trace violations: {violations}")

    rng = np.random.default_rng(args.seed + 1)
    S = rng.standard_exponential((args.samples, p.region.n))
    S /= S.sum(axis=1, keepdims=True)
    FS = np.array([p.objective(s) for s in S])
    margins = np.array([np.max(np.min(r.F - FS, axis=1)) for r in records])
    v = np.array([abs(r.v) for r in records])
    print(f"largest dominance margin: {margins.max():.3e}")
    print(f"points with margin > 1e-6: {int(np.sum(margins > 1e-6))}/{len(records)}")
    print(f"points with margin > |v|: {int(np.sum(margins > v + 1e-12))}/{len(records)}")
    kept, dropped = bench.nondominated(records)
    print(f"mutually nondominated points: {len(kept)} kept, {len(dropped)} dropped")


if __name__ == "__main__":
    main()
