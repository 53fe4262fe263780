"""Command line interface: ``vecfw solve | bench | check``.

Exit codes: 0 success (stationary point / all checks pass), 1 input error,
2 iteration limit reached, 3 line search failure.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import bench
from .checks import SUITES
from .problem import Problem, ProblemError, load_problem
from .region import RegionError
from .solver import InfeasibleStartError, SolverConfig, SolveResult, SolveStatus, solve, verify_trace

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MAX_ITER = 2
EXIT_LINE_SEARCH = 3

_STATUS_EXIT = {
    SolveStatus.STATIONARY: EXIT_OK,
    SolveStatus.MAX_ITERATIONS: EXIT_MAX_ITER,
    SolveStatus.LINE_SEARCH_FAILURE: EXIT_LINE_SEARCH,
}


def _vec(x) -> str:
    return ",".join(repr(float(v)) for v in x)


def _config(args, stepsize: str) -> SolverConfig:
    return SolverConfig(
        stepsize=stepsize,
        beta=args.beta,
        tau=args.tau,
        epsilon=args.epsilon,
        max_iterations=args.max_iter,
        lipschitz=args.lipschitz,
    )


def _parse_x0(text: str, problem: Problem, seed: int) -> np.ndarray:
    if text == "random":
        return problem.region.sample_uniform(np.random.default_rng(seed))
    try:
        x0 = np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise ProblemError(f"cannot parse x0 {text!r}") from None
    if x0.size != problem.region.n:
        raise ProblemError(f"x0 has {x0.size} entries, expected {problem.region.n}")
    return x0


def write_trace(path, result: SolveResult) -> None:
    """One CSV row per iterate with ``repr`` floats, so equal traces give equal bytes."""
    n = result.x.size
    m = result.trace[-1].F.size
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k"] + [f"x{j + 1}" for j in range(n)] + [f"s{j + 1}" for j in range(n)]
                   + ["v", "t", "backtracks"] + [f"F{i + 1}" for i in range(m)] + ["phi"])
        for r in result.trace:
            w.writerow([r.k] + [repr(float(v)) for v in r.x] + [repr(float(v)) for v in r.s]
                       + [repr(r.v), "" if r.t is None else repr(r.t), r.backtracks]
                       + [repr(float(v)) for v in r.F] + [repr(r.phi)])


def cmd_solve(args) -> int:
    try:
        problem = load_problem(args.problem)
        x0 = _parse_x0(args.x0, problem, args.seed)
        config = _config(args, args.algorithm)
        result = solve(problem.cone, problem.objective, problem.region, config, x0)
    except InfeasibleStartError:
        print("error=x0 infeasible", file=sys.stderr)
        print("x0 infeasible")
        return EXIT_INPUT
    except (ProblemError, RegionError, ValueError) as exc:
        print(f"error={exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.trace:
        write_trace(args.trace, result)
    F = problem.objective.evaluate(result.x)
    print(f"status={result.status.value}")
    print(f"iterations={result.iterations}")
    print(f"v={result.v!r}")
    print(f"x={_vec(result.x)}")
    print(f"F={_vec(F)}")
    print(f"seconds={result.seconds!r}")
    print()
    print(f"{problem.name}: {args.algorithm} finished with status {result.status.value} "
          f"after {result.iterations} iterations, |v| = {abs(result.v):.3e}")
    for label, value in zip(problem.labels, F):
        print(f"  {label:>12} = {value: .8f}")
    if args.verify:
        problems = verify_trace(result, problem.cone, problem.objective, problem.region, config)
        print(f"trace_violations={len(problems)}")
        for p in problems[:10]:
            print(f"  {p}")
    return _STATUS_EXIT[result.status]


def cmd_bench(args) -> int:
    try:
        problem = load_problem(args.problem)
        configs = {name: _config(args, name) for name in ("armijo", "adaptive")}
    except (ProblemError, RegionError, ValueError) as exc:
        print(f"error={exc}", file=sys.stderr)
        return EXIT_INPUT
    records = bench.multistart(problem.cone, problem.objective, problem.region, configs,
                               args.starts, args.seed, args.jobs)
    stats = bench.aggregate(records)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    bench.export(records, stats, out / "front.csv", out / "stats.csv", problem.labels, out / "stats.json")
    kept, dropped = bench.nondominated(records)
    print(f"runs={len(records)}")
    for name, s in stats.items():
        print(f"{name}.stationary={s.stationary}")
        print(f"{name}.mean_iterations={s.mean_iterations!r}")
        print(f"{name}.mean_cpu_seconds={s.mean_cpu_seconds!r}")
    print(f"front_nondominated={len(kept)}")
    print(f"front_dropped={len(dropped)}")
    print(f"front_csv={out / 'front.csv'}")
    print(f"stats_csv={out / 'stats.csv'}")
    print()
    print(bench.summary_table(stats))
    errors = [r for r in records if r.status == "error"]
    for r in errors[:5]:
        print(f"  start {r.start_id} {r.algorithm}: {r.error}")
    return EXIT_OK


def cmd_check(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    passed = failed = 0
    for name in names:
        for r in SUITES[name](seed=args.seed):
            flag = "PASS" if r.passed else "FAIL"
            print(f"[{flag}] {name}: {r.name} ({r.detail})")
            passed += r.passed
            failed += not r.passed
    print(f"passed={passed}")
    print(f"failed={failed}")
    return EXIT_OK if failed == 0 else EXIT_INPUT


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", default="portfolio-d2007", help="builtin name or JSON problem file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=1e-5)
    p.add_argument("--beta", type=float, default=0.1)
    p.add_argument("--tau", type=float, default=0.5)
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("--lipschitz", type=float, default=None, help="override the computed Lipschitz constant")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vecfw", description="Frank-Wolfe method for vector optimization")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one solve")
    _common(p)
    p.add_argument("--algorithm", choices=["armijo", "adaptive"], default="armijo")
    p.add_argument("--x0", default="random", help="comma separated start point, or 'random'")
    p.add_argument("--trace", default=None, help="write the iterate trace to this CSV file")
    p.add_argument("--verify", action="store_true", help="check the trace guarantees after solving")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="multistart comparison of both stepsize rules")
    _common(p)
    p.add_argument("--starts", type=int, default=50)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out-dir", default="results")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("check", help="run the validation suites")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
