"""Multistart experiments: both stepsize rules from a shared set of random starts."""

from __future__ import annotations

import csv
import json
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Mapping, Optional, Sequence

import numpy as np

from .cone import OrderingCone
from .objective import QuadraticVectorObjective
from .region import Polytope
from .solver import SolverConfig, SolveStatus, solve

DEFAULT_CONFIGS = {
    "armijo": SolverConfig(stepsize="armijo"),
    "adaptive": SolverConfig(stepsize="adaptive"),
}


@dataclass(frozen=True)
class RunRecord:
    start_id: int
    algorithm: str
    x0: np.ndarray
    x: np.ndarray
    F: np.ndarray
    iterations: int
    cpu_seconds: float
    v: float
    status: str
    error: Optional[str] = None


@dataclass(frozen=True)
class AlgorithmStats:
    algorithm: str
    runs: int
    stationary: int
    mean_iterations: float
    min_iterations: int
    median_iterations: float
    max_iterations: int
    mean_cpu_seconds: float
    min_cpu_seconds: float
    median_cpu_seconds: float
    max_cpu_seconds: float


AggregateStats = Dict[str, AlgorithmStats]


def start_points(region: Polytope, n_starts: int, seed: int) -> list[np.ndarray]:
    """Start ``i`` is drawn from its own generator seeded with ``(seed, i)``."""
    if n_starts < 1:
        raise ValueError("n_starts must be at least 1")
    return [region.sample_uniform(np.random.default_rng([seed, i])) for i in range(n_starts)]


def _run_one(cone, objective, region, name, config, start_id, x0) -> RunRecord:
    clock = time.perf_counter()
    try:
        result = solve(cone, objective, region, config, x0)
    except Exception as exc:  # recorded per run, never fatal to the experiment
        nan = np.full(objective.m, np.nan)
        return RunRecord(start_id, name, x0, np.full(region.n, np.nan), nan, 0,
                         time.perf_counter() - clock, np.nan, "error", repr(exc))
    elapsed = time.perf_counter() - clock
    return RunRecord(start_id, name, x0, result.x, objective.evaluate(result.x),
                     result.iterations, elapsed, result.v, result.status.value)


def multistart(
    cone: OrderingCone,
    objective: QuadraticVectorObjective,
    region: Polytope,
    configs: Mapping[str, SolverConfig] = DEFAULT_CONFIGS,
    n_starts: int = 50,
    seed: int = 0,
    jobs: int = 1,
) -> list[RunRecord]:
    """Run every configuration from the same ``n_starts`` seeded starts.

    Records come back ordered by ``(start_id, algorithm)`` whatever ``jobs`` is.
    """
    starts = start_points(region, n_starts, seed)
    tasks = [(name, cfg, i, x0) for i, x0 in enumerate(starts) for name, cfg in configs.items()]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(lambda t: _run_one(cone, objective, region, *t), tasks))
    else:
        records = [_run_one(cone, objective, region, *t) for t in tasks]
    return sorted(records, key=lambda r: (r.start_id, r.algorithm))


def aggregate(records: Sequence[RunRecord]) -> AggregateStats:
    if not records:
        raise ValueError("cannot aggregate an empty record list")
    stats = {}
    for name in sorted({r.algorithm for r in records}):
        rs = [r for r in records if r.algorithm == name]
        its = [r.iterations for r in rs]
        secs = [r.cpu_seconds for r in rs]
        stats[name] = AlgorithmStats(
            name, len(rs), sum(r.status == SolveStatus.STATIONARY.value for r in rs),
            sum(its) / len(its), min(its), statistics.median(its), max(its),
            sum(secs) / len(secs), min(secs), statistics.median(secs), max(secs),
        )
    return stats


def nondominated(records: Sequence[RunRecord], tol: float = 1e-6) -> tuple[list[RunRecord], list[RunRecord]]:
    """Split records into ``(kept, dropped)``; a record is dropped when another
    record beats it by more than ``tol`` in every objective."""
    ok = [r for r in records if r.status == SolveStatus.STATIONARY.value]
    if not ok:
        return [], list(records)
    F = np.array([r.F for r in ok])
    kept, dropped = [], [r for r in records if r.status != SolveStatus.STATIONARY.value]
    for i, r in enumerate(ok):
        beaten = np.all(F < F[i] - tol, axis=1)
        (dropped if beaten.any() else kept).append(r)
    return kept, dropped


def _fmt(x: float) -> str:
    return repr(float(x))


def export(
    records: Sequence[RunRecord],
    stats: AggregateStats,
    front_path,
    stats_path,
    labels: Optional[Sequence[str]] = None,
    stats_json_path=None,
) -> None:
    """Write the attained points and the per-algorithm summary as CSV (and JSON)."""
    records = sorted(records, key=lambda r: (r.start_id, r.algorithm))
    n = records[0].x.size if records else 0
    m = records[0].F.size if records else 0
    labels = list(labels) if labels is not None else [f"f{i + 1}" for i in range(m)]
    with open(front_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["start_id", "algorithm", "iterations", "cpu_seconds", "final_v"]
                   + [f"x{j + 1}" for j in range(n)] + labels)
        for r in records:
            w.writerow([r.start_id, r.algorithm, r.iterations, _fmt(r.cpu_seconds), _fmt(r.v)]
                       + [_fmt(v) for v in r.x] + [_fmt(v) for v in r.F])
    fields = list(AlgorithmStats.__dataclass_fields__)
    rows = [stats[name] for name in sorted(stats)]
    with open(stats_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(fields)
        for s in rows:
            w.writerow([_fmt(getattr(s, f)) if isinstance(getattr(s, f), float) else getattr(s, f) for f in fields])
    if stats_json_path is not None:
        payload = {s.algorithm: {f: getattr(s, f) for f in fields if f != "algorithm"} for s in rows}
        Path(stats_json_path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def summary_table(stats: AggregateStats) -> str:
    names = sorted(stats)
    head = f"{'':<26}" + "".join(f"{n:>14}" for n in names)
    cpu = f"{'Average of CPU time (s)':<26}" + "".join(f"{stats[n].mean_cpu_seconds:>14.3f}" for n in names)
    its = f"{'Average of iterations':<26}" + "".join(f"{stats[n].mean_iterations:>14.3f}" for n in names)
    ok = f"{'Stationary runs':<26}" + "".join(f"{stats[n].stationary:>10}/{stats[n].runs:<3}" for n in names)
    return "\n".join([head, cpu, its, ok])
