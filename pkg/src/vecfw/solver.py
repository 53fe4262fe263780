"""Frank-Wolfe iteration for vector optimization under a cone order.

Each iteration solves the direction subproblem ``min_{s in Omega} phi_C(JF(x)(s - x))``
as a linear program, then steps toward its minimiser with either an Armijo
backtracking rule or the closed-form adaptive stepsize.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import lp as lpmod
from .cone import OrderingCone
from .objective import QuadraticVectorObjective
from .region import Polytope

GAP_TOL = 1e-9
ARMIJO_TOL = 1e-12
FEASIBILITY_TOL = 1e-9


class StepsizeMode(str, enum.Enum):
    ARMIJO = "armijo"
    ADAPTIVE = "adaptive"


class SolveStatus(str, enum.Enum):
    STATIONARY = "stationary"
    MAX_ITERATIONS = "max_iterations"
    LINE_SEARCH_FAILURE = "line_search_failure"


class LineSearchFailure(RuntimeError):
    pass


class InfeasibleStartError(ValueError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    stepsize: StepsizeMode = StepsizeMode.ARMIJO
    beta: float = 0.1
    tau: float = 0.5
    epsilon: float = 1e-5
    max_iterations: int = 10_000
    max_backtracks: int = 100
    lipschitz: Optional[float] = None
    keep_trace: bool = True

    def __post_init__(self):
        object.__setattr__(self, "stepsize", StepsizeMode(self.stepsize))
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")
        if not 0.0 < self.tau < 1.0:
            raise ValueError("tau must lie in (0, 1)")
        if not self.epsilon > 0.0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations < 0 or self.max_backtracks < 0:
            raise ValueError("iteration limits must be nonnegative")
        if self.lipschitz is not None and not self.lipschitz > 0.0:
            raise ValueError("lipschitz override must be positive")


@dataclass(frozen=True)
class IterateRecord:
    k: int
    x: np.ndarray
    v: float
    s: np.ndarray
    d: np.ndarray
    t: Optional[float]  # None on the final record: no step was taken
    F: np.ndarray
    phi: float
    backtracks: int = 0


@dataclass
class SolveResult:
    status: SolveStatus
    x: np.ndarray
    v: float
    iterations: int
    trace: list[IterateRecord] = field(default_factory=list)
    seconds: float = 0.0
    lipschitz: Optional[float] = None

    @property
    def F(self) -> np.ndarray:
        return self.trace[-1].F


class Direction(NamedTuple):
    s: np.ndarray
    v: float
    d: np.ndarray


def psi(cone: OrderingCone, objective: QuadraticVectorObjective, x, s) -> float:
    """``phi_C(JF(x)(s - x))``, the linearised scalarized progress toward ``s``."""
    x = np.asarray(x, dtype=float)
    return cone.oriented_distance(objective.jacobian(x) @ (np.asarray(s, dtype=float) - x))


def direction_subproblem(cone: OrderingCone, objective: QuadraticVectorObjective, region: Polytope, x) -> Direction:
    """Solve ``min_s max_j <w_j' JF(x), s - x>`` over the region.

    The LP has variables ``(s, gamma)`` and minimises ``gamma`` subject to
    ``gamma >= <w_j' JF(x), s - x>``.  ``s = x`` is always feasible with
    value zero, so a slightly positive LP optimum is roundoff and is
    replaced by that point.
    """
    if not cone.solver_compatible:
        raise ValueError("the direction subproblem needs a cone with a max-linear representation")
    x = np.asarray(x, dtype=float)
    n = region.n
    G = cone.max_linear_generators @ objective.jacobian(x)
    k = G.shape[0]
    cost = np.zeros(n + 1)
    cost[-1] = 1.0
    A_ub = np.hstack([G, -np.ones((k, 1))])
    b_ub = G @ x
    if region.A_ub.size:
        A_ub = np.vstack([A_ub, np.hstack([region.A_ub, np.zeros((region.A_ub.shape[0], 1))])])
        b_ub = np.concatenate([b_ub, region.b_ub])
    A_eq = np.hstack([region.A_eq, np.zeros((region.A_eq.shape[0], 1))])
    problem = lpmod.LinearProgram(
        cost, A_eq, region.b_eq, A_ub, b_ub,
        np.append(region.lower, -np.inf), np.append(region.upper, np.inf),
    )
    sol = lpmod.solve(problem)
    if not sol.optimal:
        raise RuntimeError(f"direction subproblem LP failed: {sol.status.value}")
    s = sol.x[:n]
    v = sol.fun
    if v > GAP_TOL:
        raise AssertionError(f"gap value {v:.3e} is positive beyond tolerance")
    if v > 0.0:
        s, v = x.copy(), 0.0
    return Direction(s, float(v), s - x)


def armijo_line_search(
    cone: OrderingCone,
    objective: QuadraticVectorObjective,
    x,
    d,
    J,
    beta: float = 0.1,
    tau: float = 0.5,
    max_backtracks: int = 100,
) -> tuple[float, int]:
    """First ``t`` in ``1, tau, tau^2, ...`` with ``F(x+td) <=_C F(x) + t*beta*J d``.

    Returns ``(t, number_of_backtracks)``.

    Raises
    ------
    LineSearchFailure
        If no step is accepted within ``max_backtracks`` reductions.
    """
    x = np.asarray(x, dtype=float)
    d = np.asarray(d, dtype=float)
    Fx = objective.evaluate(x)
    Jd = np.asarray(J) @ d
    t = 1.0
    for backtracks in range(max_backtracks + 1):
        excess = objective.evaluate(x + t * d) - Fx - t * beta * Jd
        if cone.oriented_distance(excess) <= ARMIJO_TOL:
            return t, backtracks
        t *= tau
    raise LineSearchFailure(f"no acceptable step after {max_backtracks} backtracks")


def adaptive_stepsize(v: float, d, L: float) -> float:
    """``min(1, -v / (L ||d||^2))``."""
    d = np.asarray(d, dtype=float)
    dd = float(d @ d)
    if dd == 0.0:
        raise ValueError("zero direction with a negative gap value")
    if not L > 0.0:
        raise ValueError("Lipschitz constant must be positive")
    return min(1.0, -v / (L * dd))


def solve(
    cone: OrderingCone,
    objective: QuadraticVectorObjective,
    region: Polytope,
    config: SolverConfig,
    x0,
) -> SolveResult:
    """Run the Frank-Wolfe method from ``x0`` until ``|v| <= epsilon``.

    Raises
    ------
    InfeasibleStartError
        If ``x0`` is not in the region (tolerance 1e-9).
    """
    x = np.asarray(x0, dtype=float)
    if x.shape != (region.n,):
        raise InfeasibleStartError(f"x0 has shape {x.shape}, expected ({region.n},)")
    if not region.contains(x, FEASIBILITY_TOL):
        raise InfeasibleStartError("x0 infeasible")
    if objective.n != region.n or objective.m != cone.dimension:
        raise ValueError("cone, objective and region dimensions disagree")

    L = None
    if config.stepsize is StepsizeMode.ADAPTIVE:
        L = config.lipschitz if config.lipschitz is not None else objective.lipschitz_constant()

    start = time.perf_counter()
    trace: list[IterateRecord] = []
    status = SolveStatus.MAX_ITERATIONS
    k = 0
    while True:
        s, v, d = direction_subproblem(cone, objective, region, x)
        Fx = objective.evaluate(x)
        phi = cone.oriented_distance(Fx)
        if abs(v) <= config.epsilon or k >= config.max_iterations:
            if abs(v) <= config.epsilon:
                status = SolveStatus.STATIONARY
            trace.append(IterateRecord(k, x, v, s, d, None, Fx, phi))
            break
        backtracks = 0
        if config.stepsize is StepsizeMode.ARMIJO:
            try:
                t, backtracks = armijo_line_search(
                    cone, objective, x, d, objective.jacobian(x),
                    config.beta, config.tau, config.max_backtracks,
                )
            except LineSearchFailure:
                status = SolveStatus.LINE_SEARCH_FAILURE
                trace.append(IterateRecord(k, x, v, s, d, None, Fx, phi, config.max_backtracks))
                break
        else:
            t = adaptive_stepsize(v, d, L)
        trace.append(IterateRecord(k, x, v, s, d, t, Fx, phi, backtracks))
        if not config.keep_trace:
            del trace[:-1]
        x = x + t * d
        k += 1
    if not config.keep_trace:
        del trace[:-1]
    return SolveResult(status, x, v, k, trace, time.perf_counter() - start, L)


def verify_trace(
    result: SolveResult,
    cone: OrderingCone,
    objective: QuadraticVectorObjective,
    region: Polytope,
    config: SolverConfig,
    tol: float = 1e-9,
) -> list[str]:
    """Check the guarantees that must hold along a full trace; return violation messages.

    Checked at every iterate: feasibility and the convex-combination update,
    ``v < 0`` before termination, ``|v| <= epsilon`` when stationary, and
    per stepsize rule either the Armijo inequality with the partial-sum
    bound ``sum t_i |v_i| <= (phi(F(x0)) - phi(F(x_{k+1}))) / beta`` or the
    adaptive decrease bound
    ``phi(F(x_{k+1})) - phi(F(x_k)) <= (phi(e) - 2)/2 * min(v^2/(L diam^2), -v)``.
    """
    problems = []
    trace = result.trace
    if result.status is SolveStatus.STATIONARY and abs(result.v) > config.epsilon:
        problems.append(f"stationary status with |v|={abs(result.v):.3e}")
    diam = region.diameter()
    phi_e = cone.oriented_distance(cone.interior_vector)
    phi0 = trace[0].phi if trace else np.nan
    partial = 0.0
    for rec, nxt in zip(trace, trace[1:] + [None]):
        if not region.contains(rec.x, tol):
            problems.append(f"k={rec.k}: iterate infeasible")
        if not region.contains(rec.s, tol):
            problems.append(f"k={rec.k}: subproblem point infeasible")
        if nxt is None:
            continue
        if not rec.v < 0.0:
            problems.append(f"k={rec.k}: non-final gap value {rec.v!r} is not negative")
        if not 0.0 < rec.t <= 1.0:
            problems.append(f"k={rec.k}: step {rec.t!r} outside (0, 1]")
        combo = rec.t * rec.s + (1.0 - rec.t) * rec.x
        if np.max(np.abs(combo - nxt.x)) > tol:
            problems.append(f"k={rec.k}: next iterate is not the convex combination")
        if config.stepsize is StepsizeMode.ARMIJO:
            Jd = objective.jacobian(rec.x) @ rec.d
            excess = nxt.F - rec.F - rec.t * config.beta * Jd
            if cone.oriented_distance(excess) > tol:
                problems.append(f"k={rec.k}: Armijo inequality violated by {cone.oriented_distance(excess):.3e}")
            partial += rec.t * abs(rec.v)
            bound = (phi0 - nxt.phi) / config.beta
            if partial > bound + tol:
                problems.append(f"k={rec.k}: partial sum {partial:.6e} exceeds bound {bound:.6e}")
        else:
            L = result.lipschitz
            gain = min(rec.v ** 2 / (L * diam ** 2), -rec.v)
            bound = (phi_e - 2.0) / 2.0 * gain
            if nxt.phi - rec.phi > bound + tol:
                problems.append(f"k={rec.k}: adaptive decrease {nxt.phi - rec.phi:.3e} above bound {bound:.3e}")
            if not nxt.phi < rec.phi:
                problems.append(f"k={rec.k}: scalarized value did not decrease")
    return problems
