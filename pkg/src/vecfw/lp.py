"""Dense two-phase tableau simplex with Bland's anti-cycling rule.

Solves ``min c'x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  lower <= x <= upper``.
Bounds default to ``0 <= x < inf``; infinite bounds on either side are allowed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-9


class LpStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LinearProgram:
    c: np.ndarray
    A_eq: Optional[np.ndarray] = None
    b_eq: Optional[np.ndarray] = None
    A_ub: Optional[np.ndarray] = None
    b_ub: Optional[np.ndarray] = None
    lower: Optional[np.ndarray] = None
    upper: Optional[np.ndarray] = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float).ravel()
        p = self.c.size
        self.A_eq, self.b_eq = _rows(self.A_eq, self.b_eq, p, "eq")
        self.A_ub, self.b_ub = _rows(self.A_ub, self.b_ub, p, "ub")
        self.lower = np.zeros(p) if self.lower is None else np.asarray(self.lower, dtype=float).ravel()
        self.upper = np.full(p, np.inf) if self.upper is None else np.asarray(self.upper, dtype=float).ravel()
        if self.lower.shape != (p,) or self.upper.shape != (p,):
            raise ValueError("bounds must match the number of variables")
        if np.any(self.lower > self.upper):
            raise ValueError("lower bound exceeds upper bound")
        if np.any(self.lower == np.inf) or np.any(self.upper == -np.inf):
            raise ValueError("bounds must leave a nonempty range")

    @property
    def num_vars(self) -> int:
        return self.c.size


def _rows(A, b, p, name):
    if A is None or (np.size(A) == 0 and (b is None or np.size(b) == 0)):
        return np.zeros((0, p)), np.zeros(0)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    if A.shape[1] != p:
        raise ValueError(f"A_{name} has {A.shape[1]} columns, expected {p}")
    if A.shape[0] != b.size:
        raise ValueError(f"A_{name} has {A.shape[0]} rows but b_{name} has {b.size} entries")
    if not np.all(np.isfinite(b)):
        raise ValueError(f"b_{name} must be finite")
    return A, b


@dataclass(frozen=True)
class LpSolution:
    """Result of :func:`solve`.

    ``basis`` and ``reduced_costs`` refer to the internal standard-form
    columns.  ``x`` is ``None`` unless the status is optimal.
    """

    status: LpStatus
    x: Optional[np.ndarray]
    fun: float
    basis: tuple[int, ...]
    reduced_costs: np.ndarray
    iterations: int

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class _StandardForm:
    """``min c'z  s.t.  A z = b,  z >= 0`` with ``x = offset + T z`` and ``b >= 0``."""

    def __init__(self, lp: LinearProgram):
        p = lp.num_vars
        lo, up = lp.lower, lp.upper
        cols = []  # (original index, sign)
        offset = np.zeros(p)
        box_rows = []
        for j in range(p):
            if np.isfinite(lo[j]):
                offset[j] = lo[j]
                cols.append((j, 1.0))
                if np.isfinite(up[j]):
                    box_rows.append((len(cols) - 1, up[j] - lo[j]))
            elif np.isfinite(up[j]):
                offset[j] = up[j]
                cols.append((j, -1.0))
            else:
                cols.append((j, 1.0))
                cols.append((j, -1.0))
        T = np.zeros((p, len(cols)))
        for k, (j, sign) in enumerate(cols):
            T[j, k] = sign
        n_struct = len(cols)

        ub_A = lp.A_ub @ T
        ub_b = lp.b_ub - lp.A_ub @ offset
        if box_rows:
            extra = np.zeros((len(box_rows), n_struct))
            for r, (k, width) in enumerate(box_rows):
                extra[r, k] = 1.0
            ub_A = np.vstack([ub_A, extra])
            ub_b = np.concatenate([ub_b, [w for _, w in box_rows]])
        n_slack = ub_A.shape[0]
        eq_A = lp.A_eq @ T
        eq_b = lp.b_eq - lp.A_eq @ offset

        A = np.zeros((eq_A.shape[0] + n_slack, n_struct + n_slack))
        A[: eq_A.shape[0], :n_struct] = eq_A
        A[eq_A.shape[0]:, :n_struct] = ub_A
        A[eq_A.shape[0]:, n_struct:] = np.eye(n_slack)
        b = np.concatenate([eq_b, ub_b])
        flip = b < 0
        A[flip] *= -1.0
        b[flip] *= -1.0

        self.A, self.b = A, b
        self.c = np.concatenate([lp.c @ T, np.zeros(n_slack)])
        self.T, self.offset = T, offset
        self.n_struct = n_struct

    def recover(self, z: np.ndarray) -> np.ndarray:
        return self.offset + self.T @ z[: self.n_struct]


def _pivot(tab: np.ndarray, row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    factors = tab[:, col].copy()
    factors[row] = 0.0
    tab -= np.outer(factors, tab[row])


def _run_simplex(tab: np.ndarray, basis: list[int], n_cols: int, max_iter: int) -> tuple[str, int]:
    """Bland-rule primal simplex on a tableau whose last row holds reduced costs.

    Only the first ``n_cols`` columns may enter.  Returns ``("optimal" |
    "unbounded", iterations)``.
    """
    for it in range(max_iter):
        rc = tab[-1, :n_cols]
        entering = np.flatnonzero(rc < -PIVOT_TOL)
        if entering.size == 0:
            return "optimal", it
        col = int(entering[0])
        column = tab[:-1, col]
        rows = np.flatnonzero(column > PIVOT_TOL)
        if rows.size == 0:
            return "unbounded", it
        ratios = tab[rows, -1] / column[rows]
        best = ratios.min()
        tied = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
        row = int(min(tied, key=lambda r: basis[r]))
        _pivot(tab, row, col)
        basis[row] = col
    raise RuntimeError("simplex iteration limit reached")


def solve(lp: LinearProgram, max_iter: int = 10_000) -> LpSolution:
    """Solve ``lp`` exactly at a vertex.  Deterministic for fixed input."""
    sf = _StandardForm(lp)
    n_rows, n_cols = sf.A.shape
    empty = np.zeros(0)

    # phase 1: one artificial per row, minimise their sum
    tab = np.zeros((n_rows + 1, n_cols + n_rows + 1))
    tab[:n_rows, :n_cols] = sf.A
    tab[:n_rows, n_cols:n_cols + n_rows] = np.eye(n_rows)
    tab[:n_rows, -1] = sf.b
    tab[-1, :n_cols] = -sf.A.sum(axis=0)
    tab[-1, -1] = -sf.b.sum()
    basis = list(range(n_cols, n_cols + n_rows))
    _, it1 = _run_simplex(tab, basis, n_cols, max_iter)
    if -tab[-1, -1] > FEAS_TOL * max(1.0, float(np.max(sf.b, initial=0.0))):
        return LpSolution(LpStatus.INFEASIBLE, None, np.nan, tuple(basis), empty, it1)

    # drive remaining artificials out of the basis, dropping redundant rows
    keep = []
    for r in range(n_rows):
        if basis[r] >= n_cols:
            candidates = np.flatnonzero(np.abs(tab[r, :n_cols]) > PIVOT_TOL)
            if candidates.size == 0:
                continue
            _pivot(tab, r, int(candidates[0]))
            basis[r] = int(candidates[0])
        keep.append(r)
    tab = np.vstack([tab[keep], tab[-1:]])
    tab = np.hstack([tab[:, :n_cols], tab[:, -1:]])
    basis = [basis[r] for r in keep]

    # phase 2
    cost = sf.c
    tab[-1, :n_cols] = cost
    tab[-1, -1] = 0.0
    for r, j in enumerate(basis):
        tab[-1] -= cost[j] * tab[r]
    outcome, it2 = _run_simplex(tab, basis, n_cols, max_iter)
    rc = tab[-1, :n_cols].copy()
    if outcome == "unbounded":
        return LpSolution(LpStatus.UNBOUNDED, None, -np.inf, tuple(basis), rc, it1 + it2)

    z = np.zeros(n_cols)
    z[basis] = tab[:-1, -1]
    x = sf.recover(np.maximum(z, 0.0))
    return LpSolution(LpStatus.OPTIMAL, x, float(lp.c @ x), tuple(basis), rc, it1 + it2)


def residual(lp: LinearProgram, x: np.ndarray) -> float:
    """Largest violation of the constraints of ``lp`` at ``x``."""
    parts = [0.0]
    if lp.A_eq.size:
        parts.append(float(np.max(np.abs(lp.A_eq @ x - lp.b_eq))))
    if lp.A_ub.size:
        parts.append(float(np.max(lp.A_ub @ x - lp.b_ub)))
    parts.append(float(np.max(lp.lower - x, initial=0.0)))
    parts.append(float(np.max(x - lp.upper, initial=0.0)))
    return max(parts)
