"""Compact polyhedral feasible sets."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import lp as lpmod


class RegionKind(str, enum.Enum):
    SIMPLEX = "simplex"
    BOX = "box"
    GENERAL = "general"


class RegionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Polytope:
    """``{x : A_eq x = b_eq, A_ub x <= b_ub, lower <= x <= upper}``.

    Nonemptiness and boundedness are certified by linear programs when
    the polytope is built; the per-coordinate extremes found on the way
    are kept as :attr:`bounding_box`.
    """

    n: int
    A_eq: np.ndarray
    b_eq: np.ndarray
    A_ub: np.ndarray
    b_ub: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    kind: RegionKind = RegionKind.GENERAL
    bounding_box: tuple = field(init=False, repr=False)

    def __post_init__(self):
        probe = lpmod.LinearProgram(
            np.zeros(self.n), self.A_eq, self.b_eq, self.A_ub, self.b_ub, self.lower, self.upper
        )
        for name in ("A_eq", "b_eq", "A_ub", "b_ub", "lower", "upper"):
            value = getattr(probe, name)
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        if lpmod.solve(probe).status is lpmod.LpStatus.INFEASIBLE:
            raise RegionError("feasible region is empty")
        lo = np.empty(self.n)
        hi = np.empty(self.n)
        for j in range(self.n):
            for sign, out in ((1.0, lo), (-1.0, hi)):
                cost = np.zeros(self.n)
                cost[j] = sign
                sol = lpmod.solve(self._lp(cost))
                if sol.status is lpmod.LpStatus.UNBOUNDED:
                    raise RegionError(f"feasible region is unbounded along coordinate {j}")
                out[j] = sol.x[j]
        object.__setattr__(self, "bounding_box", (lo, hi))

    @classmethod
    def unit_simplex(cls, n: int) -> "Polytope":
        return cls(n, np.ones((1, n)), np.ones(1), np.zeros((0, n)), np.zeros(0),
                   np.zeros(n), np.full(n, np.inf), RegionKind.SIMPLEX)

    @classmethod
    def box(cls, lower, upper) -> "Polytope":
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        if lower.shape != upper.shape or lower.ndim != 1:
            raise RegionError("box bounds must be vectors of equal length")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise RegionError("box bounds must be finite")
        n = lower.size
        return cls(n, np.zeros((0, n)), np.zeros(0), np.zeros((0, n)), np.zeros(0),
                   lower, upper, RegionKind.BOX)

    @classmethod
    def general(cls, n: int, A_eq=None, b_eq=None, A_ub=None, b_ub=None, lower=None, upper=None) -> "Polytope":
        """Explicit constraint data; bounds default to ``-inf < x < inf``."""
        lower = np.full(n, -np.inf) if lower is None else lower
        upper = np.full(n, np.inf) if upper is None else upper
        return cls(n, A_eq, b_eq, A_ub, b_ub, lower, upper, RegionKind.GENERAL)

    def _lp(self, cost) -> lpmod.LinearProgram:
        return lpmod.LinearProgram(cost, self.A_eq, self.b_eq, self.A_ub, self.b_ub, self.lower, self.upper)

    def _check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise RegionError(f"expected a point of dimension {self.n}, got shape {x.shape}")
        return x

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = self._check(x)
        if self.A_eq.size and np.max(np.abs(self.A_eq @ x - self.b_eq)) > tol:
            return False
        if self.A_ub.size and np.max(self.A_ub @ x - self.b_ub) > tol:
            return False
        return bool(np.all(x >= self.lower - tol) and np.all(x <= self.upper + tol))

    def diameter(self) -> float:
        """Exact for simplices and boxes, otherwise the bounding-box diagonal (an upper bound)."""
        if self.kind is RegionKind.SIMPLEX:
            return float(np.sqrt(2.0)) if self.n > 1 else 0.0
        lo, hi = self.bounding_box
        return float(np.linalg.norm(hi - lo))

    def sample_uniform(self, rng: np.random.Generator) -> np.ndarray:
        if self.kind is RegionKind.SIMPLEX:
            e = rng.standard_exponential(self.n)
            return e / e.sum()
        if self.kind is RegionKind.BOX:
            return rng.uniform(self.lower, self.upper)
        raise RegionError("uniform sampling is only supported on simplices and boxes")

    def linear_minimization_oracle(self, cost) -> np.ndarray:
        """A vertex minimising ``<cost, s>``; ties on the simplex go to the smallest index."""
        cost = self._check(cost)
        if self.kind is RegionKind.SIMPLEX:
            vertex = np.zeros(self.n)
            vertex[int(np.argmin(cost))] = 1.0
            return vertex
        if self.kind is RegionKind.BOX:
            return np.where(cost < 0.0, self.upper, self.lower)
        sol = lpmod.solve(self._lp(cost))
        if not sol.optimal:
            raise RuntimeError(f"linear minimization failed on a certified region: {sol.status.value}")
        return sol.x

    def vertices(self) -> Optional[np.ndarray]:
        """Explicit vertex list for simplices and small boxes, ``None`` otherwise."""
        if self.kind is RegionKind.SIMPLEX:
            return np.eye(self.n)
        if self.kind is RegionKind.BOX and self.n <= 12:
            corners = np.array(np.meshgrid(*[(0, 1)] * self.n, indexing="ij")).reshape(self.n, -1).T
            return self.lower + corners * (self.upper - self.lower)
        return None
