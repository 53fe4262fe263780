"""Quadratic vector objectives ``f_i(x) = x'Q_i x + c_i'x`` and the bicriteria portfolio instance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PSD_TOL = 1e-10
SYMMETRY_TOL = 1e-12
LIPSCHITZ_FLOOR = 1e-16


class ObjectiveError(ValueError):
    pass


def psd_check(matrix, tol: float = PSD_TOL) -> bool:
    """True iff the smallest eigenvalue of a symmetric matrix is ``>= -tol``."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ObjectiveError(f"psd_check needs a square matrix, got shape {matrix.shape}")
    if matrix.size == 0:
        return True
    return bool(np.linalg.eigvalsh(0.5 * (matrix + matrix.T))[0] >= -tol)


def largest_eigenvalue(
    matrix,
    rtol: float = 1e-10,
    max_iter: int = 200_000,
    seed: int = 0,
) -> float:
    """Algebraically largest eigenvalue of a symmetric matrix by power iteration.

    The matrix is shifted by its Gershgorin radius so that the dominant
    eigenvalue of the shifted matrix is the algebraic maximum.  Iteration
    stops once the residual ``||Bv - rho v||``, which bounds the eigenvalue
    error for symmetric matrices, falls below ``rtol * |lambda|`` (floored at
    ``rtol * 1e-6 * shift`` so a zero eigenvalue still terminates).  A start
    vector that collapses onto the null space is replaced by a fresh one.
    """
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    if n == 0:
        return 0.0
    shift = float(np.max(np.sum(np.abs(a), axis=1)))
    if shift == 0.0:
        return 0.0
    b = a + shift * np.eye(n)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    rayleigh = float(v @ b @ v)
    for _ in range(max_iter):
        w = b @ v
        rayleigh = float(v @ w)
        if np.linalg.norm(w - rayleigh * v) <= rtol * max(abs(rayleigh - shift), 1e-6 * shift):
            break
        norm = np.linalg.norm(w)
        if norm <= 1e-300:
            v = rng.standard_normal(n)
            v /= np.linalg.norm(v)
            continue
        v = w / norm
    return rayleigh - shift


@dataclass(frozen=True, eq=False)
class QuadraticVectorObjective:
    """``F(x) = (x'Q_1 x + c_1'x, ..., x'Q_m x + c_m'x)``.

    Parameters
    ----------
    Q : array of shape (m, n, n)
        Symmetric curvature matrices.
    c : array of shape (m, n)
        Linear terms.
    """

    Q: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        Q = np.array(self.Q, dtype=float)
        c = np.array(self.c, dtype=float)
        if Q.ndim != 3 or Q.shape[1] != Q.shape[2]:
            raise ObjectiveError(f"Q must have shape (m, n, n), got {Q.shape}")
        if c.shape != Q.shape[:2]:
            raise ObjectiveError(f"c must have shape {Q.shape[:2]}, got {c.shape}")
        if not np.allclose(Q, np.swapaxes(Q, 1, 2), rtol=0.0, atol=SYMMETRY_TOL):
            raise ObjectiveError("every Q_i must be symmetric")
        Q.setflags(write=False)
        c.setflags(write=False)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "c", c)

    @classmethod
    def from_components(cls, components) -> "QuadraticVectorObjective":
        """Build from a sequence of ``(Q_i, c_i)`` pairs; ``Q_i=None`` means linear."""
        pairs = [(None if q is None else np.asarray(q, float), np.asarray(c, float)) for q, c in components]
        n = pairs[0][1].shape[0]
        Q = np.stack([np.zeros((n, n)) if q is None else q for q, _ in pairs])
        return cls(Q, np.stack([c for _, c in pairs]))

    @property
    def n(self) -> int:
        return self.Q.shape[1]

    @property
    def m(self) -> int:
        return self.Q.shape[0]

    def _check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ObjectiveError(f"expected x of dimension {self.n}, got shape {x.shape}")
        return x

    def evaluate(self, x) -> np.ndarray:
        x = self._check(x)
        return np.einsum("j,ijk,k->i", x, self.Q, x) + self.c @ x

    __call__ = evaluate

    def jacobian(self, x) -> np.ndarray:
        """``m x n`` matrix whose row ``i`` is ``2 Q_i x + c_i``."""
        x = self._check(x)
        return 2.0 * (self.Q @ x) + self.c

    def lipschitz_constant(self) -> float:
        """``max_i 2 lambda_max(Q_i)``, floored at a tiny positive value."""
        L = max(2.0 * largest_eigenvalue(q) for q in self.Q)
        return max(L, LIPSCHITZ_FLOOR)

    def is_convex(self) -> bool:
        """Componentwise convexity, i.e. C-convexity for the nonnegative orthant."""
        return all(psd_check(q) for q in self.Q)

    def satisfies_descent_condition(self, L: float) -> bool:
        """Whether ``(L/2)||x||^2 - f_i`` is convex for every component (``L*I - 2Q_i`` PSD)."""
        eye = np.eye(self.n)
        return all(psd_check(L * eye - 2.0 * q) for q in self.Q)


# Five stocks (IBM, Microsoft, Apple, Quest Diagnostics, Bank of America),
# estimated from prices and dividends between 2002-02-01 and 2007-02-01.
PORTFOLIO_RETURNS = np.array([0.004, 0.00513, 0.04085, 0.01006, 0.01236])
PORTFOLIO_COVARIANCE = np.array([
    [0.006461, 0.002983, 0.00235487, 0.00235487, 0.00096889],
    [0.002983, 0.0039, 0.00095937, -0.0001987, 0.00063459],
    [0.00235487, 0.00095937, 0.01267778, 0.00135712, 0.00134481],
    [0.00235487, -0.0001987, 0.00135712, 0.00559836, 0.00041942],
    [0.00096889, 0.00063459, 0.00134481, 0.00041942, 0.0016229],
])
PORTFOLIO_RETURNS.setflags(write=False)
PORTFOLIO_COVARIANCE.setflags(write=False)
PORTFOLIO_ASSETS = ("IBM", "Microsoft", "Apple", "Quest Diagnostics", "Bank of America")
PORTFOLIO_LABELS = ("neg_return", "risk")


@dataclass(frozen=True)
class PortfolioInstance:
    u: np.ndarray = PORTFOLIO_RETURNS
    V: np.ndarray = PORTFOLIO_COVARIANCE

    def objective(self) -> QuadraticVectorObjective:
        """``F(x) = (-x'u, x'Vx)``."""
        n = self.u.shape[0]
        return QuadraticVectorObjective(
            np.stack([np.zeros((n, n)), self.V]),
            np.stack([-self.u, np.zeros(n)]),
        )


def portfolio_objective() -> QuadraticVectorObjective:
    return PortfolioInstance().objective()
