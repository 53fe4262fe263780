"""Independent reference computations used to validate the solver components.

Nothing here calls into :mod:`vecfw.lp` or the solver; each routine reaches
its answer by a different route (dense sampling, enumeration, or scipy).
"""

from __future__ import annotations

import itertools
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import linprog, minimize_scalar

Curve = Callable[[float], np.ndarray]


def _row_norms(Y: np.ndarray, norm) -> np.ndarray:
    order = np.inf if str(getattr(norm, "value", norm)) == "linf" else 2
    return np.linalg.norm(Y, ord=order, axis=-1)


def curve_distance(y, curve: Curve, t_max: float, norm, samples: int = 4001) -> float:
    """``min_t ||y - curve(t)||`` over ``[0, t_max]``: dense grid, then bounded refinement.

    ``curve`` maps an array of parameters to an array of points, one per row;
    ``norm`` is ``"l2"`` or ``"linf"``.
    """
    ts = np.linspace(0.0, t_max, samples)
    dists = _row_norms(y - curve(ts), norm)
    i = int(np.argmin(dists))
    lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, samples - 1)]
    best = float(dists[i])
    res = minimize_scalar(lambda t: float(_row_norms(y - curve(np.array([t])), norm)[0]),
                          bounds=(lo, hi), method="bounded", options={"xatol": 1e-13 * max(1.0, t_max)})
    return min(best, float(res.fun))


def brute_force_oriented_distance(
    y,
    boundary: Sequence[tuple[Curve, float]],
    membership: Callable[[np.ndarray], bool],
    norm,
) -> float:
    """Oriented distance from boundary sampling: ``+dist`` outside the set, ``-dist`` inside."""
    y = np.asarray(y, dtype=float)
    d = min(curve_distance(y, curve, t_max, norm) for curve, t_max in boundary)
    return -d if membership(y) else d


def planar_boundary(name: str, radius: float) -> list[tuple[Curve, float]]:
    """Parametrised boundary curves of the planar catalog sets."""
    if name == "unit_ball":
        return [(lambda t: np.stack([np.cos(t), np.sin(t)], axis=-1), 2.0 * np.pi)]
    if name == "negative_orthant":
        return [(lambda t: np.stack([-t, 0.0 * t], axis=-1), radius),
                (lambda t: np.stack([0.0 * t, -t], axis=-1), radius)]
    if name == "skewed_2d_negative":
        return [(lambda t: np.stack([-t, 0.0 * t], axis=-1), radius),
                (lambda t: np.stack([t, -t], axis=-1), radius)]
    raise KeyError(name)


def polyhedral_oriented_distance_linf(y, A, b) -> float:
    """Oriented distance to ``{z : A z <= b}`` under the max-norm, via scipy.

    Outside: ``min r`` s.t. ``A z <= b, |y - z|_i <= r``.  Inside: the
    nearest facet hyperplane, ``min_k (b_k - a_k y) / ||a_k||_1``.
    """
    y = np.asarray(y, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    slack = b - A @ y
    if np.all(slack >= 0.0):
        return -float(np.min(slack / np.abs(A).sum(axis=1)))
    m = y.size
    eye = np.eye(m)
    ones = np.ones((m, 1))
    A_ub = np.vstack([
        np.hstack([A, np.zeros((A.shape[0], 1))]),
        np.hstack([eye, -ones]),
        np.hstack([-eye, -ones]),
    ])
    b_ub = np.concatenate([b, y, -y])
    cost = np.zeros(m + 1)
    cost[-1] = 1.0
    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * m + [(0, None)], method="highs")
    return float(res.fun)


def enumerate_vertices(c, A_eq=None, b_eq=None, A_ub=None, b_ub=None, lower=None, upper=None, tol=1e-9):
    """Solve a bounded LP by checking every basic solution.

    Bounds must be finite below.  Returns ``(status, value, x)`` with status
    ``"optimal"`` or ``"infeasible"`` (the region is assumed bounded).
    """
    c = np.asarray(c, dtype=float)
    n = c.size
    lower = np.zeros(n) if lower is None else np.asarray(lower, float)
    upper = np.full(n, np.inf) if upper is None else np.asarray(upper, float)
    G = [-np.eye(n)]
    h = [-lower]
    if A_ub is not None and np.size(A_ub):
        G.append(np.atleast_2d(A_ub))
        h.append(np.asarray(b_ub, float))
    finite = np.isfinite(upper)
    if finite.any():
        G.append(np.eye(n)[finite])
        h.append(upper[finite])
    G = np.vstack(G)
    h = np.concatenate(h)

    if A_eq is not None and np.size(A_eq):
        E = np.atleast_2d(np.asarray(A_eq, float))
        f = np.asarray(b_eq, float)
        # keep a maximal independent set of equality rows
        rows = []
        for i in range(E.shape[0]):
            if np.linalg.matrix_rank(E[rows + [i]], tol=1e-10) > len(rows):
                rows.append(i)
        E_ind, f_ind = E[rows], f[rows]
    else:
        E = np.zeros((0, n))
        f = np.zeros(0)
        E_ind, f_ind = E, f

    k = n - E_ind.shape[0]
    subsets = list(itertools.combinations(range(G.shape[0]), k))
    combos = np.array(subsets, dtype=int).reshape(len(subsets), k)
    if combos.shape[0] == 0:
        return "infeasible", np.inf, None
    M = np.concatenate([np.broadcast_to(E_ind, (combos.shape[0],) + E_ind.shape), G[combos]], axis=1)
    rhs = np.concatenate([np.broadcast_to(f_ind, (combos.shape[0], f_ind.size)), h[combos]], axis=1)
    sv = np.linalg.svd(M, compute_uv=False)
    ok = sv[:, -1] > 1e-9 * np.maximum(sv[:, 0], 1.0)
    if not ok.any():
        return "infeasible", np.inf, None
    X = np.linalg.solve(M[ok], rhs[ok][..., None])[..., 0]
    feasible = np.all(X @ G.T <= h + tol, axis=1)
    if E.shape[0]:
        feasible &= np.all(np.abs(X @ E.T - f) <= tol, axis=1)
    if not feasible.any():
        return "infeasible", np.inf, None
    X = X[feasible]
    vals = X @ c
    i = int(np.argmin(vals))
    return "optimal", float(vals[i]), X[i]


def simplex_grid(n: int, steps: int) -> np.ndarray:
    """All points of the unit simplex in ``R^n`` with coordinates in ``{0, 1/steps, ..., 1}``."""
    points = []
    for bars in itertools.combinations(range(steps + n - 1), n - 1):
        counts = np.diff(np.concatenate([[-1], bars, [steps + n - 1]])) - 1
        points.append(counts / steps)
    return np.array(points)


def simplex_edge_gap(G, x) -> tuple[float, np.ndarray]:
    """Exact ``min over the unit simplex of max_i <G_i, s - x>`` for two rows ``G``.

    With two linear pieces an optimal ``s`` lies on an edge (or vertex) of
    the simplex, so minimising the max of two affine functions of ``lambda``
    along every edge ``lambda e_a + (1 - lambda) e_b`` gives the optimum.
    """
    G = np.asarray(G, dtype=float)
    x = np.asarray(x, dtype=float)
    if G.shape[0] != 2:
        raise ValueError("edge enumeration needs exactly two rows")
    n = x.size
    r = G @ x
    best, best_s = np.inf, None
    for a in range(n):
        for b in range(a, n):
            # piece_i(lam) = lam*G[i,a] + (1-lam)*G[i,b] - r_i
            p = (G[:, a] - G[:, b])
            q = G[:, b] - r
            cands = [0.0, 1.0]
            if abs(p[0] - p[1]) > 0:
                lam = (q[1] - q[0]) / (p[0] - p[1])
                if 0.0 <= lam <= 1.0:
                    cands.append(lam)
            for lam in cands:
                val = float(np.max(lam * p + q))
                if val < best:
                    s = np.zeros(n)
                    s[a] += lam
                    s[b] += 1.0 - lam
                    best, best_s = val, s
    return best, best_s
