"""Randomised validation suites for the cone calculus, the descent lemma and the LP solver.

Each suite returns a list of :class:`CheckResult`; the command line
``check`` subcommand prints them and exits nonzero on any failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import lp as lpmod
from .cone import ConeKind, OrderingCone, catalog_entry, skewed_2d_region
from .objective import QuadraticVectorObjective, portfolio_objective
from .oracles import brute_force_oriented_distance, enumerate_vertices, planar_boundary
from .region import Polytope
from .solver import psi


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def cone_instances() -> dict[str, OrderingCone]:
    return {
        "orthant2-linf": OrderingCone.orthant(2, "linf"),
        "orthant3-linf": OrderingCone.orthant(3, "linf"),
        "orthant2-l2": OrderingCone.orthant(2, "l2"),
        "skewed2d-l2": OrderingCone.skewed_2d(),
    }


def _halfspaces(cone: OrderingCone) -> np.ndarray:
    """Rows ``a_k`` with ``C = {y : a_k . y >= 0}`` (orthant and planar cones only)."""
    if cone.kind is ConeKind.ORTHANT:
        return np.eye(cone.dimension)
    r1, r2 = cone.rays
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    a1, a2 = rot @ r2, rot @ r1
    a1 = a1 if a1 @ r1 > 0 else -a1
    a2 = a2 if a2 @ r2 > 0 else -a2
    return np.array([a1, a2])


def negative_cone_position(cone: OrderingCone, y, tol: float = 1e-12) -> int:
    """-1 for ``y in -int(C)``, 0 on ``bd(-C)``, +1 outside ``-C``; by direct inequalities."""
    slack = _halfspaces(cone) @ (-np.asarray(y, float))
    if np.all(slack > tol):
        return -1
    if np.all(slack >= -tol):
        return 0
    return 1


def _boundary_point(cone: OrderingCone, rng) -> np.ndarray:
    if cone.kind is ConeKind.ORTHANT:
        y = -rng.uniform(0.0, 2.0, cone.dimension)
        y[rng.integers(cone.dimension)] = 0.0
        return y
    return -rng.uniform(0.0, 2.0) * cone.rays[rng.integers(2)]


def _ratio(failures: int, total: int) -> str:
    return f"{total - failures}/{total} ok"


def distance_properties(cone: OrderingCone, rng, samples: int = 1000, tol: float = 1e-9) -> list[CheckResult]:
    """The six oriented-distance properties on ``samples`` random inputs each."""
    m = cone.dimension
    phi = cone.oriented_distance
    norm = cone.norm
    draw = lambda: rng.uniform(-3.0, 3.0, m)
    fails = dict.fromkeys(
        ["1-lipschitz", "sign-classification", "convexity", "positive-homogeneity",
         "subadditivity", "order-monotonicity"], 0)
    for i in range(samples):
        y1, y2 = draw(), draw()
        if abs(phi(y1) - phi(y2)) > norm(y1 - y2) + tol:
            fails["1-lipschitz"] += 1

        kind = i % 3
        if kind == 0:
            y = -cone.sample(rng, interior=True)
        elif kind == 1:
            y = _boundary_point(cone, rng)
        else:
            y = draw()
        expected = negative_cone_position(cone, y)
        value = phi(y)
        got = 0 if abs(value) <= tol else int(np.sign(value))
        if got != expected:
            fails["sign-classification"] += 1

        lam = rng.uniform()
        if phi(lam * y1 + (1 - lam) * y2) > lam * phi(y1) + (1 - lam) * phi(y2) + tol:
            fails["convexity"] += 1

        alpha = rng.uniform(0.01, 10.0)
        if abs(phi(alpha * y1) - alpha * phi(y1)) > tol * max(1.0, alpha):
            fails["positive-homogeneity"] += 1

        if phi(y1 + y2) > phi(y1) + phi(y2) + tol or phi(y1) - phi(y2) > phi(y1 - y2) + tol:
            fails["subadditivity"] += 1

        c = cone.sample(rng, interior=False)
        ci = cone.sample(rng, interior=True)
        if phi(y1) > phi(y1 + c) + tol or not phi(y1) < phi(y1 + ci):
            fails["order-monotonicity"] += 1
    return [CheckResult(f"{name}", f == 0, _ratio(f, samples)) for name, f in fails.items()]


def _sample_in_region(label: str, rng) -> np.ndarray:
    while True:
        y = rng.uniform(-3.0, 3.0, 2)
        if skewed_2d_region(y) == label:
            return y


def catalog_agreement(rng, points: int = 200, tol: float = 1e-6) -> list[CheckResult]:
    """Closed forms of the catalog sets against boundary sampling."""
    results = []
    for name in ("unit_ball", "negative_orthant", "skewed_2d_negative"):
        entry = catalog_entry(name)
        worst = 0.0
        for i in range(points):
            if name == "skewed_2d_negative":
                y = _sample_in_region(f"B{i % 5 + 1}", rng)
            else:
                y = rng.uniform(-3.0, 3.0, 2)
            bf = brute_force_oriented_distance(y, planar_boundary(name, 30.0), entry.membership, entry.norm)
            worst = max(worst, abs(bf - entry.distance(y)))
        results.append(CheckResult(f"closed-form {name}", worst <= tol, f"max error {worst:.2e}"))
    return results


def cone_suite(seed: int = 0, samples: int = 1000) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    for label, cone in cone_instances().items():
        for r in distance_properties(cone, rng, samples):
            results.append(CheckResult(f"{label} {r.name}", r.passed, r.detail))
        if cone.max_linear_generators is not None:
            worst = max(abs(cone.max_linear(y) - cone(y)) for y in rng.uniform(-3, 3, (samples, cone.dimension)))
            results.append(CheckResult(f"{label} max-linear form", worst <= 1e-12, f"max error {worst:.2e}"))
    results.extend(catalog_agreement(rng))
    return results


def descent_inequalities(
    cone: OrderingCone,
    objective: QuadraticVectorObjective,
    region: Polytope,
    L: float,
    rng,
    pairs: int = 1000,
    tol: float = 1e-10,
) -> list[CheckResult]:
    """Vector descent lemma and its scalarized form on random pairs in the region."""
    e = cone.interior_vector
    phi_e = cone(e)
    vec_fail = sca_fail = 0
    for _ in range(pairs):
        x, y = region.sample_uniform(rng), region.sample_uniform(rng)
        half = 0.5 * L * float((y - x) @ (y - x))
        lhs = objective(y) - objective(x)
        rhs = objective.jacobian(x) @ (y - x) + half * e
        if cone.oriented_distance(lhs - rhs) > tol:
            vec_fail += 1
        if cone(objective(y)) - cone(objective(x)) > psi(cone, objective, x, y) + half * phi_e + tol:
            sca_fail += 1
    return [
        CheckResult("vector descent lemma", vec_fail == 0, _ratio(vec_fail, pairs)),
        CheckResult("scalarized descent inequality", sca_fail == 0, _ratio(sca_fail, pairs)),
    ]


def descent_suite(seed: int = 0, pairs: int = 1000) -> list[CheckResult]:
    obj = portfolio_objective()
    L = obj.lipschitz_constant()
    results = [CheckResult("descent condition certified (L*I - 2Q_i PSD)", obj.satisfies_descent_condition(L), f"L={L!r}")]
    results += descent_inequalities(OrderingCone.orthant(2), obj, Polytope.unit_simplex(5), L,
                                    np.random.default_rng(seed), pairs)
    return results


def random_lp(rng) -> dict:
    """A bounded random LP with at most 6 variables and 8 constraint rows.

    Half the instances use small integer data, which makes degenerate
    vertices common.
    """
    n = int(rng.integers(2, 7))
    n_eq = int(rng.integers(0, 3))
    n_ub = int(rng.integers(1, 9 - n_eq))
    if rng.random() < 0.5:
        gen: Callable = lambda *shape: rng.integers(-3, 4, size=shape).astype(float)
        b_ub = np.abs(gen(n_ub))
    else:
        gen = lambda *shape: rng.standard_normal(shape)
        b_ub = np.abs(gen(n_ub)) + 0.1
    return dict(
        c=gen(n),
        A_eq=gen(n_eq, n) if n_eq else None,
        b_eq=gen(n_eq) if n_eq else None,
        A_ub=gen(n_ub, n),
        b_ub=b_ub,
        lower=np.zeros(n),
        upper=rng.integers(1, 4, size=n).astype(float),
    )


def lp_agreement(data: dict, tol: float = 1e-8) -> tuple[bool, str]:
    sol = lpmod.solve(lpmod.LinearProgram(**data))
    status, value, _ = enumerate_vertices(**data)
    if sol.status.value != status:
        return False, f"status {sol.status.value} vs enumeration {status}"
    if status == "optimal" and abs(sol.fun - value) > tol:
        return False, f"value {sol.fun!r} vs enumeration {value!r}"
    return True, status


def lp_suite(seed: int = 0, instances: int = 200) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    fails = []
    for i in range(instances):
        ok, detail = lp_agreement(random_lp(rng))
        if not ok:
            fails.append(f"#{i}: {detail}")
    detail = _ratio(len(fails), instances) + ("; " + "; ".join(fails[:3]) if fails else "")
    return [CheckResult("simplex vs vertex enumeration", not fails, detail)]


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "cone": cone_suite,
    "descent": descent_suite,
    "lp": lp_suite,
}
