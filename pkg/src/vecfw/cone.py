"""Ordering cones and oriented distance functions.

The oriented distance of a set ``A`` is ``d_A(y) - d_{R^m \\ A}(y)``: positive
outside ``A``, negative inside, zero on the boundary.  An ordering cone ``C``
is scalarized through ``phi_C(y) = Delta_{-C}(y)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

# Sign classification tolerance on phi_C (not a solver tolerance).
CLASSIFY_TOL = 1e-12


class ConeKind(str, enum.Enum):
    ORTHANT = "orthant"
    POLYHEDRAL_2D = "polyhedral2d"
    ANALYTIC = "analytic"


class Norm(str, enum.Enum):
    LINF = "linf"
    L2 = "l2"

    def __call__(self, y) -> float:
        y = np.asarray(y, dtype=float)
        if self is Norm.LINF:
            return float(np.max(np.abs(y))) if y.size else 0.0
        return float(np.linalg.norm(y))


class ConeError(ValueError):
    pass


def _as_vector(y, m: int) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.shape != (m,):
        raise ConeError(f"expected a vector of dimension {m}, got shape {y.shape}")
    return y


def _ray_distance(y: np.ndarray, ray: np.ndarray) -> float:
    """Euclidean distance from ``y`` to the half-line ``{t * ray : t >= 0}``."""
    t = max(0.0, float(y @ ray) / float(ray @ ray))
    return float(np.linalg.norm(y - t * ray))


@dataclass(frozen=True, eq=False)
class OrderingCone:
    """A closed, convex, pointed ordering cone with nonempty interior.

    Construct through :meth:`orthant`, :meth:`polyhedral_2d` or
    :meth:`analytic` rather than directly.

    Attributes
    ----------
    dimension : int
        Dimension ``m`` of the image space.
    kind : ConeKind
    norm : Norm
        Norm used inside the oriented distance.
    max_linear_generators : ndarray or None
        Rows ``w_j`` with ``phi_C(y) = max_j <w_j, y>``.  Only cones carrying
        this representation can drive the solver, since the direction
        subproblem then stays a linear program.
    interior_vector : ndarray
        A vector ``e`` in ``int(C)``.
    """

    dimension: int
    kind: ConeKind
    norm: Norm
    interior_vector: np.ndarray
    max_linear_generators: Optional[np.ndarray] = None
    rays: Optional[np.ndarray] = field(default=None, repr=False)
    evaluator: Optional[Callable[[np.ndarray], float]] = field(default=None, repr=False)

    @classmethod
    def orthant(cls, m: int, norm: Norm | str = Norm.LINF) -> "OrderingCone":
        if m < 1:
            raise ConeError("cone dimension must be positive")
        norm = Norm(norm)
        generators = np.eye(m) if norm is Norm.LINF else None
        return cls(m, ConeKind.ORTHANT, norm, np.ones(m), generators)

    @classmethod
    def polyhedral_2d(cls, g1, g2, interior_vector=None) -> "OrderingCone":
        """Planar cone ``{a*g1 + b*g2 : a, b >= 0}`` under the Euclidean norm."""
        rays = np.array([g1, g2], dtype=float)
        if rays.shape != (2, 2):
            raise ConeError("a planar cone needs two generators in R^2")
        det = np.linalg.det(rays.T)
        if abs(det) < 1e-12:
            raise ConeError("generators must be linearly independent (pointed cone, nonempty interior)")
        if interior_vector is None:
            interior_vector = rays[0] / np.linalg.norm(rays[0]) + rays[1] / np.linalg.norm(rays[1])
        return cls(2, ConeKind.POLYHEDRAL_2D, Norm.L2, np.asarray(interior_vector, dtype=float), rays=rays)

    @classmethod
    def skewed_2d(cls) -> "OrderingCone":
        """The planar cone ``{y : y1 + y2 >= 0, y2 >= 0}``."""
        return cls.polyhedral_2d((1.0, 0.0), (-1.0, 1.0), interior_vector=(0.0, 1.0))

    @classmethod
    def analytic(
        cls,
        m: int,
        interior_vector,
        evaluator: Optional[Callable[[np.ndarray], float]] = None,
        norm: Norm | str = Norm.L2,
        max_linear_generators=None,
    ) -> "OrderingCone":
        """A cone known only through a user-supplied ``phi_C`` evaluator."""
        w = None if max_linear_generators is None else np.atleast_2d(np.asarray(max_linear_generators, float))
        return cls(m, ConeKind.ANALYTIC, Norm(norm), _as_vector(interior_vector, m), w, evaluator=evaluator)

    def with_evaluator(self, evaluator: Callable[[np.ndarray], float]) -> "OrderingCone":
        if self.kind is not ConeKind.ANALYTIC:
            raise ConeError("only analytic cones accept an installed evaluator")
        return OrderingCone(
            self.dimension, self.kind, self.norm, self.interior_vector,
            self.max_linear_generators, evaluator=evaluator,
        )

    @property
    def solver_compatible(self) -> bool:
        return self.max_linear_generators is not None

    def oriented_distance(self, y) -> float:
        """Evaluate ``phi_C(y) = Delta_{-C}(y)``."""
        y = _as_vector(y, self.dimension)
        if self.kind is ConeKind.ORTHANT:
            if self.norm is Norm.LINF:
                return float(np.max(y))
            positive = np.maximum(y, 0.0)
            if np.any(positive > 0.0):
                return float(np.linalg.norm(positive))
            # inside -R^m_+: the nearest face is the least negative coordinate
            return float(np.max(y))
        if self.kind is ConeKind.POLYHEDRAL_2D:
            return self._planar_distance(y)
        if self.evaluator is None:
            raise ConeError("analytic cone has no evaluator installed")
        return float(self.evaluator(y))

    __call__ = oriented_distance

    def _planar_distance(self, y: np.ndarray) -> float:
        neg_rays = -self.rays
        to_boundary = min(_ray_distance(y, neg_rays[0]), _ray_distance(y, neg_rays[1]))
        coeffs = np.linalg.solve(neg_rays.T, y)
        inside = bool(np.all(coeffs >= 0.0))
        return -to_boundary if inside else to_boundary

    def max_linear(self, y) -> float:
        if self.max_linear_generators is None:
            raise ConeError("cone has no max-linear representation")
        return float(np.max(self.max_linear_generators @ _as_vector(y, self.dimension)))

    def contains(self, y, strict: bool = False) -> bool:
        """Membership ``y in C`` (or ``y in int(C)`` when ``strict``) via the sign of ``phi_C(-y)``."""
        value = self.oriented_distance(-_as_vector(y, self.dimension))
        if strict:
            return value < -CLASSIFY_TOL
        return value <= CLASSIFY_TOL

    def precedes(self, y1, y2, strict: bool = False) -> bool:
        """Partial order ``y1 <=_C y2`` (``y1 <_C y2`` when ``strict``)."""
        return self.contains(np.asarray(y2, float) - np.asarray(y1, float), strict=strict)

    def sample(self, rng: np.random.Generator, interior: bool = False) -> np.ndarray:
        """Draw a random element of ``C`` (of ``int(C)`` when ``interior``).

        Only for orthant and planar cones, whose generators are explicit.
        """
        low = 1e-3 if interior else 0.0
        if self.kind is ConeKind.ORTHANT:
            c = rng.uniform(low, 1.0, self.dimension)
            if not interior:
                c[rng.random(self.dimension) < 0.3] = 0.0
            return c
        if self.kind is ConeKind.POLYHEDRAL_2D:
            a = rng.uniform(low, 1.0, 2)
            if not interior and rng.random() < 0.3:
                a[rng.integers(2)] = 0.0
            return a @ self.rays
        raise ConeError("sampling needs explicit generators")


# -- closed-form test sets -------------------------------------------------

SQRT2 = np.sqrt(2.0)


def skewed_2d_region(y) -> str:
    """Label of the planar region ``B1..B5`` containing ``y`` for ``A = -C`` of :meth:`OrderingCone.skewed_2d`."""
    y1, y2 = float(y[0]), float(y[1])
    if y1 <= 0.0 and y2 > 0.0:
        return "B1"
    if y1 - y2 <= 0.0 and y1 > 0.0:
        return "B2"
    if y1 - y2 > 0.0 and y1 + y2 > 0.0:
        return "B3"
    if y1 - y2 > 0.0 and y1 + y2 <= 0.0:
        return "B4"
    return "B5"


def _skewed_2d_closed_form(y: np.ndarray) -> float:
    y1, y2 = y
    region = skewed_2d_region(y)
    if region == "B1":
        return y2
    if region == "B2":
        return float(np.hypot(y1, y2))
    if region == "B3":
        return abs(y1 + y2) / SQRT2
    # Inside A the nearest boundary point lies on one of the two rays; the
    # switch is the angle bisector y1 = (sqrt(2) - 1) * y2, not the line y1 = y2.
    return -min(abs(y1 + y2) / SQRT2, abs(y2))


@dataclass(frozen=True)
class CatalogSet:
    """A closed set ``A`` with a closed-form oriented distance ``Delta_A``."""

    name: str
    dimension: int
    norm: Norm
    closed_form: Callable[[np.ndarray], float] = field(repr=False)
    membership: Callable[[np.ndarray], bool] = field(repr=False)

    def distance(self, y) -> float:
        return float(self.closed_form(_as_vector(y, self.dimension)))


def unit_ball(m: int = 2) -> CatalogSet:
    return CatalogSet(
        "unit_ball", m, Norm.L2,
        lambda y: float(np.linalg.norm(y)) - 1.0,
        lambda y: float(np.linalg.norm(y)) <= 1.0,
    )


def negative_orthant(m: int = 2) -> CatalogSet:
    return CatalogSet(
        "negative_orthant", m, Norm.LINF,
        lambda y: float(np.max(y)),
        lambda y: bool(np.all(y <= 0.0)),
    )


def skewed_2d_negative() -> CatalogSet:
    """``A = -C`` for ``C = {y1 + y2 >= 0, y2 >= 0}`` with the Euclidean norm."""
    return CatalogSet(
        "skewed_2d_negative", 2, Norm.L2,
        _skewed_2d_closed_form,
        lambda y: bool(y[0] + y[1] <= 0.0 and y[1] <= 0.0),
    )


CATALOG: dict[str, Callable[..., CatalogSet]] = {
    "unit_ball": unit_ball,
    "negative_orthant": negative_orthant,
    "skewed_2d_negative": skewed_2d_negative,
}


def catalog_entry(name: str, m: int = 2) -> CatalogSet:
    try:
        factory = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog set {name!r}; choose from {sorted(CATALOG)}") from None
    return factory() if name == "skewed_2d_negative" else factory(m)


def set_distance(entry: CatalogSet | str, y, m: int = 2) -> float:
    """Oriented distance ``Delta_A(y)`` of a catalog set, by its closed form."""
    if isinstance(entry, str):
        entry = catalog_entry(entry, m)
    return entry.distance(y)
