"""JSON problem files and builtin problem instances.

A problem document has three sections::

    {
      "cone": {"kind": "orthant", "m": 2, "norm": "linf"},
      "objectives": [{"Q": [[...]], "c": [...]}, ...],
      "region": {"kind": "simplex", "n": 5}
    }

``"objectives"`` may instead be a builtin name such as ``"portfolio-d2007"``.
Regions are ``simplex`` (``n``), ``box`` (``lower``, ``upper``) or
``general`` (any of ``A_eq``, ``b_eq``, ``A_ub``, ``b_ub``, ``lower``,
``upper``; ``null`` entries in bounds mean unbounded).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Union

import jsonschema
import numpy as np

from .cone import OrderingCone
from .objective import PORTFOLIO_LABELS, QuadraticVectorObjective, portfolio_objective
from .region import Polytope

_matrix = {"type": "array", "items": {"type": "array", "items": {"type": "number"}}}
_vector = {"type": "array", "items": {"type": "number"}}
_bounds = {"type": "array", "items": {"type": ["number", "null"]}}

SCHEMA = {
    "type": "object",
    "required": ["cone", "objectives", "region"],
    "properties": {
        "name": {"type": "string"},
        "labels": {"type": "array", "items": {"type": "string"}},
        "cone": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["orthant", "polyhedral2d"]},
                "m": {"type": "integer", "minimum": 1},
                "norm": {"enum": ["linf", "l2"]},
                "generators": _matrix,
            },
        },
        "objectives": {
            "oneOf": [
                {"type": "string"},
                {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "required": ["c"],
                        "properties": {"Q": _matrix, "c": _vector},
                    },
                },
            ]
        },
        "region": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["simplex", "box", "general"]},
                "n": {"type": "integer", "minimum": 1},
                "A_eq": _matrix, "b_eq": _vector,
                "A_ub": _matrix, "b_ub": _vector,
                "lower": _bounds, "upper": _bounds,
            },
        },
    },
}


class ProblemError(ValueError):
    pass


@dataclass(frozen=True)
class Problem:
    name: str
    cone: OrderingCone
    objective: QuadraticVectorObjective
    region: Polytope
    labels: tuple[str, ...]


def portfolio_problem() -> Problem:
    return Problem(
        "portfolio-d2007",
        OrderingCone.orthant(2, "linf"),
        portfolio_objective(),
        Polytope.unit_simplex(5),
        PORTFOLIO_LABELS,
    )


BUILTIN_OBJECTIVES = {"portfolio-d2007": portfolio_objective}
BUILTIN_PROBLEMS = {"portfolio-d2007": portfolio_problem}


def _rect(value, name, shape=None) -> np.ndarray:
    rows = [len(r) for r in value]
    if value and len(set(rows)) != 1:
        raise ProblemError(f"{name} is not rectangular")
    arr = np.array(value, dtype=float)
    if shape is not None and arr.shape != shape:
        raise ProblemError(f"{name} has shape {arr.shape}, expected {shape}")
    return arr


def _bound(values, fill) -> np.ndarray:
    return np.array([fill if v is None else v for v in values], dtype=float)


def _build_cone(data: dict) -> OrderingCone:
    if data["kind"] == "orthant":
        if "m" not in data:
            raise ProblemError("orthant cone needs 'm'")
        return OrderingCone.orthant(data["m"], data.get("norm", "linf"))
    if data.get("norm", "l2") != "l2":
        raise ProblemError("planar polyhedral cones use the l2 norm")
    if "generators" in data:
        g = _rect(data["generators"], "cone.generators", (2, 2))
        return OrderingCone.polyhedral_2d(g[0], g[1])
    return OrderingCone.skewed_2d()


def _build_objective(data) -> QuadraticVectorObjective:
    if isinstance(data, str):
        try:
            return BUILTIN_OBJECTIVES[data]()
        except KeyError:
            raise ProblemError(f"unknown builtin objective {data!r}") from None
    n = len(data[0]["c"])
    Q, c = [], []
    for i, comp in enumerate(data):
        if len(comp["c"]) != n:
            raise ProblemError(f"objective {i}: c has length {len(comp['c'])}, expected {n}")
        c.append(comp["c"])
        Q.append(_rect(comp["Q"], f"objective {i} Q", (n, n)) if "Q" in comp else np.zeros((n, n)))
    return QuadraticVectorObjective(np.stack(Q), np.array(c, dtype=float))


def _build_region(data: dict) -> Polytope:
    kind = data["kind"]
    if kind == "simplex":
        if "n" not in data:
            raise ProblemError("simplex region needs 'n'")
        return Polytope.unit_simplex(data["n"])
    if kind == "box":
        if "lower" not in data or "upper" not in data:
            raise ProblemError("box region needs 'lower' and 'upper'")
        return Polytope.box(_bound(data["lower"], np.nan), _bound(data["upper"], np.nan))
    n = data.get("n")
    for key in ("A_eq", "A_ub"):
        if key in data and data[key]:
            n = len(data[key][0]) if n is None else n
    if n is None:
        raise ProblemError("general region needs 'n' or a constraint matrix")
    kwargs: dict[str, Any] = {}
    for key in ("A_eq", "A_ub"):
        if key in data:
            kwargs[key] = _rect(data[key], f"region.{key}").reshape(-1, n)
    for key in ("b_eq", "b_ub"):
        if key in data:
            kwargs[key] = np.array(data[key], dtype=float)
    if "lower" in data:
        kwargs["lower"] = _bound(data["lower"], -np.inf)
    if "upper" in data:
        kwargs["upper"] = _bound(data["upper"], np.inf)
    return Polytope.general(n, **kwargs)


def problem_from_dict(doc: dict) -> Problem:
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ProblemError(f"invalid problem file: {exc.message}") from None
    try:
        cone = _build_cone(doc["cone"])
        objective = _build_objective(doc["objectives"])
        region = _build_region(doc["region"])
    except ProblemError:
        raise
    except ValueError as exc:
        raise ProblemError(str(exc)) from None
    if objective.n != region.n:
        raise ProblemError(f"objectives act on R^{objective.n} but the region lives in R^{region.n}")
    if objective.m != cone.dimension:
        raise ProblemError(f"{objective.m} objectives but the cone has dimension {cone.dimension}")
    labels = tuple(doc.get("labels") or (
        PORTFOLIO_LABELS if doc["objectives"] == "portfolio-d2007" else
        tuple(f"f{i + 1}" for i in range(objective.m))
    ))
    if len(labels) != objective.m:
        raise ProblemError("one label per objective is required")
    return Problem(doc.get("name", "problem"), cone, objective, region, labels)


def load_problem(source: Union[str, Path, dict]) -> Problem:
    """Load a builtin name, a JSON file path, or an already-parsed document."""
    if isinstance(source, dict):
        return problem_from_dict(source)
    if str(source) in BUILTIN_PROBLEMS:
        return BUILTIN_PROBLEMS[str(source)]()
    path = Path(source)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ProblemError(f"cannot read problem file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ProblemError(f"problem file {path} is not valid JSON: {exc}") from None
    return problem_from_dict(doc)
