"""Frank-Wolfe method for vector optimization under a cone order."""

from .cone import Norm, OrderingCone
from .objective import QuadraticVectorObjective, portfolio_objective
from .region import Polytope
from .solver import SolverConfig, SolveResult, SolveStatus, StepsizeMode, solve

__all__ = [
    "Norm",
    "OrderingCone",
    "Polytope",
    "QuadraticVectorObjective",
    "SolveResult",
    "SolveStatus",
    "SolverConfig",
    "StepsizeMode",
    "portfolio_objective",
    "solve",
]
