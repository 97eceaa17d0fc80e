"""Enclosures of the solution sets of overdetermined interval linear systems."""

from .errors import (DegenerateReference, IterationLimit, NoConvergence, NoInclusion,
                     OilsError, OrthantBudgetExceeded, PivotBreakdown, ShapeError,
                     SingularMatrix, ZeroDivisor, ZeroOnDiagonal)
from .gauss import solve_ge
from .generate import GeneratorConfig, gen_seeded_solvable, gen_system, ratio
from .hull import hull, op_membership
from .interval import EMPTY, Interval, IntervalArray, from_mid_rad
from .iterative import solve_iterative
from .lsq import solve_lsq
from .methods import METHODS, run_method
from .precondition import hansen_preconditioner, precondition
from .rohn import rohn_basic, rohn_iterative
from .system import IterationConfig, OilsSystem, SolveOutcome

__all__ = [
    "Interval", "IntervalArray", "EMPTY", "from_mid_rad",
    "OilsSystem", "SolveOutcome", "IterationConfig",
    "hansen_preconditioner", "precondition",
    "solve_ge", "solve_iterative", "rohn_basic", "rohn_iterative", "solve_lsq",
    "hull", "op_membership",
    "GeneratorConfig", "gen_system", "gen_seeded_solvable", "ratio",
    "METHODS", "run_method",
    "OilsError", "ShapeError", "ZeroDivisor", "SingularMatrix", "PivotBreakdown",
    "ZeroOnDiagonal", "NoConvergence", "NoInclusion", "IterationLimit",
    "OrthantBudgetExceeded", "DegenerateReference",
]
