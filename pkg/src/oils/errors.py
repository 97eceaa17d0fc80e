"""Exception types raised by the building blocks.

Solvers never let these escape; they are converted to a failed
:class:`~oils.outcome.SolveOutcome` carrying the exception text as reason.
"""


class OilsError(Exception):
    """Base class for all library errors."""


class ShapeError(OilsError, ValueError):
    pass


class ZeroDivisor(OilsError, ZeroDivisionError):
    """Interval division by an interval that contains zero."""


class SingularMatrix(OilsError):
    pass


class PivotBreakdown(OilsError):
    """Every pivot candidate of some column contains zero."""


class ZeroOnDiagonal(OilsError):
    pass


class NoConvergence(OilsError):
    pass


class NoInclusion(OilsError):
    """Epsilon inflation did not produce a verified inclusion."""


class IterationLimit(OilsError):
    pass


class OrthantBudgetExceeded(OilsError):
    pass


class DegenerateReference(OilsError, ValueError):
    """A reference enclosure has a component of zero width."""
