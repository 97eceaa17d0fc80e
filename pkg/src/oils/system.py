"""Problem and result containers shared by all solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ShapeError
from .interval import IntervalArray, to_interval_array

__all__ = ["OilsSystem", "SolveOutcome", "IterationConfig", "as_system"]


@dataclass(frozen=True)
class OilsSystem:
    """Interval linear system ``A x = b`` with ``A`` of shape (m, n), m >= n."""

    A: IntervalArray
    b: IntervalArray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        A = to_interval_array(self.A)
        b = to_interval_array(self.b)
        if A.ndim != 2 or b.ndim != 1 or A.shape[0] != b.shape[0]:
            raise ShapeError(f"incompatible shapes A{A.shape}, b{b.shape}")
        if A.shape[0] < A.shape[1]:
            raise ShapeError("system must have at least as many rows as columns")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def m(self):
        return self.A.shape[0]

    @property
    def n(self):
        return self.A.shape[1]


def as_system(A, b=None) -> OilsSystem:
    if isinstance(A, OilsSystem):
        return A
    return OilsSystem(A, b)


ENCLOSURE = "enclosure"
UNSOLVABLE = "unsolvable"
UNBOUNDED = "unbounded"
FAILURE = "failure"


@dataclass(frozen=True)
class SolveOutcome:
    """Result of a solver run.

    ``kind`` is one of ``"enclosure"``, ``"unsolvable"``, ``"unbounded"`` or
    ``"failure"``. Only enclosures carry a ``box``; failures carry a ``reason``.
    """

    kind: str
    box: Optional[IntervalArray] = None
    reason: Optional[str] = None
    stats: dict = field(default_factory=dict, compare=False)

    @classmethod
    def enclosure(cls, box, **stats):
        return cls(ENCLOSURE, box=box, stats=stats)

    @classmethod
    def unsolvable(cls, reason=None, **stats):
        return cls(UNSOLVABLE, reason=reason, stats=stats)

    @classmethod
    def unbounded(cls, reason=None, **stats):
        return cls(UNBOUNDED, reason=reason, stats=stats)

    @classmethod
    def failure(cls, reason, **stats):
        """``reason`` may be an exception; its class name goes to ``stats["error"]``."""
        if isinstance(reason, BaseException):
            stats.setdefault("error", type(reason).__name__)
        return cls(FAILURE, reason=str(reason), stats=stats)

    @property
    def ok(self):
        return self.kind == ENCLOSURE

    def contains(self, x):
        return self.ok and bool(np.all(self.box.contains(x)))

    def with_stats(self, **stats):
        return SolveOutcome(self.kind, self.box, self.reason, {**self.stats, **stats})


@dataclass(frozen=True)
class IterationConfig:
    """Stopping rule for iterative refinement.

    Iteration stops when no bound moves by ``epsilon`` or more, or after
    ``max_iterations`` steps.
    """

    epsilon: float = 1e-10
    max_iterations: int = 20

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")

    @classmethod
    def for_radius_exponent(cls, exponent, max_iterations=20):
        """Stopping parameter 10**(exponent - 2) used throughout the benchmarks."""
        return cls(10.0 ** (exponent - 2), max_iterations)
