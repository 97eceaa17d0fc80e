"""Least-squares style enclosure through the augmented square system.

The m x n system is embedded in

    [ I   A ] [y]   [b]
    [ A^T 0 ] [x] = [0]

and the (m+n) x (m+n) interval system is solved with the Krawczyk operator
and epsilon inflation. The x block encloses the solution set of the original
system, and also every least-squares solution, so the method returns a box
even for unsolvable systems.
"""

from dataclasses import dataclass

import numpy as np

from . import rounding as rd
from .errors import NoInclusion, OilsError
from .interval import IntervalArray, point_matmul, to_interval_array
from .linalg import approx_inverse
from .system import IterationConfig, SolveOutcome, as_system

__all__ = ["AugmentedSystem", "augment", "krawczyk_solve", "solve_lsq"]

INFLATION_FACTOR = 1.1
INFLATION_FLOOR = 1e-300
INFLATION_ROUNDS = 15


@dataclass(frozen=True)
class AugmentedSystem:
    M: IntervalArray
    rhs: IntervalArray
    m: int
    n: int


def augment(A, b=None) -> AugmentedSystem:
    sys = as_system(A, b)
    m, n = sys.m, sys.n
    lo = np.zeros((m + n, m + n))
    hi = np.zeros((m + n, m + n))
    lo[:m, :m] = hi[:m, :m] = np.eye(m)
    lo[:m, m:], hi[:m, m:] = sys.A.lo, sys.A.hi
    lo[m:, :m], hi[m:, :m] = sys.A.lo.T, sys.A.hi.T
    rhs = IntervalArray(np.concatenate([sys.b.lo, np.zeros(n)]),
                        np.concatenate([sys.b.hi, np.zeros(n)]))
    return AugmentedSystem(IntervalArray(lo, hi), rhs, m, n)


def krawczyk_solve(M, rhs, cfg=None) -> SolveOutcome:
    """Verified enclosure of the solution set of a square interval system.

    With ``C ~ mid(M)^{-1}`` and ``xc = C mid(rhs)`` the error ``x - xc`` is
    enclosed by iterating ``Y <- z + D Y`` where ``z = C (rhs - M xc)`` and
    ``D = I - C M``. Success of ``z + D Y`` inside the interior of ``Y``
    proves that M is regular and that ``xc + Y`` contains every solution.
    """
    cfg = cfg or IterationConfig()
    M, rhs = to_interval_array(M), to_interval_array(rhs)
    N = M.shape[0]
    try:
        C = approx_inverse(M.mid)
    except OilsError as exc:
        return SolveOutcome.failure(exc)
    xc = C @ rhs.mid
    z = point_matmul(C, rhs - M @ xc)
    D = IntervalArray.eye(N) - point_matmul(C, M)

    Y = z
    for rounds in range(1, INFLATION_ROUNDS + 1):
        Yi = Y.inflate(INFLATION_FACTOR, INFLATION_FLOOR)
        Y = z + D @ Yi
        if Y.interior_of(Yi):
            break
    else:
        return SolveOutcome.failure(
            NoInclusion(f"no verified inclusion after {INFLATION_ROUNDS} inflations"))

    steps = 0
    for steps in range(1, cfg.max_iterations + 1):
        new = Y.intersect(z + D @ Y)
        if new is None:  # only possible through a rounding defect
            return SolveOutcome.failure("empty Krawczyk intersection")
        change = new.hausdorff(Y)
        Y = new
        if change < cfg.epsilon:
            break
    X = xc + Y
    return SolveOutcome.enclosure(X, iterations=steps, inflations=rounds)


def solve_lsq(A, b=None, cfg=None) -> SolveOutcome:
    """Enclosure from the x block of the augmented system (never 'unsolvable')."""
    sys = as_system(A, b)
    aug = augment(sys)
    out = krawczyk_solve(aug.M, aug.rhs, cfg)
    if not out.ok:
        return out
    box = out.box
    return SolveOutcome.enclosure(box[aug.m:], y=box[:aug.m], **out.stats)
