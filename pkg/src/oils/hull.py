"""Oettli-Prager membership and the interval hull by orthant enumeration.

Inside the closed orthant ``{x : D_z x >= 0}`` the absolute value is linear,
``|x| = D_z x``, and the Oettli-Prager condition

    |Ac x - bc| <= AΔ |x| + bΔ

turns into the linear inequalities

    (Ac - AΔ D_z) x <= bc + bΔ
    (-Ac - AΔ D_z) x <= -bc + bΔ
    -D_z x <= 0.

The coefficient of x_j in the first block is ``lo(A_ij)`` when z_j = +1 and
``hi(A_ij)`` when z_j = -1, so the rows are built directly from the stored
endpoints without forming midpoints and radii.

The hull is approximate to the simplex tolerance; it is the reference
against which the rigorous enclosures are measured, not an enclosure itself.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import rounding as rd
from .errors import IterationLimit, OrthantBudgetExceeded
from .interval import IntervalArray, to_interval_array
from .simplex import LPResult, phase_one
from .system import SolveOutcome, as_system

__all__ = ["op_membership", "OrthantLP", "orthant_lp", "orthants", "hull",
           "MAX_DIMENSION", "ORTHANT_BUDGET"]

MAX_DIMENSION = 20
ORTHANT_BUDGET = 2 ** 20


def op_membership(A, b, x, strict=False) -> bool:
    """Is the point x in the solution set of ``A x = b``?

    Row i is satisfied exactly when the range ``{a.x : a in A_i}`` meets b_i,
    which is the Oettli-Prager inequality for that row. By default the range
    is rounded outward, so true members are never rejected. With
    ``strict=True`` it is rounded inward and ``True`` certifies membership.
    """
    sys = as_system(A, b)
    x = np.asarray(x, dtype=float)
    if x.shape != (sys.n,):
        raise ValueError(f"x has shape {x.shape}, expected ({sys.n},)")
    pos = x >= 0
    # a.x is smallest with lo(a) on positive x_j and hi(a) on negative x_j
    low_coef = np.where(pos, sys.A.lo, sys.A.hi)
    high_coef = np.where(pos, sys.A.hi, sys.A.lo)
    lo_dn, lo_up = rd.exact_dot_bounds(low_coef, x)
    hi_dn, hi_up = rd.exact_dot_bounds(high_coef, x)
    if strict:
        ok = (lo_up <= sys.b.hi) & (hi_dn >= sys.b.lo)
    else:
        ok = (lo_dn <= sys.b.hi) & (hi_up >= sys.b.lo)
    return bool(np.all(ok))


@dataclass(frozen=True)
class OrthantLP:
    """Linear description ``G x <= h`` of the solution set inside orthant z."""

    z: np.ndarray
    G: np.ndarray
    h: np.ndarray

    def objective(self, i, direction):
        """Cost vector for minimizing (``"min"``) or maximizing x_i."""
        c = np.zeros(self.G.shape[1])
        c[i] = 1.0 if direction == "min" else -1.0
        return c


def orthant_lp(A, b, z) -> OrthantLP:
    sys = as_system(A, b)
    z = np.asarray(z)
    plus = z > 0
    first = np.where(plus, sys.A.lo, sys.A.hi)
    second = -np.where(plus, sys.A.hi, sys.A.lo)
    G = np.vstack([first, second, -np.diag(z.astype(float))])
    h = np.concatenate([sys.b.hi, -sys.b.lo, np.zeros(sys.n)])
    return OrthantLP(z=z.astype(np.int8), G=G, h=h)


def orthants(n, presolve=None):
    """Sign vectors to visit, optionally restricted to those meeting a box.

    Orthant sign +1 covers ``x_j >= 0`` and -1 covers ``x_j <= 0``. With a
    presolve box, +1 is kept when ``hi_j >= 0`` and -1 when ``lo_j < 0``;
    together these cover the box.
    """
    if presolve is None:
        choices = [(1, -1)] * n
    else:
        box = to_interval_array(presolve)
        choices = []
        for lo, hi in zip(box.lo, box.hi):
            signs = ((1,) if hi >= 0 else ()) + ((-1,) if lo < 0 else ())
            choices.append(signs)
    return choices


def _count(choices):
    total = 1
    for c in choices:
        total *= len(c)
    return total


def hull(A, b=None, presolve=None, budget=ORTHANT_BUDGET) -> SolveOutcome:
    """Interval hull of the solution set by 2n linear programs per orthant.

    Without ``presolve`` every orthant is visited, allowed up to n = 20. A
    presolve enclosure restricts the search to orthants it meets and must
    itself be a valid enclosure. Reports ``unsolvable`` when no visited
    orthant is feasible and ``unbounded`` when some bound is infinite.
    """
    sys = as_system(A, b)
    n = sys.n
    try:
        if presolve is None and n > MAX_DIMENSION:
            raise OrthantBudgetExceeded(
                f"n = {n} exceeds {MAX_DIMENSION} without a presolve enclosure")
        choices = orthants(n, presolve)
        count = _count(choices)
        if count > budget:
            raise OrthantBudgetExceeded(f"{count} orthants exceed the budget {budget}")
    except OrthantBudgetExceeded as exc:
        return SolveOutcome.failure(exc)

    lo = np.full(n, np.inf)
    hi = np.full(n, -np.inf)
    feasible = 0
    lps = 0
    pivots = 0
    try:
        for z in itertools.product(*choices):
            lp = orthant_lp(sys, None, z)
            tab = phase_one(lp.G, lp.h)
            if tab is None:
                continue
            feasible += 1
            for i in range(n):
                for direction in ("min", "max"):
                    res: LPResult = tab.minimize(lp.objective(i, direction))
                    lps += 1
                    if res.status == "unbounded":
                        return SolveOutcome.unbounded(
                            f"x_{i} is unbounded in orthant {list(z)}", orthants=count)
                    if direction == "min":
                        lo[i] = min(lo[i], res.value)
                    else:
                        hi[i] = max(hi[i], -res.value)
            pivots += tab.pivots
    except IterationLimit as exc:
        return SolveOutcome.failure(exc)

    stats = dict(orthants=count, feasible_orthants=feasible, lps=lps,
                 pivots=pivots)
    if not feasible:
        return SolveOutcome.unsolvable("no orthant admits a solution", **stats)
    return SolveOutcome.enclosure(IntervalArray(lo, hi), **stats)
