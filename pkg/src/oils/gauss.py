"""Interval Gaussian elimination for overdetermined systems.

The augmented system is reduced to

    ( C  d | e )
    ( 0  f | g )

with ``C`` an (n-1) x (n-1) upper triangular block carrying exact ``[1, 1]``
pivots. In every instance of the system the pivots become 1 and the entries
under them 0, so those positions are assigned rather than computed. The m-n+1
tail equations ``f_i x_n = g_i`` are intersected to enclose ``x_n`` and the
remaining variables follow by back substitution.
"""

from dataclasses import dataclass

import numpy as np

from . import rounding as rd
from .errors import OilsError, PivotBreakdown, SingularMatrix
from .interval import EMPTY, Interval, IntervalArray, _div_tight, _mul_bounds, _mul_tight
from .precondition import precondition
from .system import OilsSystem, SolveOutcome, as_system

__all__ = ["EchelonForm", "eliminate", "tail_solve", "back_substitute", "solve_ge"]

_INF = np.inf


@dataclass(frozen=True)
class EchelonForm:
    C: IntervalArray
    d: IntervalArray
    e: IntervalArray
    f: IntervalArray
    g: IntervalArray
    row_order: tuple = ()

    @property
    def n(self):
        return self.C.shape[0] + 1


def eliminate(A, b=None) -> EchelonForm:
    """Reduce ``(A | b)`` to echelon form with mignitude partial pivoting.

    In column k the remaining row whose entry has the largest mignitude is
    swapped into pivot position; a column whose candidates all contain zero
    raises :class:`PivotBreakdown`.
    """
    sys = as_system(A, b)
    m, n = sys.m, sys.n
    lo = np.column_stack([sys.A.lo, sys.b.lo])
    hi = np.column_stack([sys.A.hi, sys.b.hi])
    order = np.arange(m)

    for k in range(n - 1):
        clo, chi = lo[k:, k], hi[k:, k]
        mig = np.where((clo <= 0) & (chi >= 0), 0.0, np.minimum(np.abs(clo), np.abs(chi)))
        p = k + int(np.argmax(mig))
        if not mig[p - k] > 0:
            raise PivotBreakdown(f"no zero-free pivot in column {k}")
        if p != k:
            lo[[k, p]] = lo[[p, k]]
            hi[[k, p]] = hi[[p, k]]
            order[[k, p]] = order[[p, k]]

        plo, phi = lo[k, k], hi[k, k]
        lo[k, k + 1:], hi[k, k + 1:] = _div_tight(lo[k, k + 1:], hi[k, k + 1:], plo, phi)
        lo[k, k] = hi[k, k] = 1.0

        # row_r <- row_r - a_rk * row_k for every row below the pivot; this
        # O(m n) update dominates, so it uses the cheaper one-ulp kernel
        flo, fhi = lo[k + 1:, k:k + 1], hi[k + 1:, k:k + 1]
        tlo, thi = _mul_bounds(flo, fhi, lo[k:k + 1, k + 1:], hi[k:k + 1, k + 1:])
        lo[k + 1:, k + 1:] = rd.sub_down(lo[k + 1:, k + 1:], thi)
        hi[k + 1:, k + 1:] = rd.sub_up(hi[k + 1:, k + 1:], tlo)
        lo[k + 1:, k] = hi[k + 1:, k] = 0.0

    if np.isnan(lo).any() or np.isnan(hi).any():
        raise OilsError("undefined intermediate (inf - inf or inf / inf)")

    def block(rows, cols):
        return IntervalArray(lo[rows, cols], hi[rows, cols], check=False)

    top = slice(0, n - 1)
    tail = slice(n - 1, m)
    return EchelonForm(
        C=block(top, slice(0, n - 1)),
        d=block(top, n - 1),
        e=block(top, n),
        f=block(tail, n - 1),
        g=block(tail, n),
        row_order=tuple(int(i) for i in order),
    )


def _quotient_pieces(f: Interval, g: Interval):
    """The set {y / t : y in g, t in f, t != 0} as at most two closed pieces."""
    if not f.contains_zero():
        lo, hi = _div_tight(g.lo, g.hi, f.lo, f.hi)
        return [(float(lo), float(hi))]
    if g.contains_zero():
        return [(-_INF, _INF)]
    if f.lo == 0 and f.hi == 0:
        return []
    pieces = []
    if g.lo > 0:
        if f.lo < 0:
            pieces.append((-_INF, float(rd.div_up(g.lo, f.lo))))
        if f.hi > 0:
            pieces.append((float(rd.div_down(g.lo, f.hi)), _INF))
    else:
        if f.lo < 0:
            pieces.append((float(rd.div_down(g.hi, f.lo)), _INF))
        if f.hi > 0:
            pieces.append((-_INF, float(rd.div_up(g.hi, f.hi))))
    return pieces


def tail_solve(f: IntervalArray, g: IntervalArray) -> Interval:
    """Enclose ``x_n`` from the tail equations ``f_i x_n = g_i``.

    Returns ``EMPTY`` when the equations have no common solution (the system
    is unsolvable) and a possibly unbounded interval otherwise. A coefficient
    containing zero is handled by extended division; the pieces are kept
    separate until the final hull.
    """
    pieces = [(-_INF, _INF)]
    for fi, gi in zip(f, g):
        new = _quotient_pieces(fi, gi)
        pieces = [(max(a, c), min(b, d)) for a, b in pieces for c, d in new
                  if max(a, c) <= min(b, d)]
        if not pieces:
            return EMPTY
    return Interval(min(p[0] for p in pieces), max(p[1] for p in pieces))


def back_substitute(ef: EchelonForm, xn: Interval) -> IntervalArray:
    n = ef.n
    lo = np.empty(n)
    hi = np.empty(n)
    lo[-1], hi[-1] = xn.lo, xn.hi
    for i in range(n - 2, -1, -1):
        # x_i = e_i - d_i x_n - sum_{j>i} C_ij x_j
        clo = np.append(ef.C.lo[i, i + 1:], ef.d.lo[i])
        chi = np.append(ef.C.hi[i, i + 1:], ef.d.hi[i])
        plo, phi = _mul_tight(clo, chi, lo[i + 1:], hi[i + 1:])
        slo, _ = rd.fsum_bounds(plo)
        _, shi = rd.fsum_bounds(phi)
        lo[i] = rd.sub_down(ef.e.lo[i], shi)
        hi[i] = rd.sub_up(ef.e.hi[i], slo)
    return IntervalArray(lo, hi)


def solve_ge(A, b=None, use_preconditioner=False) -> SolveOutcome:
    """Enclosure by interval Gaussian elimination and back substitution.

    Without preconditioning an empty tail intersection proves the system
    unsolvable. Preconditioning only enlarges the solution set, so an empty
    result after preconditioning still proves unsolvability.
    """
    sys = as_system(A, b)
    try:
        if use_preconditioner:
            sys = precondition(sys).full
        ef = eliminate(sys)
    except SingularMatrix as exc:
        return SolveOutcome.failure(f"singular preconditioner: {exc}", error=type(exc).__name__)
    except OilsError as exc:
        return SolveOutcome.failure(exc)
    xn = tail_solve(ef.f, ef.g)
    if xn.is_empty:
        return SolveOutcome.unsolvable("tail equations have no common solution")
    if np.isinf(xn.lo) or np.isinf(xn.hi):
        return SolveOutcome.unbounded("unbounded enclosure of the last variable")
    x = back_substitute(ef, xn)
    if not x.is_bounded():
        return SolveOutcome.unbounded("overflow during back substitution")
    return SolveOutcome.enclosure(x)
