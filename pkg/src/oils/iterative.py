"""Interval Jacobi and Gauss-Seidel sharpening on the preconditioned top block.

After Hansen preconditioning the first n rows form a square system whose
matrix wraps the identity. Each sweep expresses x_i from the i-th equation

    X*_i = (B_i - sum_{j != i} A_ij X_j) / A_ii

and intersects the result with the current enclosure. Gauss-Seidel uses the
new components as soon as they are available.
"""

import math

import numpy as np

from . import rounding as rd
from .errors import OilsError, ShapeError, ZeroOnDiagonal
from .interval import IntervalArray, _div_bounds, _div_tight, _mul_bounds, to_interval_array
from .precondition import precondition
from .system import IterationConfig, SolveOutcome, as_system

__all__ = ["jacobi_step", "gauss_seidel_sweep", "solve_iterative", "initial_box"]


def _check_diagonal(M: IntervalArray):
    dlo, dhi = np.diag(M.lo), np.diag(M.hi)
    bad = np.flatnonzero((dlo <= 0) & (dhi >= 0))
    if bad.size:
        raise ZeroOnDiagonal(f"diagonal entry {int(bad[0])} contains zero")


def jacobi_step(M, rhs, X) -> IntervalArray:
    """One Jacobi evaluation of every component; no intersection is taken."""
    M, rhs, X = to_interval_array(M), to_interval_array(rhs), to_interval_array(X)
    n = M.shape[0]
    if M.shape != (n, n) or rhs.shape != (n,) or X.shape != (n,):
        raise ShapeError("jacobi_step needs a square matrix and conforming vectors")
    _check_diagonal(M)
    plo, phi = _mul_bounds(M.lo, M.hi, X.lo[None, :], X.hi[None, :])
    off = ~np.eye(n, dtype=bool)
    slo, _ = rd.sum_bounds(np.where(off, plo, 0.0), axis=1)
    _, shi = rd.sum_bounds(np.where(off, phi, 0.0), axis=1)
    nlo = rd.sub_down(rhs.lo, shi)
    nhi = rd.sub_up(rhs.hi, slo)
    lo, hi = _div_tight(nlo, nhi, np.diag(M.lo), np.diag(M.hi))
    return IntervalArray(lo, hi, check=False)


def gauss_seidel_sweep(M, rhs, X):
    """One Gauss-Seidel sweep with intersection after every component.

    Returns the new enclosure, or ``None`` if some intersection is empty.
    """
    M, rhs, X = to_interval_array(M), to_interval_array(rhs), to_interval_array(X)
    _check_diagonal(M)
    finite = all(np.isfinite(a).all() for a in (M.lo, M.hi, rhs.lo, rhs.hi, X.lo, X.hi))
    sweep = _sweep_finite if finite else _sweep_generic
    out = sweep(M, rhs, X)
    return None if out is None else IntervalArray(*out, check=False)


def _sweep_generic(M, rhs, X):
    n = M.shape[0]
    lo, hi = X.lo.copy(), X.hi.copy()
    for i in range(n):
        rlo, rhi = M.lo[i].copy(), M.hi[i].copy()
        rlo[i] = rhi[i] = 0.0
        plo, phi = _mul_bounds(rlo, rhi, lo, hi)
        slo, _ = rd.sum_bounds(plo)
        _, shi = rd.sum_bounds(phi)
        qlo, qhi = _div_bounds(rd.sub_down(rhs.lo[i], shi), rd.sub_up(rhs.hi[i], slo),
                               M.lo[i, i], M.hi[i, i])
        lo[i] = max(lo[i], qlo)
        hi[i] = min(hi[i], qhi)
        if lo[i] > hi[i]:
            return None
    return lo, hi


def _sweep_finite(M, rhs, X):
    # Finite data only. Products and the row sum are taken in round-to-nearest
    # and bounded a priori: |fl(sum p_j) - sum a_j x_j| <= gamma_n sum |p_j|
    # plus an underflow allowance. Scalar steps are widened by one ulp.
    n = M.shape[0]
    off = ~np.eye(n, dtype=bool)
    R = np.stack([M.lo, M.lo, M.hi, M.hi], axis=1) * off[:, None, :]
    V = np.stack([X.lo, X.hi, X.lo, X.hi])
    gamma = (n + 3) * 2.0 ** -52
    eta = (n + 2) * 2.0 ** -1074
    dlo, dhi = np.diag(M.lo).tolist(), np.diag(M.hi).tolist()
    blo, bhi = rhs.lo.tolist(), rhs.hi.tolist()
    lo, hi = X.lo.copy(), X.hi.copy()
    nxt, inf = math.nextafter, math.inf
    for i in range(n):
        P = R[i] * V
        err = gamma * float(np.abs(P).max(axis=0).sum()) + eta
        slo = nxt(float(P.min(axis=0).sum()) - err, -inf)
        shi = nxt(float(P.max(axis=0).sum()) + err, inf)
        nlo = nxt(blo[i] - shi, -inf)
        nhi = nxt(bhi[i] - slo, inf)
        q = (nlo / dlo[i], nlo / dhi[i], nhi / dlo[i], nhi / dhi[i])
        qlo, qhi = nxt(min(q), -inf), nxt(max(q), inf)
        if qlo > lo[i]:
            lo[i] = V[0, i] = V[2, i] = qlo
        if qhi < hi[i]:
            hi[i] = V[1, i] = V[3, i] = qhi
        if lo[i] > hi[i]:
            return None
    return lo, hi


def initial_box(M, rhs) -> IntervalArray:
    """A priori enclosure for a square system whose matrix is close to I.

    With ``E`` enclosing ``I - M`` and ``a = ||mag(E)||_inf < 1`` every
    solution obeys ``||x||_inf <= ||mag(rhs)||_inf / (1 - a)``.
    """
    M, rhs = to_interval_array(M), to_interval_array(rhs)
    n = M.shape[0]
    E = IntervalArray.eye(n) - M
    a = float(np.max(rd.sum_bounds(E.mag, axis=1)[1])) if n else 0.0
    if not a < 1:
        raise OilsError("no initial enclosure: preconditioned block is not contracting")
    beta = rd.div_up(float(np.max(rhs.mag)), rd.sub_down(1.0, a))
    return IntervalArray(np.full(n, -beta), np.full(n, beta))


def solve_iterative(A, b=None, variant="gauss_seidel", X0=None, cfg=None) -> SolveOutcome:
    """Sharpen an enclosure of the preconditioned top block by interval iteration.

    ``variant`` is ``"jacobi"`` or ``"gauss_seidel"``. Without ``X0`` the
    a priori box from :func:`initial_box` is used. An empty intersection is
    reported as a method failure, never as unsolvability: the rows dropped
    from the preconditioned system make such a verdict uncertifiable.
    """
    if variant not in ("jacobi", "gauss_seidel"):
        raise ValueError(f"unknown variant {variant!r}")
    cfg = cfg or IterationConfig()
    sys = as_system(A, b)
    try:
        pre = precondition(sys)
        M, rhs = pre.top
        _check_diagonal(M)
        X = initial_box(M, rhs) if X0 is None else to_interval_array(X0)
    except OilsError as exc:
        return SolveOutcome.failure(exc)
    if X.shape != (sys.n,):
        raise ShapeError(f"X0 has shape {X.shape}, expected ({sys.n},)")

    for k in range(1, cfg.max_iterations + 1):
        if variant == "jacobi":
            new = X.intersect(jacobi_step(M, rhs, X))
        else:
            new = gauss_seidel_sweep(M, rhs, X)
        if new is None:
            return SolveOutcome.failure("empty intersection", iterations=k)
        change = new.hausdorff(X)
        X = new
        if change < cfg.epsilon:
            break
    if not X.is_bounded():
        return SolveOutcome.unbounded("initial enclosure was not sharpened", iterations=k)
    return SolveOutcome.enclosure(X, iterations=k)
