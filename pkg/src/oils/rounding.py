"""Directed rounding on top of round-to-nearest IEEE-754 arithmetic.

The process-wide FPU rounding mode is never touched. Single operations are
rounded exactly toward -inf/+inf by computing the rounding error with an
error-free transformation (TwoSum, Dekker's TwoProduct, division residual)
and stepping one ulp only when the nearest result landed on the wrong side.
Where an error-free transformation is not exact (overflow, underflow,
non-finite operands) the bound is stepped one ulp unconditionally.

Sums and dot products of many terms go through BLAS and are bounded with
the a priori estimate |fl(x.y) - x.y| <= gamma_k |x|.|y|, which holds for any
summation order, with or without fused multiply-add.
"""

import math

import numpy as np

__all__ = [
    "add_down", "add_up", "sub_down", "sub_up", "mul_down", "mul_up",
    "div_down", "div_up", "down", "up", "dot_bounds", "sum_bounds", "fsum_bounds",
    "exact_dot_bounds",
    "matmul_down", "matmul_up", "add_pair", "mul_pair", "div_pair",
]

_INF = np.inf
_SPLITTER = 134217729.0  # 2**27 + 1
_BIG = 2.0 ** 995
_TINY = 2.0 ** -960
_EPS = 2.0 ** -52
_ETA = 2.0 ** -1074


def down(x):
    """Largest float strictly below ``x`` (one ulp toward -inf)."""
    return np.nextafter(x, -_INF)


def up(x):
    return np.nextafter(x, _INF)


def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def _direct(s, err, exact, toward_up):
    # err is (exact - s) wherever ``exact`` holds
    with np.errstate(invalid="ignore"):
        if toward_up:
            step = np.where(exact, err > 0, True)
            return np.where(step, up(s), s)
        step = np.where(exact, err < 0, True)
        return np.where(step, down(s), s)


def _add(a, b, toward_up):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(invalid="ignore", over="ignore"):
        s, err = _two_sum(a, b)
        exact = np.isfinite(s) & np.isfinite(err)
        out = _direct(s, err, exact, toward_up)
    # inf + finite is exact
    inf_ok = np.isinf(a) ^ np.isinf(b)
    return _scalar(np.where(inf_ok, a + b, out))


def add_down(a, b):
    return _add(a, b, False)


def add_up(a, b):
    return _add(a, b, True)


def sub_down(a, b):
    return _add(a, np.negative(b), False)


def sub_up(a, b):
    return _add(a, np.negative(b), True)


def _mul(a, b, toward_up):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(invalid="ignore", over="ignore", under="ignore"):
        zero = (a == 0) | (b == 0)
        p, err = _two_prod(a, b)
        aa, ab, ap = np.abs(a), np.abs(b), np.abs(p)
        exact = (aa < _BIG) & (ab < _BIG) & (ap >= _TINY) & np.isfinite(err)
        out = _direct(p, err, exact, toward_up)
        # a product with an infinite factor and no zero factor is exact
        inf_ok = (np.isinf(a) | np.isinf(b)) & ~zero
        out = np.where(inf_ok, p, out)
    # zero times anything (including inf) is zero by convention
    return _scalar(np.where(zero, 0.0, out))


def mul_down(a, b):
    return _mul(a, b, False)


def mul_up(a, b):
    return _mul(a, b, True)


def _div(a, b, toward_up):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(invalid="ignore", over="ignore", under="ignore",
                     divide="ignore"):
        q = a / b
        p, e = _two_prod(q, b)
        r = (a - p) - e          # exact residual a - q*b
        err = r * np.sign(b)     # same sign as a/b - q
        aa, ab, aq = np.abs(a), np.abs(b), np.abs(q)
        exact = ((aa < _BIG) & (ab < _BIG) & (aq < _BIG)
                 & (aa >= _TINY) & (ab >= _TINY) & (aq >= _TINY)
                 & np.isfinite(err))
        out = _direct(q, err, exact, toward_up)
        out = np.where(a == 0, 0.0, out)
        # inf / finite and finite / inf are exact
        inf_ok = np.isinf(a) ^ np.isinf(b)
        out = np.where(inf_ok, q, out)
    return _scalar(out)


def div_down(a, b):
    return _div(a, b, False)


def div_up(a, b):
    return _div(a, b, True)


def _pair(s, err, exact):
    with np.errstate(invalid="ignore"):
        dn = np.where(exact & (err >= 0), s, down(s))
        upv = np.where(exact & (err <= 0), s, up(s))
    return dn, upv


def add_pair(a, b):
    """Sum rounded toward -inf and toward +inf, sharing one TwoSum."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(invalid="ignore", over="ignore"):
        s, err = _two_sum(a, b)
        dn, upv = _pair(s, err, np.isfinite(err))
    inf_ok = np.isinf(a) ^ np.isinf(b)
    if inf_ok.any():
        dn = np.where(inf_ok, s, dn)
        upv = np.where(inf_ok, s, upv)
    return dn, upv


def mul_pair(a, b):
    """Product rounded toward -inf and toward +inf, sharing one TwoProduct."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(invalid="ignore", over="ignore", under="ignore"):
        p, err = _two_prod(a, b)
        ap = np.abs(p)
        exact = (ap >= _TINY) & (ap < _BIG) & np.isfinite(err)
        dn, upv = _pair(p, err, exact)
        if not np.all(exact):
            # the sign of a nonzero product is known even when it underflows
            sgn = np.sign(a) * np.sign(b)
            dn = np.where(sgn > 0, np.maximum(dn, 0.0), dn)
            upv = np.where(sgn < 0, np.minimum(upv, 0.0), upv)
        if not np.all(np.isfinite(p) & (ap != 0)):
            zero = (a == 0) | (b == 0)
            inf_ok = (np.isinf(a) | np.isinf(b)) & ~zero
            dn = np.where(zero, 0.0, np.where(inf_ok, p, dn))
            upv = np.where(zero, 0.0, np.where(inf_ok, p, upv))
    return dn, upv


def div_pair(a, b):
    """Quotient rounded toward -inf and toward +inf."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(invalid="ignore", over="ignore", under="ignore", divide="ignore"):
        q = a / b
        p, e = _two_prod(q, b)
        err = ((a - p) - e) * np.sign(b)
        aa, aq, ab = np.abs(a), np.abs(q), np.abs(b)
        exact = ((aq >= _TINY) & (aq < _BIG) & (ab >= _TINY) & (ab < _BIG)
                 & (aa >= _TINY) & np.isfinite(err))
        dn, upv = _pair(q, err, exact)
        if not np.all(exact):
            sgn = np.sign(a) * np.sign(b)
            dn = np.where(sgn > 0, np.maximum(dn, 0.0), dn)
            upv = np.where(sgn < 0, np.minimum(upv, 0.0), upv)
        if not np.all(np.isfinite(q) & (a != 0)):
            special = (a == 0) | (np.isinf(a) ^ np.isinf(b))
            val = np.where(a == 0, 0.0, q)
            dn = np.where(special, val, dn)
            upv = np.where(special, val, upv)
    return dn, upv


def _scalar(x):
    return x[()] if isinstance(x, np.ndarray) and x.ndim == 0 else x


def _gamma(k):
    # 2 * gamma_(k+1) with room to spare for the rounding of the bound itself
    return (k + 3) * _EPS


def _underflow_term(k, *arrays):
    """Absolute error allowance for underflowing products, or 0 if none can."""
    smallest = 1.0
    for a in arrays:
        nz = np.abs(a[a != 0])
        if nz.size:
            smallest *= float(nz.min())
    return 0.0 if smallest >= 2.0 ** -960 else (k + 2) * _ETA


def dot_bounds(P, Q):
    """Rigorous lower and upper bounds of the exact product ``P @ Q``.

    Both operands are finite point arrays. Inputs with infinities give
    infinite (still valid) bounds.
    """
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    k = P.shape[-1]
    with np.errstate(invalid="ignore", over="ignore"):
        s = P @ Q
        t = np.abs(P) @ np.abs(Q)
        err = _gamma(k) * t + _underflow_term(k, P, Q)
        lo = sub_down(s, err)
        hi = add_up(s, err)
    bad = ~np.isfinite(lo) | ~np.isfinite(hi)
    if np.any(bad):
        lo = np.where(bad, -_INF, lo)
        hi = np.where(bad, _INF, hi)
    return _scalar(lo), _scalar(hi)


def matmul_down(P, Q):
    return dot_bounds(P, Q)[0]


def matmul_up(P, Q):
    return dot_bounds(P, Q)[1]


def sum_bounds(X, axis=-1):
    """Rigorous bounds of the exact sum of ``X`` along ``axis``.

    Infinite entries are allowed: a -inf term forces the lower bound to -inf
    and a +inf term forces the upper bound to +inf.
    """
    X = np.asarray(X, dtype=float)
    k = X.shape[axis]
    fin = np.where(np.isfinite(X), X, 0.0)
    with np.errstate(over="ignore", invalid="ignore"):
        s = fin.sum(axis=axis)
        t = np.abs(fin).sum(axis=axis)
        # float sums cannot underflow inexactly
        err = _gamma(k) * t
        lo = sub_down(s, err)
        hi = add_up(s, err)
    lo = np.where(np.any(X == -_INF, axis=axis) | np.isnan(lo), -_INF, lo)
    hi = np.where(np.any(X == _INF, axis=axis) | np.isnan(hi), _INF, hi)
    return _scalar(lo), _scalar(hi)


def fsum_bounds(values):
    """Directed-rounded bounds of the exact sum of a 1-D sequence.

    ``math.fsum`` is correctly rounded, and so is the sum of the terms and the
    negated result; the sign of that residual says which way ``fsum`` rounded.
    Exact sums therefore come back as a point.
    """
    v = [float(t) for t in np.ravel(values)]
    if not all(math.isfinite(t) for t in v):
        return sum_bounds(np.asarray(v))
    try:
        s = math.fsum(v)
        r = math.fsum(v + [-s])
    except OverflowError:
        return sum_bounds(np.asarray(v))
    if math.isinf(s):
        return sum_bounds(np.asarray(v))
    lo = s if r >= 0 else math.nextafter(s, -_INF)
    hi = s if r <= 0 else math.nextafter(s, _INF)
    return lo, hi


def exact_dot_bounds(A, x):
    """Bounds of ``A @ x`` from TwoProduct terms summed with :func:`fsum_bounds`.

    Exact dot products come back as points. Rows where a product overflows,
    underflows or is not finite use :func:`dot_bounds` instead. Intended for
    small, per-point checks; it loops over rows in Python.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    x = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore", over="ignore", under="ignore"):
        p, err = _two_prod(A, x[None, :])
        ap = np.abs(p)
        zero = (A == 0) | (x[None, :] == 0)
        exact = zero | ((ap >= _TINY) & (ap < _BIG) & np.isfinite(err))
    exact_rows = np.all(exact, axis=1)
    lo, hi = dot_bounds(A, x)
    lo, hi = np.atleast_1d(lo).copy(), np.atleast_1d(hi).copy()
    for i in np.flatnonzero(exact_rows):
        terms = np.concatenate([np.where(zero[i], 0.0, p[i]), np.where(zero[i], 0.0, err[i])])
        lo[i], hi[i] = fsum_bounds(terms)
    return lo, hi
