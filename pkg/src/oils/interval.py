"""Outward-rounded interval scalars, vectors and matrices.

Intervals are stored by their bounds. Every arithmetic result encloses the
exact set result: lower bounds are rounded toward -inf, upper bounds toward
+inf (see :mod:`oils.rounding`). Values are immutable.
"""

from __future__ import annotations

import math
from numbers import Real

import numpy as np

from . import rounding as rd
from .errors import ShapeError, ZeroDivisor

_ETA = 2.0 ** -1074

__all__ = [
    "Interval", "EMPTY", "IntervalArray", "intersect", "hull",
    "sign_vector", "from_mid_rad", "point_matmul", "to_interval_array",
]


class Interval:
    """Closed real interval ``[lo, hi]``; bounds may be infinite.

    ``EMPTY`` is the only interval with ``lo > hi``. It is produced by
    :func:`intersect` and never by arithmetic.
    """

    __slots__ = ("_lo", "_hi")

    def __init__(self, lo, hi=None):
        lo = float(lo)
        hi = lo if hi is None else float(hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("interval bounds must not be NaN")
        if lo > hi:
            raise ValueError(f"invalid interval [{lo}, {hi}]")
        object.__setattr__(self, "_lo", lo)
        object.__setattr__(self, "_hi", hi)

    @classmethod
    def _empty(cls):
        self = object.__new__(cls)
        object.__setattr__(self, "_lo", math.inf)
        object.__setattr__(self, "_hi", -math.inf)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    @property
    def lo(self):
        return self._lo

    @property
    def hi(self):
        return self._hi

    @property
    def is_empty(self):
        return self._lo > self._hi

    @classmethod
    def from_mid_rad(cls, mid, rad):
        if rad < 0:
            raise ValueError("radius must be nonnegative")
        return cls(rd.sub_down(mid, rad), rd.add_up(mid, rad))

    @property
    def mid(self):
        if math.isinf(self._lo) or math.isinf(self._hi):
            if self._lo == -self._hi:
                return 0.0
            return self._lo if math.isinf(self._hi) else self._hi
        return 0.5 * self._lo + 0.5 * self._hi

    @property
    def rad(self):
        """Radius rounded up, so that ``[mid - rad, mid + rad]`` covers self."""
        m = self.mid
        return float(max(rd.sub_up(self._hi, m), rd.sub_up(m, self._lo)))

    @property
    def width(self):
        return float(rd.sub_up(self._hi, self._lo))

    @property
    def mag(self):
        return max(abs(self._lo), abs(self._hi))

    @property
    def mig(self):
        if self._lo <= 0 <= self._hi:
            return 0.0
        return min(abs(self._lo), abs(self._hi))

    def __contains__(self, x):
        return self._lo <= x <= self._hi

    def contains_zero(self):
        return self._lo <= 0 <= self._hi

    def __iter__(self):
        yield self._lo
        yield self._hi

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        return self._lo == other._lo and self._hi == other._hi

    def __hash__(self):
        return hash((self._lo, self._hi))

    def __repr__(self):
        if self.is_empty:
            return "Interval.EMPTY"
        return f"Interval({self._lo!r}, {self._hi!r})"

    def subset(self, other):
        return self.is_empty or (other._lo <= self._lo and self._hi <= other._hi)

    def _coerce(self, other):
        if isinstance(other, Interval):
            if other.is_empty:
                raise ValueError("arithmetic on the empty interval")
            return other
        if isinstance(other, Real):
            return Interval(other)
        return NotImplemented

    def _check(self):
        if self.is_empty:
            raise ValueError("arithmetic on the empty interval")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._check()
        return Interval(rd.add_down(self._lo, other._lo), rd.add_up(self._hi, other._hi))

    __radd__ = __add__

    def __neg__(self):
        self._check()
        return Interval(-self._hi, -self._lo)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._check()
        return Interval(rd.sub_down(self._lo, other._hi), rd.sub_up(self._hi, other._lo))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._check()
        lo, hi = _mul_tight(self._lo, self._hi, other._lo, other._hi)
        return Interval(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._check()
        if other.contains_zero():
            raise ZeroDivisor(f"division by {other!r}")
        lo, hi = _div_tight(self._lo, self._hi, other._lo, other._hi)
        return Interval(lo, hi)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self


EMPTY = Interval._empty()


def intersect(a: Interval, b: Interval) -> Interval:
    """Exact set intersection; returns ``EMPTY`` for disjoint operands."""
    if a.is_empty or b.is_empty:
        return EMPTY
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return EMPTY
    return Interval(lo, hi)


def hull(a: Interval, b: Interval) -> Interval:
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    return Interval(min(a.lo, b.lo), max(a.hi, b.hi))


def _outward(P, a, b):
    """Min and max over axis 0 of nearest-rounded candidates ``a op b``.

    A correctly rounded product or quotient lies within half an ulp of the
    exact value, so one step outward encloses it, in the subnormal range too.
    Candidates with a zero factor are exact zeros and are not widened; a
    nonzero candidate that underflowed to zero becomes the smallest subnormal
    of its sign first.
    """
    zero = (a == 0) | (b == 0)
    with np.errstate(invalid="ignore"):
        under = (P == 0) & ~zero
        if under.any():
            P = np.where(under, np.sign(a) * np.sign(b) * _ETA, P)
        P = np.where(zero, 0.0, P)
        pmin, pmax = P.min(axis=0), P.max(axis=0)
        lo = np.where(pmin == 0, 0.0, rd.down(pmin))
        hi = np.where(pmax == 0, 0.0, rd.up(pmax))
    return rd._scalar(lo), rd._scalar(hi)


def _mul_bounds(alo, ahi, blo, bhi):
    """Outward-rounded min/max over the four endpoint products (broadcasts).

    A zero factor gives an exact zero, also against an infinite endpoint.
    """
    alo, ahi, blo, bhi = np.broadcast_arrays(alo, ahi, blo, bhi)
    a = np.stack([alo, alo, ahi, ahi])
    b = np.stack([blo, bhi, blo, bhi])
    with np.errstate(invalid="ignore", over="ignore", under="ignore"):
        P = a * b
    return _outward(P, a, b)


def _div_bounds(alo, ahi, blo, bhi):
    """Outward-rounded quotient bounds for divisors that exclude zero."""
    alo, ahi, blo, bhi = np.broadcast_arrays(alo, ahi, blo, bhi)
    a = np.stack([alo, alo, ahi, ahi])
    b = np.stack([blo, bhi, blo, bhi])
    with np.errstate(invalid="ignore", over="ignore", under="ignore", divide="ignore"):
        P = a / b
    return _outward(P, a, b)


def _mul_tight(alo, ahi, blo, bhi):
    """Like :func:`_mul_bounds` but with exactly directed rounding."""
    alo, ahi, blo, bhi = np.broadcast_arrays(alo, ahi, blo, bhi)
    dn, upv = rd.mul_pair(np.stack([alo, alo, ahi, ahi]), np.stack([blo, bhi, blo, bhi]))
    return rd._scalar(dn.min(axis=0)), rd._scalar(upv.max(axis=0))


def _div_tight(alo, ahi, blo, bhi):
    alo, ahi, blo, bhi = np.broadcast_arrays(alo, ahi, blo, bhi)
    dn, upv = rd.div_pair(np.stack([alo, alo, ahi, ahi]), np.stack([blo, bhi, blo, bhi]))
    return rd._scalar(dn.min(axis=0)), rd._scalar(upv.max(axis=0))


def sign_vector(x) -> np.ndarray:
    """Sign vector with zero mapped to +1."""
    x = np.asarray(x, dtype=float)
    return np.where(x >= 0, 1, -1).astype(np.int8)


class IntervalArray:
    """Dense interval vector or matrix held as two float arrays.

    Arithmetic operators act elementwise with numpy broadcasting; ``@`` is the
    interval matrix product. Point operands (floats, ndarrays) are accepted
    wherever an interval operand is.
    """

    __slots__ = ("lo", "hi")
    __array_ufunc__ = None  # keep ndarray @ IntervalArray on our side

    def __init__(self, lo, hi=None, *, check=True):
        lo = np.array(lo, dtype=float)
        hi = lo.copy() if hi is None else np.array(hi, dtype=float)
        if lo.shape != hi.shape:
            raise ShapeError(f"bound shapes differ: {lo.shape} vs {hi.shape}")
        if check:
            if np.isnan(lo).any() or np.isnan(hi).any():
                raise ValueError("interval bounds must not be NaN")
            if np.any(lo > hi):
                raise ValueError("lower bound exceeds upper bound")
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("IntervalArray is immutable")

    @classmethod
    def from_intervals(cls, items):
        arr = np.asarray([[iv.lo, iv.hi] for iv in np.ravel(np.asarray(items, dtype=object))])
        shape = np.shape(np.asarray(items, dtype=object))
        return cls(arr[:, 0].reshape(shape), arr[:, 1].reshape(shape))

    @classmethod
    def zeros(cls, shape):
        z = np.zeros(shape)
        return cls(z, z)

    @classmethod
    def eye(cls, n):
        e = np.eye(n)
        return cls(e, e)

    # structure -------------------------------------------------------------

    @property
    def shape(self):
        return self.lo.shape

    @property
    def ndim(self):
        return self.lo.ndim

    def __len__(self):
        return self.lo.shape[0]

    @property
    def T(self):
        return IntervalArray(self.lo.T, self.hi.T, check=False)

    def __getitem__(self, idx):
        lo, hi = self.lo[idx], self.hi[idx]
        if np.ndim(lo) == 0:
            return Interval(lo, hi)
        return IntervalArray(lo, hi, check=False)

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def __repr__(self):
        return f"IntervalArray(lo={self.lo!r}, hi={self.hi!r})"

    def __eq__(self, other):
        if not isinstance(other, IntervalArray):
            return NotImplemented
        return (self.shape == other.shape and np.array_equal(self.lo, other.lo)
                and np.array_equal(self.hi, other.hi))

    __hash__ = None

    def tolist(self):
        return np.stack([self.lo, self.hi], axis=-1).tolist()

    def with_entries(self, idx, lo, hi):
        """Copy with ``[idx]`` replaced by the given bounds."""
        nlo, nhi = self.lo.copy(), self.hi.copy()
        nlo[idx] = lo
        nhi[idx] = hi
        return IntervalArray(nlo, nhi)

    # midpoint / radius views -------------------------------------------------

    @property
    def mid(self):
        """Midpoints, rounded to nearest."""
        lo, hi = self.lo, self.hi
        with np.errstate(invalid="ignore"):
            m = 0.5 * lo + 0.5 * hi
        m = np.where(np.isinf(lo) & np.isinf(hi), 0.0, m)
        m = np.where(np.isinf(lo) & ~np.isinf(hi), hi, m)
        m = np.where(np.isinf(hi) & ~np.isinf(lo), lo, m)
        return m

    @property
    def rad(self):
        """Radii rounded up: ``[mid - rad, mid + rad]`` covers each entry."""
        m = self.mid
        return np.maximum(rd.sub_up(self.hi, m), rd.sub_up(m, self.lo))

    @property
    def width(self):
        return rd.sub_up(self.hi, self.lo)

    @property
    def mag(self):
        return np.maximum(np.abs(self.lo), np.abs(self.hi))

    @property
    def mig(self):
        m = np.minimum(np.abs(self.lo), np.abs(self.hi))
        return np.where((self.lo <= 0) & (self.hi >= 0), 0.0, m)

    def contains_zero(self):
        return (self.lo <= 0) & (self.hi >= 0)

    def contains(self, x):
        """Elementwise membership of the point array ``x``."""
        x = np.asarray(x, dtype=float)
        return (self.lo <= x) & (x <= self.hi)

    def subset(self, other):
        other = to_interval_array(other)
        return bool(np.all(other.lo <= self.lo) and np.all(self.hi <= other.hi))

    def interior_of(self, other):
        """True if every entry lies in the interior of ``other``'s entry."""
        other = to_interval_array(other)
        return bool(np.all(other.lo < self.lo) and np.all(self.hi < other.hi))

    def is_bounded(self):
        return bool(np.all(np.isfinite(self.lo)) and np.all(np.isfinite(self.hi)))

    def intersect(self, other):
        """Entrywise intersection, or ``None`` if some entry is empty."""
        other = to_interval_array(other)
        lo = np.maximum(self.lo, other.lo)
        hi = np.minimum(self.hi, other.hi)
        if np.any(lo > hi):
            return None
        return IntervalArray(lo, hi, check=False)

    def hull(self, other):
        other = to_interval_array(other)
        return IntervalArray(np.minimum(self.lo, other.lo), np.maximum(self.hi, other.hi),
                             check=False)

    def hausdorff(self, other):
        """Largest bound displacement between two arrays of equal shape."""
        other = to_interval_array(other)
        with np.errstate(invalid="ignore"):
            d = np.maximum(np.abs(self.lo - other.lo), np.abs(self.hi - other.hi))
        d = np.where(np.isnan(d), 0.0, d)  # equal infinite bounds
        return float(np.max(d)) if d.size else 0.0

    def inflate(self, factor, floor=0.0):
        """Widen each entry about its midpoint to ``factor`` times its radius."""
        r = rd.mul_up(self.rad, factor)
        r = rd.add_up(r, floor)
        return from_mid_rad(self.mid, r)

    # arithmetic ------------------------------------------------------------

    def __neg__(self):
        return IntervalArray(-self.hi, -self.lo, check=False)

    def __add__(self, other):
        other = to_interval_array(other)
        return IntervalArray(rd.add_down(self.lo, other.lo), rd.add_up(self.hi, other.hi),
                             check=False)

    __radd__ = __add__

    def __sub__(self, other):
        other = to_interval_array(other)
        return IntervalArray(rd.sub_down(self.lo, other.hi), rd.sub_up(self.hi, other.lo),
                             check=False)

    def __rsub__(self, other):
        return to_interval_array(other) - self

    def __mul__(self, other):
        other = to_interval_array(other)
        lo, hi = _mul_tight(self.lo, self.hi, other.lo, other.hi)
        return IntervalArray(lo, hi, check=False)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = to_interval_array(other)
        if np.any(other.contains_zero()):
            raise ZeroDivisor("divisor contains zero")
        lo, hi = _div_tight(self.lo, self.hi, other.lo, other.hi)
        return IntervalArray(lo, hi, check=False)

    def __rtruediv__(self, other):
        return to_interval_array(other) / self

    def __matmul__(self, other):
        if isinstance(other, IntervalArray):
            return interval_matmul(self, other)
        other = np.asarray(other, dtype=float)
        # interval @ point == (point.T @ interval.T).T
        return point_matmul(other.T, self.T).T

    def __rmatmul__(self, other):
        return point_matmul(np.asarray(other, dtype=float), self)


def to_interval_array(x) -> IntervalArray:
    if isinstance(x, IntervalArray):
        return x
    if isinstance(x, Interval):
        return IntervalArray(x.lo, x.hi)
    return IntervalArray(np.asarray(x, dtype=float))


def from_mid_rad(mid, rad) -> IntervalArray:
    mid = np.asarray(mid, dtype=float)
    rad = np.asarray(rad, dtype=float)
    if np.any(rad < 0):
        raise ValueError("radius must be nonnegative")
    return IntervalArray(rd.sub_down(mid, rad), rd.add_up(mid, rad))


def point_matmul(C, X: IntervalArray) -> IntervalArray:
    """Enclosure of ``{C @ x : x in X}`` for a point matrix ``C``."""
    C = np.asarray(C, dtype=float)
    X = to_interval_array(X)
    if C.shape[-1] != X.shape[0]:
        raise ShapeError(f"cannot multiply {C.shape} by {X.shape}")
    if not X.is_bounded() or not np.all(np.isfinite(C)):
        return interval_matmul(to_interval_array(C), X)
    Cp = np.maximum(C, 0.0)
    Cn = np.minimum(C, 0.0)
    left = np.concatenate([Cp, Cn], axis=-1)
    lo, _ = rd.dot_bounds(left, np.concatenate([X.lo, X.hi], axis=0))
    _, hi = rd.dot_bounds(left, np.concatenate([X.hi, X.lo], axis=0))
    return IntervalArray(lo, hi, check=False)


def interval_matmul(M: IntervalArray, X: IntervalArray) -> IntervalArray:
    """Interval matrix product, entry (i, j) as the sum over k of M_ik * X_kj."""
    if M.ndim == 1:
        return interval_matmul(IntervalArray(M.lo[None], M.hi[None], check=False), X)[0]
    if M.ndim != 2 or M.shape[1] != X.shape[0]:
        raise ShapeError(f"cannot multiply {M.shape} by {X.shape}")
    xlo = X.lo.reshape(X.shape[0], -1)
    xhi = X.hi.reshape(X.shape[0], -1)
    plo, phi = _mul_bounds(M.lo[:, :, None], M.hi[:, :, None], xlo[None], xhi[None])
    lo, _ = rd.sum_bounds(plo, axis=1)
    _, hi = rd.sum_bounds(phi, axis=1)
    if X.ndim == 1:
        lo, hi = lo[:, 0], hi[:, 0]
    return IntervalArray(lo, hi, check=False)
