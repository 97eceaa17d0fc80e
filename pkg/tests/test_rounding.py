import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from conftest import F, encloses, exact_dot
from oils import rounding as rd
from oils.interval import _div_bounds, _mul_bounds

mixed = st.one_of(
    st.floats(min_value=-1e10, max_value=1e10, allow_nan=False),
    st.floats(min_value=-1e-300, max_value=1e-300, allow_nan=False),
    st.sampled_from([0.0, 1.0, -1.0, 2.0 ** -1074, 1e300, -1e300]),
)


@given(st.lists(mixed, min_size=1, max_size=8), st.data())
def test_dot_bounds_enclose_exact(p, data):
    q = data.draw(st.lists(mixed, min_size=len(p), max_size=len(p)))
    lo, hi = rd.dot_bounds(np.array(p), np.array(q))
    assert encloses(lo, hi, exact_dot(p, q))


@given(st.lists(mixed, min_size=1, max_size=8))
def test_sum_bounds_enclose_exact(p):
    lo, hi = rd.sum_bounds(np.array(p))
    assert encloses(lo, hi, sum(map(F, p)))


def test_exact_zero_stays_zero():
    lo, hi = rd.dot_bounds(np.zeros((2, 3)), np.ones(3))
    assert np.all(lo == 0) and np.all(hi == 0)
    assert rd.sum_bounds(np.zeros(4)) == (0.0, 0.0)


def test_infinite_terms_force_bounds():
    lo, hi = rd.sum_bounds(np.array([1.0, np.inf]))
    assert hi == np.inf and lo > -np.inf
    lo, hi = rd.dot_bounds(np.array([[1.0, np.inf]]), np.array([1.0, 1.0]))
    assert lo == -np.inf and hi == np.inf


@given(st.lists(mixed, min_size=4, max_size=4), st.sampled_from(["mul", "div"]))
def test_kernel_bounds_enclose_endpoint_ops(v, op):
    alo, ahi = sorted(v[:2])
    blo, bhi = sorted(v[2:])
    if op == "div" and blo <= 0 <= bhi:
        return
    f = _mul_bounds if op == "mul" else _div_bounds
    lo, hi = f(alo, ahi, blo, bhi)
    for x in (alo, ahi):
        for y in (blo, bhi):
            exact = F(x) * F(y) if op == "mul" else F(x) / F(y)
            assert encloses(lo, hi, exact)


def test_kernel_zero_factor_is_exact():
    lo, hi = _mul_bounds(0.0, 0.0, -np.inf, np.inf)
    assert (lo, hi) == (0.0, 0.0)
    lo, hi = _mul_bounds(np.array([0.0, 1.0]), np.array([0.0, 2.0]), 3.0, 3.0)
    assert lo[0] == hi[0] == 0.0


def test_directed_scalar_ops():
    assert rd.add_down(0.1, 0.2) < rd.add_up(0.1, 0.2)
    assert rd.add_down(1.0, 2.0) == rd.add_up(1.0, 2.0) == 3.0
    assert rd.mul_down(3.0, 1 / 3) <= 1.0 <= rd.mul_up(3.0, 1 / 3)
    assert encloses(rd.div_down(1.0, 3.0), rd.div_up(1.0, 3.0), F(1) / 3)
    assert rd.div_down(1.0, 4.0) == rd.div_up(1.0, 4.0) == 0.25


@given(st.lists(mixed, min_size=1, max_size=8))
def test_fsum_bounds_are_directed_and_tight(p):
    lo, hi = rd.fsum_bounds(p)
    exact = sum(map(F, p))
    assert encloses(lo, hi, exact)
    assert lo == hi or np.nextafter(lo, np.inf) == hi


def test_fsum_bounds_exact_sum_is_a_point():
    assert rd.fsum_bounds([1.0, 2.0, 0.5]) == (3.5, 3.5)
    lo, hi = rd.fsum_bounds([0.1, 0.2])
    assert lo < hi


@given(st.integers(1, 3), st.lists(mixed, min_size=4, max_size=4), st.data())
def test_exact_dot_bounds(m, x, data):
    A = np.array(data.draw(st.lists(st.lists(mixed, min_size=4, max_size=4),
                                    min_size=m, max_size=m)))
    lo, hi = rd.exact_dot_bounds(A, np.array(x))
    for i in range(m):
        assert encloses(lo[i], hi[i], exact_dot(A[i], x))


def test_exact_dot_bounds_point_for_exact_products():
    lo, hi = rd.exact_dot_bounds(np.array([[0.25, 3.0], [1e300, -1e300]]), np.array([2.0, 0.5]))
    assert lo[0] == hi[0] == 2.0
    assert encloses(lo[1], hi[1], F(1e300) * 2 - F(1e300) / 2)
    lo, hi = rd.exact_dot_bounds(np.array([[0.1]]), np.array([3.0]))
    assert lo[0] < hi[0] and encloses(lo[0], hi[0], F(0.1) * 3)
