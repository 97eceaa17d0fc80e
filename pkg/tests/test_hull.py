import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import disjoint_family, seeded
from oils import hull, op_membership, rohn_basic, solve_ge, solve_iterative, solve_lsq
from oils import rounding as rd
from oils.hull import MAX_DIMENSION, orthant_lp, orthants
from oils.interval import IntervalArray
from oils.system import OilsSystem


def _one_two():
    A = IntervalArray(np.array([[1.0], [1.0]]), np.array([[2.0], [2.0]]))
    b = IntervalArray(np.array([1.0, 1.0]), np.array([2.0, 2.0]))
    return A, b


def test_membership_examples():
    A, b = _one_two()
    assert op_membership(A, b, [1.0])
    assert not op_membership(A, b, [2.5])
    assert op_membership(A, b, [2.0]) and op_membership(A, b, [0.5])


def test_membership_point_system(rng):
    A = rng.integers(-5, 6, (4, 3)).astype(float)
    x = rng.integers(-5, 6, 3).astype(float)
    sys = (IntervalArray(A), IntervalArray(A @ x))
    assert op_membership(*sys, x) and op_membership(*sys, x, strict=True)
    assert not op_membership(*sys, x + np.array([1e-6, 0, 0]))


def test_strict_mode_is_conservative():
    # 1 * 0.1 is exact, so both modes accept; 3 * fl(1/3) misses 1 and only the
    # outward-rounded mode gives it the benefit of the doubt
    A = IntervalArray(np.array([[1.0]]))
    b = IntervalArray(np.array([0.1]))
    assert op_membership(A, b, [0.1])
    assert op_membership(A, b, [0.1], strict=True)
    A = IntervalArray(np.array([[3.0]]))
    b = IntervalArray(np.array([1.0]))
    x = [1 / 3]
    assert op_membership(A, b, x)
    assert not op_membership(A, b, x, strict=True)


def test_membership_shape_check():
    A, b = _one_two()
    with pytest.raises(ValueError):
        op_membership(A, b, [1.0, 2.0])


def test_orthant_lp_rows():
    A, b = _one_two()
    lp = orthant_lp(A, b, [1])
    assert np.array_equal(lp.G[:, 0], [1, 1, -2, -2, -1])
    assert np.array_equal(lp.h, [2, 2, -1, -1, 0])


def test_orthant_choices():
    assert orthants(2) == [(1, -1), (1, -1)]
    box = IntervalArray([-1.0, 0.0, 1.0], [1.0, 2.0, 3.0])
    assert orthants(3, box) == [(1, -1), (1,), (1,)]
    assert orthants(1, IntervalArray([-2.0], [-1.0])) == [(-1,)]


def test_hull_examples():
    out = hull(*_one_two())
    assert out.ok
    assert out.box.lo[0] == pytest.approx(0.5, abs=1e-9)
    assert out.box.hi[0] == pytest.approx(2.0, abs=1e-9)
    assert hull(*disjoint_family()).kind == "unsolvable"


def test_hull_unbounded():
    # 0 in the coefficient lets x grow without limit
    A = IntervalArray(np.array([[-1.0]]), np.array([[1.0]]))
    assert hull(A, IntervalArray(np.array([1.0]))).kind == "unbounded"


def test_dimension_cap():
    A = IntervalArray(np.eye(MAX_DIMENSION + 1))
    out = hull(A, IntervalArray(np.ones(MAX_DIMENSION + 1)))
    assert out.kind == "failure"
    box = IntervalArray(np.full(MAX_DIMENSION + 1, 0.5), np.full(MAX_DIMENSION + 1, 2.0))
    out = hull(A, IntervalArray(np.ones(MAX_DIMENSION + 1)), presolve=box)
    assert out.ok and out.stats["orthants"] == 1


def test_budget():
    sys, _ = seeded(5, 3, e=-3, seed=0)
    assert hull(sys, budget=4).kind == "failure"


def _members(sys, pts):
    # vectorized Oettli-Prager test with a small slack
    Ac, Ad, bc, bd = sys.A.mid, sys.A.rad, sys.b.mid, sys.b.rad
    lhs = np.abs(pts @ Ac.T - bc)
    rhs = np.abs(pts) @ Ad.T + bd
    return np.all(lhs <= rhs + 1e-12, axis=1)


@settings(max_examples=30)
@given(st.integers(1, 2), st.integers(0, 2 ** 32 - 1))
def test_hull_matches_membership_grid(n, seed):
    rng = np.random.default_rng(seed)
    m = 4 if n == 2 else 3
    c = rng.uniform(-3, 3, (m, n))
    c = np.where(np.abs(c) < 0.5, 1.0, c)
    r = rng.uniform(0.01, 0.3, (m, n))
    x = rng.uniform(-2, 2, n)
    blo, bhi = rd.dot_bounds(c, x)
    rb = rng.uniform(0.01, 0.5, m)
    sys = OilsSystem(IntervalArray(c - r, c + r), IntervalArray(blo - rb, bhi + rb))
    out = hull(sys)
    assert out.ok
    H = out.box
    span = H.hi - H.lo
    k = 801 if n == 1 else 301
    axes = [np.linspace(H.lo[j] - 0.2 * span[j], H.hi[j] + 0.2 * span[j], k) for j in range(n)]
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    inside = pts[_members(sys, pts)]
    step = 1.4 * span / (k - 1) * 1.2 + 1e-9
    grid_lo, grid_hi = inside.min(axis=0), inside.max(axis=0)
    # no member lies outside the LP hull, and the hull is not loose
    assert np.all(grid_lo >= H.lo - 1e-7) and np.all(grid_hi <= H.hi + 1e-7)
    assert np.all(grid_lo - H.lo <= step) and np.all(H.hi - grid_hi <= step)


def test_presolve_matches_full_hull():
    for seed in range(10):
        for n in (2, 4, 6):
            sys, _ = seeded(n + 2, n, e=-3, seed=seed)
            pre = rohn_basic(sys)
            assert pre.ok
            full, fast = hull(sys), hull(sys, presolve=pre.box)
            assert np.allclose(full.box.lo, fast.box.lo, atol=1e-9)
            assert np.allclose(full.box.hi, fast.box.hi, atol=1e-9)
            assert fast.stats["orthants"] <= full.stats["orthants"]


def test_sandwich():
    for seed in range(40):
        sys, x = seeded(5, 3, e=-3, seed=seed)
        H = hull(sys)
        assert H.ok and H.contains(x)
        tol = 1e-8 * (1 + H.box.mag)
        for out in (rohn_basic(sys), solve_lsq(sys), solve_ge(sys, use_preconditioner=True),
                    solve_iterative(sys)):
            if out.ok:
                assert np.all(out.box.lo <= H.box.lo + tol)
                assert np.all(out.box.hi >= H.box.hi - tol)


def test_sampled_points_in_union_of_orthants(rng):
    sys, x = seeded(4, 2, e=-1, seed=3, rng_range=2.0)
    H = hull(sys)
    assert H.ok
    pts = rng.uniform(H.box.lo - 0.5, H.box.hi + 0.5, (2000, 2))
    for p in pts:
        if op_membership(sys, None, p):
            assert H.contains(p)
