import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import encloses, seeded
from oils import rounding as rd
from oils import solve_iterative
from oils.errors import ZeroOnDiagonal
from oils.interval import Interval, IntervalArray
from oils.iterative import _sweep_finite, _sweep_generic, gauss_seidel_sweep, jacobi_step
from oils.precondition import precondition
from oils.system import IterationConfig


def test_jacobi_identity():
    rhs = IntervalArray([1.0, 3.0], [2.0, 4.0])
    X = IntervalArray([-5.0, 0.0], [5.0, 9.0])
    assert jacobi_step(IntervalArray(np.eye(2)), rhs, X) == rhs


def test_jacobi_scalar():
    X = jacobi_step(IntervalArray(np.array([[2.0]])), IntervalArray([2.0], [4.0]),
                    IntervalArray([0.0], [10.0]))
    assert X[0] == Interval(1.0, 2.0)


def test_jacobi_hand_step():
    M = IntervalArray([[1.0, 0.0], [0.0, 1.0]], [[1.0, 0.1], [0.1, 1.0]])
    X = jacobi_step(M, IntervalArray(np.ones(2)), IntervalArray(np.zeros(2), [2.0, 2.0]))
    for k in range(2):
        assert encloses(X.lo[k], X.hi[k], 1)
        assert abs(X.lo[k] - 0.8) < 1e-15 and X.hi[k] == 1.0
        assert X.lo[k] <= 0.8


def test_zero_on_diagonal():
    M = IntervalArray([[-1.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(ZeroOnDiagonal):
        jacobi_step(M, IntervalArray(np.ones(2)), IntervalArray(np.ones(2)))
    with pytest.raises(ZeroOnDiagonal):
        gauss_seidel_sweep(M, IntervalArray(np.ones(2)), IntervalArray(np.ones(2)))


@pytest.mark.parametrize("variant", ["jacobi", "gauss_seidel"])
def test_point_system_converges(rng, variant):
    A = rng.uniform(-5, 5, (6, 4))
    x = rng.uniform(-5, 5, 4)
    b = IntervalArray(*rd.dot_bounds(A, x))
    X0 = IntervalArray(x - 1, x + 1)
    out = solve_iterative(IntervalArray(A), b, variant=variant, X0=X0,
                          cfg=IterationConfig(1e-12, 20))
    assert out.ok and out.contains(x)
    assert np.max(out.box.width) < 1e-8


def test_fixed_point_returns_after_one_step():
    A = IntervalArray(np.eye(2))
    b = IntervalArray([1.0, 3.0], [2.0, 4.0])
    out = solve_iterative(A, b, X0=b)
    assert out.ok and out.box == b and out.stats["iterations"] == 1


def test_large_radii_cause_zero_on_diagonal():
    failures = 0
    for seed in range(100):
        sys, _ = seeded(5, 3, e=-1, seed=seed, rng_range=1.0)
        out = solve_iterative(sys)
        if out.kind == "failure":
            failures += out.stats.get("error") == "ZeroOnDiagonal"
    assert failures > 0


def test_empty_intersection_is_failure_not_unsolvable():
    A = IntervalArray(np.eye(2))
    b = IntervalArray(np.ones(2))
    out = solve_iterative(A, b, X0=IntervalArray([5.0, 5.0], [6.0, 6.0]))
    assert out.kind == "failure"


def _contracts_and_keeps(variant, seed):
    sys, x = seeded(6, 3, e=-4, seed=seed)
    M, rhs = precondition(sys).top
    X = IntervalArray(x - 0.5, x + 0.5)
    for _ in range(5):
        if variant == "jacobi":
            new = X.intersect(jacobi_step(M, rhs, X))
        else:
            new = gauss_seidel_sweep(M, rhs, X)
        assert new is not None and new.subset(X)
        assert new.contains(x).all()
        X = new


@given(st.integers(0, 10 ** 6), st.sampled_from(["jacobi", "gauss_seidel"]))
def test_contraction_and_soundness(seed, variant):
    _contracts_and_keeps(variant, seed)


def test_gauss_seidel_needs_no_more_iterations_than_jacobi():
    cfg = IterationConfig.for_radius_exponent(-6)
    for seed in range(100):
        sys, x = seeded(8, 5, e=-6, seed=seed)
        X0 = IntervalArray(x - 1, x + 1)
        j = solve_iterative(sys, variant="jacobi", X0=X0, cfg=cfg)
        g = solve_iterative(sys, variant="gauss_seidel", X0=X0, cfg=cfg)
        if j.ok and g.ok:
            assert g.stats["iterations"] <= j.stats["iterations"]


@given(st.integers(1, 8), st.integers(0, 2 ** 32 - 1))
def test_finite_sweep_matches_generic(n, seed):
    rng = np.random.default_rng(seed)
    c = rng.uniform(-0.2, 0.2, (n, n)) + np.eye(n)
    r = rng.uniform(0, 1e-3, (n, n))
    M = IntervalArray(c - r, c + r)
    bc = rng.uniform(-3, 3, n)
    rhs = IntervalArray(bc - 0.01, bc + 0.01)
    X = IntervalArray(np.full(n, -10.0), np.full(n, 10.0))
    a, b = _sweep_finite(M, rhs, X), _sweep_generic(M, rhs, X)
    assert (a is None) == (b is None)
    if a is not None:
        assert np.allclose(a[0], b[0], rtol=0, atol=1e-13)
        assert np.allclose(a[1], b[1], rtol=0, atol=1e-13)


def test_sweep_keeps_point_solution(rng):
    n = 4
    c = np.eye(n) + rng.uniform(-0.1, 0.1, (n, n))
    x = rng.uniform(-1, 1, n)
    rhs = IntervalArray(*rd.dot_bounds(c, x))
    X = gauss_seidel_sweep(IntervalArray(c), rhs, IntervalArray(x - 1, x + 1))
    assert X.contains(x).all()
    assert np.max(X.width) < 0.5
