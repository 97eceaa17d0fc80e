import numpy as np
import pytest

from conftest import seeded
from oils import OilsSystem, op_membership
from oils.errors import SingularMatrix
from oils.interval import IntervalArray
from oils.linalg import approx_inverse
from oils.precondition import hansen_preconditioner, precondition


def test_hansen_example():
    A = IntervalArray(np.array([[2.0, 0.0], [0.0, 2.0], [1.0, 1.0]]))
    C = hansen_preconditioner(A)
    assert np.allclose(C, [[0.5, 0, 0], [0, 0.5, 0], [-0.5, -0.5, 1]])


def test_square_degenerates_to_inverse(rng):
    M = rng.normal(size=(4, 4)) + 4 * np.eye(4)
    assert np.allclose(hansen_preconditioner(IntervalArray(M)), approx_inverse(M))


def test_block_structure(rng):
    A = IntervalArray(rng.normal(size=(6, 3)))
    C = hansen_preconditioner(A)
    assert np.allclose(C[:3, 3:], 0)
    assert np.allclose(C[3:, 3:], np.eye(3))


def test_singular_top_block():
    A = IntervalArray(np.array([[1.0, 1.0], [1.0, 1.0], [1.0, 2.0]]))
    with pytest.raises(SingularMatrix):
        hansen_preconditioner(A)


def test_point_system_shapes():
    A = np.array([[1.0, 2.0], [3.0, 5.0], [1.0, 1.0]])
    x = np.array([1.0, -1.0])
    pre = precondition(IntervalArray(A), IntervalArray(A @ x))
    M, rhs = pre.top
    R, _ = pre.residual
    assert M.shape == (2, 2) and R.shape == (1, 2)
    assert np.allclose(M.mid, np.eye(2)) and np.max(M.width) < 1e-13
    assert np.max(R.mag) < 1e-13
    assert np.allclose(rhs.mid, x)
    stacked = np.vstack([pre.top[0].lo, pre.residual[0].lo])
    assert np.array_equal(stacked, pre.full.A.lo)


def test_square_has_empty_residual(rng):
    A = IntervalArray(rng.normal(size=(3, 3)) + 3 * np.eye(3))
    pre = precondition(A, IntervalArray(np.ones(3)))
    assert pre.residual[0].shape == (0, 3)


def test_residual_contains_zero_for_small_radii():
    for seed in range(100):
        sys, _ = seeded(7, 4, e=-5, seed=seed)
        R, _ = precondition(sys).residual
        assert np.all(R.contains_zero())


def test_solution_set_is_enlarged():
    for seed in range(50):
        sys, x = seeded(6, 3, e=-3, seed=seed)
        pre = precondition(sys)
        assert op_membership(pre.full, None, x)
        assert isinstance(pre.full, OilsSystem)
