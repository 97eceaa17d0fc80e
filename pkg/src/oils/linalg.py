"""Point (non-interval) linear algebra used as scaffolding by the solvers."""

import warnings

import numpy as np
import scipy.linalg

from .errors import ShapeError, SingularMatrix

__all__ = ["approx_inverse", "pseudo_solution_matrix", "spectral_radius_estimate", "lu_solve"]

PIVOT_TOL = 1e-12


def _lu(M):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise SingularMatrix("matrix has non-finite entries")
    with warnings.catch_warnings():
        # exact singularity is reported below through the pivot test
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    scale = np.linalg.norm(M, np.inf)
    if scale == 0 or np.min(np.abs(np.diag(lu))) < PIVOT_TOL * scale:
        raise SingularMatrix("LU pivot below tolerance")
    return lu, piv


def approx_inverse(M):
    """Approximate inverse by LU with partial pivoting.

    No rigorous bound on ``M @ X - I`` is attempted; interval methods that use
    the result absorb its error.
    """
    lu, piv = _lu(M)
    return scipy.linalg.lu_solve((lu, piv), np.eye(lu.shape[0]), check_finite=False)


def lu_solve(M, b):
    lu, piv = _lu(M)
    return scipy.linalg.lu_solve((lu, piv), np.asarray(b, dtype=float), check_finite=False)


def pseudo_solution_matrix(A):
    """``(A^T A)^{-1} A^T`` through the normal equations."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] < A.shape[1]:
        raise ShapeError(f"expected a tall matrix, got shape {A.shape}")
    AtA = A.T @ A
    lu, piv = _lu(AtA)
    return scipy.linalg.lu_solve((lu, piv), A.T, check_finite=False)


def spectral_radius_estimate(G, max_iter=200, rtol=1e-12):
    """Power iteration on a nonnegative matrix from the all-ones vector.

    Used as a diagnostic only. Stops after ``max_iter`` steps or when the
    estimate changes by less than ``rtol`` relatively.
    """
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {G.shape}")
    if np.any(G < 0):
        raise ValueError("matrix must be elementwise nonnegative")
    if not np.any(G):
        return 0.0
    # the unit shift keeps the iteration from oscillating on cyclic matrices
    # and moves the Perron root to ρ + 1 without changing its eigenvector
    S = G + np.eye(G.shape[0])
    v = np.ones(G.shape[0])
    est = 0.0
    for _ in range(max_iter):
        w = S @ v
        new = np.max(w) / np.max(v)
        v = w / np.max(w)
        if est and abs(new - est) <= rtol * abs(new):
            break
        est = new
    return float(new - 1.0)
