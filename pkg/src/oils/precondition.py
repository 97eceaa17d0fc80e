"""Hansen's block preconditioner for overdetermined systems."""

from dataclasses import dataclass

import numpy as np

from .interval import IntervalArray, point_matmul
from .linalg import approx_inverse
from .system import OilsSystem, as_system

__all__ = ["hansen_preconditioner", "precondition", "PreconditionedSystem"]


def hansen_preconditioner(A: IntervalArray) -> np.ndarray:
    """Approximate inverse of ``[[A1, 0], [A2, I]]`` built from mid(A).

    ``A1`` holds the first n rows of the midpoint matrix and ``A2`` the
    remaining m - n. Raises :class:`~oils.errors.SingularMatrix` if the block
    matrix cannot be inverted; no row permutation is attempted.
    """
    Ac = A.mid
    m, n = Ac.shape
    block = np.zeros((m, m))
    block[:, :n] = Ac
    block[n:, n:] = np.eye(m - n)
    return approx_inverse(block)


@dataclass(frozen=True)
class PreconditionedSystem:
    C: np.ndarray
    full: OilsSystem

    @property
    def n(self):
        return self.full.n

    @property
    def top(self):
        """Square n x n block, close to the identity for mild inputs."""
        n = self.n
        return self.full.A[:n], self.full.b[:n]

    @property
    def residual(self):
        """Remaining m - n rows, entries close to zero for mild inputs."""
        n = self.n
        return self.full.A[n:], self.full.b[n:]


def precondition(A, b=None) -> PreconditionedSystem:
    sys = as_system(A, b)
    C = hansen_preconditioner(sys.A)
    CA = point_matmul(C, sys.A)
    Cb = point_matmul(C, sys.b)
    return PreconditionedSystem(C, OilsSystem(CA, Cb, dict(sys.meta)))
