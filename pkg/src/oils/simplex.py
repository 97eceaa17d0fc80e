"""Dense two-phase primal simplex with Bland's rule.

Problems have the form ``minimize c.x  subject to  A x <= b`` with free x.
Free variables are split as ``x = u - v`` with ``u, v >= 0`` and every row
gets a slack. Rows with negative right-hand side receive an artificial
variable for phase 1.

Phase 1 ends in a :class:`FeasibleTableau` that can be reused for any number
of objectives over the same feasible set, which is how the hull computation
asks for 2n bounds per orthant.
"""

from dataclasses import dataclass

import numpy as np

from .errors import IterationLimit

__all__ = ["LPResult", "FeasibleTableau", "phase_one", "simplex_solve",
           "TOLERANCE", "MAX_PIVOTS"]

TOLERANCE = 1e-9
MAX_PIVOTS = 100_000


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: float = np.nan
    x: np.ndarray = None
    pivots: int = 0

    @property
    def optimal(self):
        return self.status == "optimal"


class _Counter:
    def __init__(self, limit):
        self.limit = limit
        self.count = 0

    def tick(self):
        self.count += 1
        if self.count > self.limit:
            raise IterationLimit(f"simplex exceeded {self.limit} pivots")


def _pivot(T, basis, r, c):
    T[r] /= T[r, c]
    col = T[:, c].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])
    basis[r] = c


def _run(T, basis, ncols, counter, tol):
    """Minimize the objective in the last row of T over the first ncols columns.

    The last row holds reduced costs and ``-value`` in the last column.
    Returns "optimal" or "unbounded".
    """
    rows = T.shape[0] - 1
    while True:
        cost = T[-1, :ncols]
        cand = np.flatnonzero(cost < -tol)
        if cand.size == 0:
            return "optimal"
        c = int(cand[0])  # Bland: smallest index enters
        colv = T[:rows, c]
        pos = np.flatnonzero(colv > tol)
        if pos.size == 0:
            return "unbounded"
        ratios = T[pos, -1] / colv[pos]
        best = ratios.min()
        ties = pos[ratios <= best + tol * max(1.0, abs(best))]
        # Bland: among tied rows the one whose basic variable has the smallest index
        r = int(ties[np.argmin(basis[ties])])
        counter.tick()
        _pivot(T, basis, r, c)


class FeasibleTableau:
    """Phase-1 result: a feasible basis over the columns (u, v, slack)."""

    def __init__(self, T, basis, n, counter, tol):
        self._T = T
        self._basis = basis
        self.n = n
        self._counter = counter
        self._tol = tol

    @property
    def pivots(self):
        return self._counter.count

    def point(self):
        return self._extract(self._T, self._basis)

    def _extract(self, T, basis):
        z = np.zeros(T.shape[1] - 1)
        z[basis] = T[:-1, -1]
        return z[:self.n] - z[self.n:2 * self.n]

    def minimize(self, c) -> LPResult:
        """Minimize ``c.x`` starting from the stored feasible basis."""
        T = self._T.copy()
        basis = self._basis.copy()
        n = self.n
        cost = np.zeros(T.shape[1])
        cost[:n] = c
        cost[n:2 * n] = -np.asarray(c, dtype=float)
        # express the objective in terms of the non-basic variables
        T[-1] = cost - cost[basis] @ T[:-1]
        start = self._counter.count
        status = _run(T, basis, T.shape[1] - 1, self._counter, self._tol)
        pivots = self._counter.count - start
        if status == "unbounded":
            return LPResult("unbounded", pivots=pivots)
        x = self._extract(T, basis)
        return LPResult("optimal", float(np.dot(c, x)), x, pivots)

    def maximize(self, c) -> LPResult:
        res = self.minimize(-np.asarray(c, dtype=float))
        if res.optimal:
            return LPResult("optimal", -res.value, res.x, res.pivots)
        return res


def phase_one(A_ub, b_ub, tol=TOLERANCE, max_pivots=MAX_PIVOTS):
    """Find a feasible basis of ``A x <= b`` or return ``None`` if there is none."""
    A = np.atleast_2d(np.asarray(A_ub, dtype=float))
    b = np.asarray(b_ub, dtype=float).ravel()
    rows, n = A.shape
    neg = b < 0
    k = int(neg.sum())
    width = 2 * n + rows + k
    T = np.zeros((rows + 1, width + 1))
    sgn = np.where(neg, -1.0, 1.0)[:, None]
    T[:rows, :n] = sgn * A
    T[:rows, n:2 * n] = -sgn * A
    T[:rows, 2 * n:2 * n + rows] = np.diag(sgn.ravel())
    T[:rows, -1] = np.abs(b)
    basis = np.arange(2 * n, 2 * n + rows)
    art_rows = np.flatnonzero(neg)
    art_cols = 2 * n + rows + np.arange(k)
    T[art_rows, art_cols] = 1.0
    basis[art_rows] = art_cols
    counter = _Counter(max_pivots)

    if k:
        # phase-1 objective: sum of artificials, reduced against the basis
        T[-1, :] = -T[art_rows].sum(axis=0)
        T[-1, art_cols] = 0.0
        _run(T, basis, width, counter, tol)
        if -T[-1, -1] > tol * max(1.0, np.abs(b).max()):
            return None
        # drive artificials that stay basic at level zero out of the basis
        keep = np.ones(rows, dtype=bool)
        for r in np.flatnonzero(basis >= 2 * n + rows):
            cols = np.flatnonzero(np.abs(T[r, :2 * n + rows]) > tol)
            if cols.size:
                counter.tick()
                _pivot(T, basis, r, int(cols[0]))
            else:
                keep[r] = False  # redundant row
        T = np.vstack([T[:rows][keep], T[-1:]])
        basis = basis[keep]
        T = np.delete(T, art_cols, axis=1)
    T[-1, :] = 0.0
    return FeasibleTableau(T, basis, n, counter, tol)


def simplex_solve(c, A_ub, b_ub, maximize=False, tol=TOLERANCE,
                  max_pivots=MAX_PIVOTS) -> LPResult:
    """Optimize ``c.x`` over ``A_ub x <= b_ub`` with x free.

    Raises :class:`~oils.errors.IterationLimit` after ``max_pivots`` pivots.
    """
    tab = phase_one(A_ub, b_ub, tol, max_pivots)
    if tab is None:
        return LPResult("infeasible")
    return tab.maximize(c) if maximize else tab.minimize(c)
