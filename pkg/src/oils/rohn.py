"""Rohn's enclosure for overdetermined interval systems.

For any real n x m matrix R and vectors x0, d > 0 with ``G d + g < d``, where

    G = |I - R Ac| + |R| AΔ
    g = |R (Ac x0 - bc)| + |R| (AΔ |x0| + bΔ),

the solution set lies in ``[x0 - d, x0 + d]``. G and g are evaluated with
upward rounding and the hypothesis is checked on the rounded values, so the
enclosure is rigorous.
"""

from dataclasses import dataclass

import numpy as np

from . import rounding as rd
from .errors import NoConvergence, OilsError, ShapeError
from .interval import IntervalArray, point_matmul
from .linalg import pseudo_solution_matrix
from .system import OilsSystem, SolveOutcome, as_system

__all__ = [
    "RohnCertificate", "rohn_terms", "find_d", "rohn_basic", "rohn_iterative",
    "default_epsilon", "X0_RULES",
]


@dataclass(frozen=True)
class RohnCertificate:
    R: np.ndarray
    x0: np.ndarray
    G: np.ndarray
    g: np.ndarray
    d: np.ndarray
    f: np.ndarray

    def box(self) -> IntervalArray:
        return IntervalArray(rd.sub_down(self.x0, self.d), rd.add_up(self.x0, self.d))


def default_epsilon(sys: OilsSystem) -> float:
    """10**(e - 2) where 10**e bounds the radii of the system.

    ``e`` is taken from ``sys.meta["maxradius_exponent"]`` when the system
    was generated, otherwise from the largest radius present.
    """
    e = sys.meta.get("maxradius_exponent")
    if e is None:
        r = max(float(np.max(sys.A.rad, initial=0.0)), float(np.max(sys.b.rad, initial=0.0)))
        if r == 0:
            return 1e-12
        e = int(np.ceil(np.log10(r)))
    return 10.0 ** (e - 2)


def rohn_terms(sys: OilsSystem, R, x0):
    """Upper bounds for G and g."""
    R = np.asarray(R, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    n = sys.n
    Ac, Ad = sys.A.mid, sys.A.rad
    bc, bd = sys.b.mid, sys.b.rad
    absR = np.abs(R)

    plo, phi = rd.dot_bounds(R, Ac)
    I = np.eye(n)
    E = np.maximum(np.abs(rd.sub_down(I, phi)), np.abs(rd.sub_up(I, plo)))
    G = rd.add_up(E, rd.matmul_up(absR, Ad))

    rlo, rhi = rd.dot_bounds(Ac, x0)
    resid = IntervalArray(rd.sub_down(rlo, bc), rd.sub_up(rhi, bc), check=False)
    first = point_matmul(R, resid).mag
    inner = rd.add_up(rd.matmul_up(Ad, np.abs(x0)), bd)
    g = rd.add_up(first, rd.matmul_up(absR, inner))
    return G, g


def find_d(G, g, f, max_steps=1000):
    """Iterate ``d <- G d + g + f`` from zero until ``G d + g < d`` holds.

    All arithmetic rounds upward, so acceptance is rigorous. Raises
    :class:`NoConvergence` after ``max_steps`` iterations; the iteration is
    only guaranteed to stop when the spectral radius of G is below 1.
    """
    G = np.asarray(G, dtype=float)
    g = np.asarray(g, dtype=float)
    f = np.broadcast_to(np.asarray(f, dtype=float), g.shape)
    if np.any(f <= 0):
        raise ValueError("f must be positive")
    d = np.zeros_like(g)
    for step in range(1, max_steps + 1):
        d = rd.add_up(rd.add_up(rd.matmul_up(G, d), g), f)
        if not np.all(np.isfinite(d)):
            break
        if np.all(rd.add_up(rd.matmul_up(G, d), g) < d):
            return d, step
    raise NoConvergence(f"no d with Gd + g < d after {max_steps} steps")


def _certificate(sys, R, x0, f, max_steps):
    G, g = rohn_terms(sys, R, x0)
    d, steps = find_d(G, g, f, max_steps)
    return RohnCertificate(R=R, x0=np.asarray(x0, dtype=float), G=G, g=g, d=d,
                           f=np.broadcast_to(np.asarray(f, dtype=float), g.shape).copy()), steps


def rohn_basic(A, b=None, f=None, max_steps=1000) -> SolveOutcome:
    """Basic Rohn enclosure with ``R = (Ac^T Ac)^{-1} Ac^T`` and ``x0 = R bc``.

    On success ``stats["certificate"]`` holds the :class:`RohnCertificate`.
    """
    sys = as_system(A, b)
    if f is None:
        f = default_epsilon(sys)
    try:
        R = pseudo_solution_matrix(sys.A.mid)
        x0 = R @ sys.b.mid
        cert, steps = _certificate(sys, R, x0, f, max_steps)
    except OilsError as exc:
        return SolveOutcome.failure(exc)
    return SolveOutcome.enclosure(cert.box(), iterations=steps, certificate=cert)


def _draw_instance(A: IntervalArray, rng, sampling):
    if sampling == "uniform":
        return rng.uniform(A.lo, A.hi)
    if sampling == "vertex":
        return np.where(rng.random(A.shape) < 0.5, A.lo, A.hi)
    raise ValueError(f"unknown sampling {sampling!r}")


X0_RULES = ("instance", "midpoint", "basic")


def rohn_iterative(A, b=None, f=None, iterations=10, rng_seed=0, x0_rule="instance",
                   sampling="uniform", max_steps=1000, checkpoints=()) -> SolveOutcome:
    """Intersect the basic enclosure with enclosures built from random instances.

    Each iteration draws ``A' in A`` coefficientwise (uniformly, or among the
    endpoints with ``sampling="vertex"``), sets ``R = pinv(A')`` and computes
    a full Rohn enclosure, which is intersected with the current one.
    Iterations whose R or d cannot be found are skipped.

    ``x0_rule`` picks the centre of each new enclosure: ``"instance"`` uses
    ``R mid(b)``, the least-squares solution of the drawn instance;
    ``"midpoint"`` the midpoint of the current enclosure; ``"basic"`` the
    centre of the basic enclosure.

    An empty intersection proves the solution set empty, but it is reported
    as a failure: only the hull and plain elimination claim unsolvability.
    ``stats["checkpoints"]`` maps each iteration count in ``checkpoints`` to
    the enclosure after that many iterations.
    """
    if x0_rule not in X0_RULES:
        raise ValueError(f"unknown x0_rule {x0_rule!r}")
    sys = as_system(A, b)
    if f is None:
        f = default_epsilon(sys)
    basic = rohn_basic(sys, f=f, max_steps=max_steps)
    if not basic.ok:
        return basic
    X = basic.box
    x0_basic = basic.stats["certificate"].x0
    rng = np.random.default_rng(rng_seed)
    wanted = set(checkpoints)
    saved = {0: X} if 0 in wanted else {}
    accepted = 0
    for k in range(1, iterations + 1):
        Ai = _draw_instance(sys.A, rng, sampling)
        try:
            R = pseudo_solution_matrix(Ai)
            if x0_rule == "instance":
                x0 = R @ sys.b.mid
            else:
                x0 = X.mid if x0_rule == "midpoint" else x0_basic
            cert, _ = _certificate(sys, R, x0, f, max_steps)
        except OilsError:
            cert = None
        if cert is not None:
            new = X.intersect(cert.box())
            if new is None:
                return SolveOutcome.failure("empty intersection: the solution set is empty",
                                            iterations=k, accepted=accepted,
                                            checkpoints=saved)
            X = new
            accepted += 1
        if k in wanted:
            saved[k] = X
    return SolveOutcome.enclosure(X, iterations=iterations, accepted=accepted,
                                  checkpoints=saved)
