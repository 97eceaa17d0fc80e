"""Seeded random interval systems and the width ratio metric.

Randomness comes from numpy's PCG64. The seed feeds a ``SeedSequence`` that
is split into independent child streams, one per block: matrix midpoints,
matrix radii, right-hand side midpoints, right-hand side radii and the seeded
solution. Changing one block's draws never shifts another block's.
"""

from dataclasses import asdict, dataclass

import numpy as np

from . import rounding as rd
from .errors import DegenerateReference, ShapeError
from .interval import IntervalArray, from_mid_rad, to_interval_array
from .system import OilsSystem

__all__ = ["GeneratorConfig", "gen_system", "gen_seeded_solvable", "draw_solution", "ratio"]

_STREAMS = ("A_mid", "A_rad", "b_mid", "b_rad", "x_star")


@dataclass(frozen=True)
class GeneratorConfig:
    m: int
    n: int
    maxradius_exponent: int = -3
    midpoint_range: float = 25.0
    seed: int = 0

    def __post_init__(self):
        if not (self.m >= self.n >= 1):
            raise ValueError(f"need m >= n >= 1, got m={self.m}, n={self.n}")
        if not self.midpoint_range > 0:
            raise ValueError("midpoint_range must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")

    @property
    def max_radius(self):
        return 10.0 ** self.maxradius_exponent

    def streams(self):
        children = np.random.SeedSequence(self.seed).spawn(len(_STREAMS))
        return {name: np.random.Generator(np.random.PCG64(s))
                for name, s in zip(_STREAMS, children)}

    def meta(self, **extra):
        return {"seed": self.seed, "config": asdict(self),
                "maxradius_exponent": self.maxradius_exponent, **extra}


def _matrix(cfg, rngs):
    R = cfg.midpoint_range
    Ac = rngs["A_mid"].uniform(-R, R, (cfg.m, cfg.n))
    Ad = rngs["A_rad"].uniform(0.0, cfg.max_radius, (cfg.m, cfg.n))
    return from_mid_rad(Ac, Ad)


def gen_system(cfg: GeneratorConfig) -> OilsSystem:
    """Midpoints uniform in ``[-range, range]``, radii uniform in ``[0, 10**e]``.

    Every coefficient of A and b gets its own midpoint and radius. Bounds are
    rounded outward from midpoint and radius, so the stored interval contains
    ``<mid, rad>`` exactly.
    """
    rngs = cfg.streams()
    A = _matrix(cfg, rngs)
    R = cfg.midpoint_range
    bc = rngs["b_mid"].uniform(-R, R, cfg.m)
    bd = rngs["b_rad"].uniform(0.0, cfg.max_radius, cfg.m)
    return OilsSystem(A, from_mid_rad(bc, bd), cfg.meta())


def draw_solution(cfg: GeneratorConfig) -> np.ndarray:
    """The seeded solution used when none is given: uniform in ``[-range, range]``."""
    R = cfg.midpoint_range
    return cfg.streams()["x_star"].uniform(-R, R, cfg.n)


def gen_seeded_solvable(cfg: GeneratorConfig, x_star=None) -> OilsSystem:
    """A random system built around a known solution ``x_star``.

    A is drawn as in :func:`gen_system`. The right-hand side is centred on
    ``mid(A) x_star``, enclosed rigorously, and widened by the drawn radii,
    so ``x_star`` solves the instance ``(mid(A), mid(A) x_star)`` exactly.
    With zero radii and exactly representable products b is a point vector.
    """
    rngs = cfg.streams()
    A = _matrix(cfg, rngs)
    x_star = draw_solution(cfg) if x_star is None else np.asarray(x_star, dtype=float)
    if x_star.shape != (cfg.n,):
        raise ShapeError(f"x_star has shape {x_star.shape}, expected ({cfg.n},)")
    # keep the b_mid stream aligned with gen_system although it is not used
    rngs["b_mid"].uniform(size=cfg.m)
    bd = rngs["b_rad"].uniform(0.0, cfg.max_radius, cfg.m)
    lo, hi = rd.exact_dot_bounds(A.mid, x_star)
    b = IntervalArray(rd.sub_down(lo, bd), rd.add_up(hi, bd))
    return OilsSystem(A, b, cfg.meta(x_star=x_star.tolist()))


def ratio(X, X_test) -> float:
    """Mean of the componentwise width quotients ``w(X_i) / w(X_test_i)``.

    Lower is better. Raises :class:`DegenerateReference` when some reference
    width is zero.
    """
    X, X_test = to_interval_array(X), to_interval_array(X_test)
    if X.shape != X_test.shape:
        raise ShapeError(f"shapes differ: {X.shape} vs {X_test.shape}")
    w_test = X_test.width
    if np.any(w_test == 0):
        raise DegenerateReference("reference enclosure has a zero-width component")
    return float(np.mean(X.width / w_test))
