"""Shared helpers: exact rational oracles and small random systems."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from oils import GeneratorConfig, gen_seeded_solvable
from oils.interval import IntervalArray
from oils.system import OilsSystem

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def F(x):
    return Fraction(float(x))


def exact_dot(row, x):
    return sum((F(a) * F(b) for a, b in zip(row, x)), Fraction(0))


def encloses(lo, hi, value):
    """Exact check ``lo <= value <= hi`` with value a Fraction."""
    lo_ok = lo == -np.inf or F(lo) <= value
    hi_ok = hi == np.inf or value <= F(hi)
    return lo_ok and hi_ok


def seeded(m, n, e=-3, seed=0, rng_range=25.0):
    cfg = GeneratorConfig(m, n, e, rng_range, seed)
    sys = gen_seeded_solvable(cfg)
    return sys, np.array(sys.meta["x_star"])


def sample_instance(sys, rng):
    A = rng.uniform(sys.A.lo, sys.A.hi)
    b = rng.uniform(sys.b.lo, sys.b.hi)
    return A, b


def box(lo, hi=None):
    return IntervalArray(np.asarray(lo, dtype=float),
                         None if hi is None else np.asarray(hi, dtype=float))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def disjoint_family(a=1.0, shift=0.0, sep=2.0):
    """Two copies of the equation ``a x = b_i`` whose right-hand sides are disjoint.

    With the defaults this is ``([1,1];[1,1]) x = ([0.9,1.1];[2.9,3.1])``.
    """
    A = IntervalArray(np.array([[a], [a]]))
    lo = np.array([0.9, 0.9 + sep]) + shift
    b = IntervalArray(lo, lo + 0.2)
    return A, b


def dyadic_system(rng, m, n):
    """Endpoints on a 1/64 grid, so midpoints and radii are exact in floating point."""
    lo = rng.integers(-320, 320, (m, n)) / 64
    A = IntervalArray(lo, lo + rng.integers(0, 2, (m, n)) / 64)
    blo = rng.integers(-320, 320, m) / 64
    b = IntervalArray(blo, blo + rng.integers(0, 2, m) / 64)
    return OilsSystem(A, b)


def certificate_holds(sys, cert):
    """Recheck a Rohn certificate in exact rational arithmetic.

    G and g are recomputed from R, x0 and the system; the stored floats must
    bound them from above, d must satisfy G d + g < d, and the reported box
    must contain [x0 - d, x0 + d].
    """
    n, m = sys.n, sys.m
    R = [[F(v) for v in row] for row in cert.R]
    x0 = [F(v) for v in cert.x0]
    Ac = [[F(v) for v in row] for row in sys.A.mid]
    Ad = [[F(v) for v in row] for row in sys.A.rad]
    bc = [F(v) for v in sys.b.mid]
    bd = [F(v) for v in sys.b.rad]
    RA = [[sum(R[i][k] * Ac[k][j] for k in range(m)) for j in range(n)] for i in range(n)]
    G = [[abs(int(i == j) - RA[i][j]) + sum(abs(R[i][k]) * Ad[k][j] for k in range(m))
          for j in range(n)] for i in range(n)]
    r = [sum(Ac[k][j] * x0[j] for j in range(n)) - bc[k] for k in range(m)]
    inner = [sum(Ad[k][j] * abs(x0[j]) for j in range(n)) + bd[k] for k in range(m)]
    g = [abs(sum(R[i][k] * r[k] for k in range(m)))
         + sum(abs(R[i][k]) * inner[k] for k in range(m)) for i in range(n)]
    d = [F(v) for v in cert.d]
    box = cert.box()
    for i in range(n):
        if any(F(cert.G[i, j]) < G[i][j] for j in range(n)) or F(cert.g[i]) < g[i]:
            return False
        if not sum(G[i][j] * d[j] for j in range(n)) + g[i] < d[i]:
            return False
        if F(box.lo[i]) > x0[i] - d[i] or F(box.hi[i]) < x0[i] + d[i]:
            return False
    return True


ACCEPTANCE = []


def report(number, ok, detail):
    """Print and remember one PASS/FAIL line for an acceptance criterion."""
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    print(line)
    ACCEPTANCE.append(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
