"""Name-based access to every enclosure method, as used by the CLI and benchmarks."""

import time

from .gauss import solve_ge
from .hull import hull
from .iterative import solve_iterative
from .lsq import solve_lsq
from .rohn import rohn_basic, rohn_iterative
from .system import IterationConfig, SolveOutcome, as_system

__all__ = ["METHODS", "run_method", "config_for"]

METHODS = ("ge", "gepre", "jacobi", "gs", "rohn", "rohn-iter", "lsq", "hull")


def config_for(sys, max_iterations=20) -> IterationConfig:
    """Stopping parameter 10**(e - 2) from the system's radius exponent."""
    e = sys.meta.get("maxradius_exponent")
    if e is None:
        return IterationConfig(max_iterations=max_iterations)
    return IterationConfig.for_radius_exponent(e, max_iterations)


def run_method(name, A, b=None, *, cfg=None, x0=None, iterations=10, seed=0,
               presolve=None) -> SolveOutcome:
    """Run method ``name`` and record the wall time of the call in ``stats["time_ns"]``.

    ``x0`` is the starting box for ``jacobi``/``gs``; ``iterations`` and
    ``seed`` drive ``rohn-iter``; ``presolve`` restricts ``hull``.
    """
    sys = as_system(A, b)
    cfg = cfg or config_for(sys)
    calls = {
        "ge": lambda: solve_ge(sys),
        "gepre": lambda: solve_ge(sys, use_preconditioner=True),
        "jacobi": lambda: solve_iterative(sys, variant="jacobi", X0=x0, cfg=cfg),
        "gs": lambda: solve_iterative(sys, variant="gauss_seidel", X0=x0, cfg=cfg),
        "rohn": lambda: rohn_basic(sys, f=cfg.epsilon),
        "rohn-iter": lambda: rohn_iterative(sys, f=cfg.epsilon, iterations=iterations,
                                            rng_seed=seed),
        "lsq": lambda: solve_lsq(sys, cfg=cfg),
        "hull": lambda: hull(sys, presolve=presolve),
    }
    if name not in calls:
        raise ValueError(f"unknown method {name!r}; choose from {', '.join(METHODS)}")
    start = time.perf_counter_ns()
    out = calls[name]()
    elapsed = time.perf_counter_ns() - start
    return out.with_stats(time_ns=elapsed)
