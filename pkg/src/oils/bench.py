"""Benchmark populations of random systems and aggregate ratios and timings.

A suite lists sizes, radius exponents, a population size and the methods to
compare. For every cell (method, size, exponent) the same seeded systems are
solved by every method and by the reference method; width ratios are
averaged over the systems where both succeeded.
"""

import csv
import io
from dataclasses import asdict, dataclass, field
from statistics import median

import numpy as np

from .errors import DegenerateReference
from .generate import GeneratorConfig, gen_seeded_solvable, gen_system, ratio
from .methods import METHODS, config_for, run_method

__all__ = ["BenchSuite", "BenchCell", "BenchReport", "run_bench", "system_seed"]

KINDS = ("enclosure", "unsolvable", "unbounded", "failure")


@dataclass(frozen=True)
class BenchSuite:
    sizes: tuple = ((5, 3),)
    exponents: tuple = (-3,)
    population: int = 10
    methods: tuple = ("gs", "rohn", "lsq")
    reference: str = "hull"
    midpoint_range: float = 25.0
    seed: int = 0
    rohn_iterations: int = 10
    seeded: bool = True
    max_iterations: int = 20

    def __post_init__(self):
        for name in (*self.methods, self.reference):
            if name not in METHODS:
                raise ValueError(f"unknown method {name!r}")
        if self.population < 1:
            raise ValueError("population must be positive")
        object.__setattr__(self, "sizes", tuple(tuple(s) for s in self.sizes))
        object.__setattr__(self, "exponents", tuple(self.exponents))
        object.__setattr__(self, "methods", tuple(self.methods))

    @classmethod
    def from_dict(cls, data):
        return cls(**data)


@dataclass
class BenchCell:
    method: str
    m: int
    n: int
    exponent: int
    population: int
    seed: int
    reference: str
    counts: dict = field(default_factory=lambda: dict.fromkeys(KINDS, 0))
    ratios: list = field(default_factory=list)
    times_ns: list = field(default_factory=list)

    @property
    def mean_ratio(self):  # NaN when there was no mutual success
        return float(np.mean(self.ratios)) if self.ratios else float("nan")

    @property
    def mean_time_ns(self):
        return float(np.mean(self.times_ns)) if self.times_ns else float("nan")

    @property
    def median_time_ns(self):
        return float(median(self.times_ns)) if self.times_ns else float("nan")

    def summary(self):
        return {
            "method": self.method, "m": self.m, "n": self.n, "exponent": self.exponent,
            "population": self.population, "seed": self.seed, "reference": self.reference,
            "mean_ratio": self.mean_ratio, "ratio_count": len(self.ratios),
            "mean_time_ns": self.mean_time_ns, "median_time_ns": self.median_time_ns,
            **{f"n_{k}": v for k, v in self.counts.items()},
        }


@dataclass
class BenchReport:
    suite: BenchSuite
    cells: list

    def cell(self, method, m, n, exponent):
        for c in self.cells:
            if (c.method, c.m, c.n, c.exponent) == (method, m, n, exponent):
                return c
        raise KeyError((method, m, n, exponent))

    def rows(self):
        return [c.summary() for c in self.cells]

    def to_json(self):
        # JSON has no NaN; missing statistics become null
        rows = [{k: (None if isinstance(v, float) and np.isnan(v) else v) for k, v in r.items()}
                for r in self.rows()]
        return {"suite": asdict(self.suite), "cells": rows}

    def to_csv(self):
        return rows_to_csv(self.rows())

    def to_markdown(self):
        return rows_to_markdown(self.rows())


def rows_to_csv(rows):
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def rows_to_markdown(rows):
    header = ("method", "m x n", "radius", "mean ratio", "median time [ms]",
              "enclosure", "unsolvable", "unbounded", "failure")
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]

    def num(v, scale, digits):
        return "n/a" if v is None or np.isnan(v) else f"{v / scale:.{digits}f}"

    for r in rows:
        cells = (r["method"], f"{r['m']} x {r['n']}", f"1e{r['exponent']}",
                 num(r["mean_ratio"], 1, 4), num(r["median_time_ns"], 1e6, 3),
                 r["n_enclosure"], r["n_unsolvable"], r["n_unbounded"], r["n_failure"])
        lines.append("| " + " | ".join(str(c) for c in cells) + " |")
    return "\n".join(lines) + "\n"


def system_seed(seed, m, n, exponent, index):
    """Independent 64-bit seed for one system of a benchmark cell."""
    ss = np.random.SeedSequence(seed, spawn_key=(m, n, exponent + 10_000, index))
    return int(ss.generate_state(1, np.uint64)[0])


def run_bench(suite: BenchSuite, progress=None) -> BenchReport:
    """Solve every population in the suite; per-system failures are counted.

    Wall time covers the solve call only. ``progress``, if given, is called
    with ``(m, n, exponent, index)`` before each system.
    """
    cells = []
    for (m, n) in suite.sizes:
        for e in suite.exponents:
            row = {name: BenchCell(name, m, n, e, suite.population, suite.seed, suite.reference)
                   for name in suite.methods}
            for i in range(suite.population):
                if progress:
                    progress(m, n, e, i)
                cfg = GeneratorConfig(m, n, e, suite.midpoint_range,
                                      system_seed(suite.seed, m, n, e, i))
                sys = gen_seeded_solvable(cfg) if suite.seeded else gen_system(cfg)
                icfg = config_for(sys, suite.max_iterations)
                outs = {}
                for name in dict.fromkeys((*suite.methods, suite.reference)):
                    outs[name] = run_method(name, sys, cfg=icfg, iterations=suite.rohn_iterations,
                                            seed=cfg.seed)
                ref = outs[suite.reference]
                for name in suite.methods:
                    out, cell = outs[name], row[name]
                    cell.counts[out.kind] += 1
                    cell.times_ns.append(out.stats["time_ns"])
                    if out.ok and ref.ok:
                        try:
                            cell.ratios.append(ratio(out.box, ref.box))
                        except DegenerateReference:
                            pass
            cells.extend(row.values())
    return BenchReport(suite, cells)
