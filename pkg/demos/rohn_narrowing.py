"""Iterative Rohn refinement on random systems.

Each iteration draws an instance A' from the interval matrix, builds the
pseudoinverse of A' and intersects the resulting enclosure with the current
one. The printed numbers are mean width ratios against the basic enclosure.
"""

import numpy as np

from oils import GeneratorConfig, gen_system, ratio, rohn_basic, rohn_iterative

marks = (10, 100)
for m, n, population in ((5, 3, 30), (35, 23, 5)):
    ratios = {k: [] for k in marks}
    empty = 0
    for seed in range(population):
        sys = gen_system(GeneratorConfig(m, n, -3, 25.0, seed))
        basic = rohn_basic(sys)
        if not basic.ok:
            continue
        out = rohn_iterative(sys, iterations=max(marks), rng_seed=seed, checkpoints=marks)
        empty += not out.ok
        for k, box in out.stats["checkpoints"].items():
            ratios[k].append(ratio(box, basic.box))
    summary = ", ".join(f"{k} it. {np.mean(v):.3f}" for k, v in ratios.items())
    print(f"{m} x {n}: {summary} ({empty} runs ended in an empty intersection)")
