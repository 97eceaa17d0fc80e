"""A short tour: one small system, every method, and how wide each answer is.

Run with ``python demos/tour.py``.
"""

import numpy as np

from oils import GeneratorConfig, gen_seeded_solvable, op_membership, ratio, run_method
from oils.methods import METHODS

cfg = GeneratorConfig(m=5, n=3, maxradius_exponent=-3, midpoint_range=25.0, seed=42)
sys = gen_seeded_solvable(cfg)
x_star = np.array(sys.meta["x_star"])
print(f"5 x 3 system with radii up to 1e-3, built around x* = {np.round(x_star, 4)}")
print("x* satisfies the Oettli-Prager test:", op_membership(sys, None, x_star, strict=True))

outcomes = {name: run_method(name, sys) for name in METHODS}
hull_box = outcomes["hull"].box
print(f"\n{'method':10} {'kind':10} {'ratio to hull':>14} {'time (ms)':>10}")
for name, out in outcomes.items():
    r = f"{ratio(out.box, hull_box):.4f}" if out.ok else "-"
    print(f"{name:10} {out.kind:10} {r:>14} {out.stats['time_ns'] / 1e6:>10.2f}")

print("\nhull bounds:")
for lo, hi in zip(hull_box.lo, hull_box.hi):
    print(f"  [{lo: .8f}, {hi: .8f}]")
