"""Two copies of x = b with disjoint right-hand sides.

Plain elimination and the LP hull both prove the solution set empty. The
least squares method still returns a box, since it encloses the least
squares solutions rather than the exact ones.
"""

from oils import IntervalArray, OilsSystem, hull, solve_ge, solve_lsq

A = IntervalArray([[1.0], [1.0]])
b = IntervalArray([0.9, 2.9], [1.1, 3.1])
sys = OilsSystem(A, b)

ge = solve_ge(sys)
print("elimination:", ge.kind, "-", ge.reason)
lp = hull(sys)
print("LP hull:    ", lp.kind, "-", lp.reason)
ls = solve_lsq(sys)
print("lsq:        ", ls.kind, ls.box)

# preconditioning enlarges the solution set; emptiness after it still means
# the original set is empty
pre = solve_ge(sys, use_preconditioner=True)
print("elimination with preconditioning:", pre.kind)
