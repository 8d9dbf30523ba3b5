"""
Invariants of a cross cap that is not normal
============================================

The germ (x, xy + y^3/6, (x^2 + y^2)/2) carries a nonzero characteristic
function b(y) = y^3/6.  Its metric can be realized again with b = 0, and the
z-coefficients of that normal realization are the invariants A[i, j].
"""

from crosscap import CrossCapGerm, metric_of_germ, realize, invariants
from crosscap.invariants import canonical_germ, closed_form_invariants

# Taylor values: z(2,0) = z(0,2) = 1 and b(3) = 1, so b(y) = y^3/6
germ = CrossCapGerm(10, {(2, 0): 1, (0, 2): 1}, {3: 1})
metric = metric_of_germ(germ)
print("E =", metric.E)
print("F =", metric.F)
print("G =", metric.G)

###############################################################################
# Realizing with b = 0 produces a different map with the same metric.

jet = realize(metric, None, 10)
print("X =", jet.X.truncate(5))
print("Y =", jet.Y.truncate(5))
print("Z =", jet.Z.truncate(5))

###############################################################################
# The invariant table, compared with the explicit low-order formulas.

table = invariants(metric, 6)
closed = closed_form_invariants(germ)
for (i, j), value in table.items():
    mark = ""
    if (i, j) in closed:
        mark = "  (closed form agrees)" if closed[i, j] == value else "  MISMATCH"
    print(f"A[{i},{j}] = {value}{mark}")

###############################################################################
# Passing to the coordinates of the normal realization gives a germ with
# b = 0 whose z-coefficients are exactly the table above.

normal = canonical_germ(jet)
print("normal form b:", normal.b)
print("agrees:", all(normal.coefficient(*ij) == v for ij, v in table.items()))
