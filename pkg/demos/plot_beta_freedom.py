"""
One metric, many cross caps
===========================

A metric of a cross cap is realized once for every choice of the
characteristic function b.  The realizations are different maps, e.g. their
a[1,2] coefficient moves with b, yet their invariant tables are identical.
"""

from fractions import Fraction

from crosscap import CrossCapGerm, metric_of_germ, realize, verify_realization
from crosscap.invariants import canonical_germ, invariants_of_germ, formal_isometry_check

germ = CrossCapGerm(
    6,
    {(2, 0): Fraction(1, 2), (1, 1): 1, (0, 2): 2, (1, 2): Fraction(-1, 3), (0, 3): 1},
    {3: Fraction(2, 3)},
)
metric = metric_of_germ(germ)

tables = []
for b3 in (0, 1, Fraction(-5, 2)):
    jet = realize(metric, {3: b3, 4: 1}, 6)
    canon = canonical_germ(jet)
    tables.append(invariants_of_germ(canon))
    print(f"b3 = {b3}: verified {bool(verify_realization(jet, metric))}, a12 = {canon.coefficient(1, 2)}")

print("tables agree:", all(formal_isometry_check(tables[0], t) for t in tables[1:]))
