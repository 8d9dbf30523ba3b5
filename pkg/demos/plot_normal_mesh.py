"""
Surface of the normal realization
=================================

Sample the normal realization of the example metric on a square and write an
OBJ mesh.  Its self-intersection is a segment of a straight line, while the
original germ's self-intersection is curved.  Pass an output directory as the
first argument (default: the current one).
"""

import sys
from pathlib import Path

import numpy as np

from crosscap import CrossCapGerm, metric_of_germ, realize, germ_to_mapjet
from crosscap.documents import mesh_obj
from crosscap.invariants import canonical_germ

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(".")
germ = CrossCapGerm(10, {(2, 0): 1, (0, 2): 1}, {3: 1})
normal = realize(metric_of_germ(germ), None, 10)
original = germ_to_mapjet(germ)

for name, jet in (("original", original), ("normal", normal)):
    path = out / f"crosscap_{name}.obj"
    path.write_text(mesh_obj(jet, 0.5, 64))
    print("wrote", path)

###############################################################################
# Double points of (x, xy + b(y), z) sit over x = 0, where the image is
# (0, b(y), z(0, y)).  With b = 0 that is a piece of the z-axis; the original
# germ bends it into the curve (0, y^3/6, y^2/2).


y = np.linspace(-0.5, 0.5, 5)
for name, g in (("original", germ), ("normal", canonical_germ(normal))):
    b = g.b_series().evaluate(y) if g.b else np.zeros_like(y)
    z = g.z_series().evaluate(np.zeros_like(y), y)
    print(name)
    for row in np.column_stack([np.zeros_like(y), b, z]):
        print("   ", np.array2string(row, precision=4, suppress_small=True))
