"""
Exact orientation without coordinates
=====================================

Four vertices of the prism are coplanar exactly when they lie in one layer
or form two parallel chords.  Otherwise the sign of the orientation
determinant is the sign of a sine of a multiple of pi/n.  This script
compares the rule against float determinants and shows where floats alone
would need a threshold.
"""

from itertools import combinations

import numpy as np

from prismtri.kernel import candidate_tets, orient
from prismtri.shapes import Layer, ShapeSpec


def coords(shape, p):
    th = np.pi * shape.angle_units(p) / shape.n
    return np.array([np.cos(th), np.sin(th), 1.0 if p.layer is Layer.TOP else 0.0])


for shape in (ShapeSpec.prism(8), ShapeSpec.antiprism(8)):
    dets, signs = [], []
    for q in combinations(shape.points(), 4):
        P = np.array([coords(shape, p) for p in q])
        dets.append(np.linalg.det(P[1:] - P[0]))
        signs.append(orient(shape, *q))
    dets, signs = np.array(dets), np.array(signs)
    zero = signs == 0
    print(shape, f"{zero.sum()} coplanar quadruples of {len(signs)}")
    print("  largest |det| among coplanar:", np.abs(dets[zero]).max())
    print("  smallest |det| otherwise:    ", np.abs(dets[~zero]).min())
    print("  sign agreement off the zero set:", np.all(np.sign(dets[~zero]) == signs[~zero]))
    print("  candidate tetrahedra:", len(candidate_tets(shape)))
