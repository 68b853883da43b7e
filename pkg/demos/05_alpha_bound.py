"""
Counting (2,2) tetrahedra by heights
====================================

Fix a triangulated top polygon and an apex for every top triangle.  The
number of (2,2) tetrahedra is bounded by an edge-by-edge sum of heights;
regrouping that sum along the dual tree turns it into a first term equal to
the boundary height profile plus differences of g over shrinking regions.
Here we evaluate both forms over every apex assignment and find the exact
maximum with a dynamic program.
"""

from itertools import product

from prismtri.bounds import (
    AlphaEvaluator,
    bound_report,
    check_monotone_lemma,
    formula_alpha,
    identity_sweep_exhaustive,
    max_alpha,
)
from prismtri.construct import construct_maximal
from prismtri.polygon import admissible_order, enumerate_polygon_triangulations
from prismtri.shapes import Side, ShapeSpec, top_chord

shape = ShapeSpec.prism(6)
pt = enumerate_polygon_triangulations(6)[2]
ao = admissible_order(pt, (0, 1))
ev = AlphaEvaluator(shape, pt, ao)
vals = [ev.alpha_eq1(a) for a in product(range(6), repeat=4)]
assert vals == [ev.alpha_eq2(a) for a in product(range(6), repeat=4)]
print("both forms agree on", len(vals), "assignments")
print("max over all assignments        ", max_alpha(shape, pt, ao, admissible=False))
print("max over realisable assignments ", max_alpha(shape, pt, ao), "=", formula_alpha(shape))

res = identity_sweep_exhaustive(ShapeSpec.antiprism(7), enumerate_polygon_triangulations(7)[0],
                                admissible_order(enumerate_polygon_triangulations(7)[0], (0, 1)))
print("antiprism-7 sweep:", res)

# g never increases along a step that climbs the chord's functional
print("monotone on prism-10:", all(check_monotone_lemma(ShapeSpec.prism(10), top_chord(0, b, 10), side)
                                   for b in range(2, 9) for side in Side))

rep = bound_report(construct_maximal(shape))
print("on a maximal prism-6 triangulation:", rep)
