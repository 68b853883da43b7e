"""
Every triangulation of small prisms and antiprisms
==================================================

The search grows a triangulation facet by facet, always closing the
lowest open interior facet, so each triangulation is reached once.  Every
leaf is re-checked by the validator.
"""

from prismtri.bounds import formula_max
from prismtri.enumeration import enumerate_all
from prismtri.kernel import validate_triangulation
from prismtri.shapes import ShapeSpec

for shape in [ShapeSpec.prism(n) for n in (3, 4, 5)] + [ShapeSpec.antiprism(n) for n in (3, 4, 5)]:
    res = enumerate_all(shape, orbits=shape.n <= 4)
    print(f"{shape!s:12} {res.count:5d} triangulations  sizes {res.size_histogram}"
          f"  max {res.max_size} (formula {formula_max(shape)})"
          + (f"  {res.orbit_count} up to symmetry" if res.orbit_count else ""))

# the cube: 74 triangulations, the two smallest use the 5-tet split
cube = enumerate_all(ShapeSpec.prism(4))
w = cube.max_witness
print("a maximal cube triangulation:", [" ".join(map(str, t)) for t in w.tets])
print("types", dict(w.type_counts()), "valid", validate_triangulation(w).ok)
