"""
Maximum triangulations beyond the reach of enumeration
======================================================

Cut the solid by a plane through a long top diagonal and a parallel bottom
diagonal, then triangulate each half by placing: an apex on the wall, the
whole other layer, then the rest.  The result is checked by the same
validator the enumerator uses and saved as a JSON document.
"""

import tempfile
from pathlib import Path

from prismtri.bounds import formula_max, link_bounds_check
from prismtri.cli import verify_document
from prismtri.construct import construct_maximal, split_halves
from prismtri.documents import TriangulationDocument
from prismtri.kernel import validate_triangulation
from prismtri.shapes import ShapeSpec

for kind in ("prism", "antiprism"):
    for n in range(3, 13):
        s = ShapeSpec(kind, n)
        tri = construct_maximal(s)
        print(f"{s!s:13} size {tri.size:3d} formula {formula_max(s):3d} "
              f"valid {validate_triangulation(tri).ok} links ok {link_bounds_check(tri)}")

h1, h2 = split_halves(ShapeSpec.prism(10))
print("prism-10 wall", h1.wall, "halves of", len(h1.vertices), "and", len(h2.vertices), "vertices")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "prism-10.json"
    TriangulationDocument(construct_maximal(ShapeSpec.prism(10)), generator="demo").save(path)
    code, report = verify_document(TriangulationDocument.load(path))
    print("verify exit code", code, report["results"]["type_counts"])
