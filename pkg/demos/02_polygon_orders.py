"""
Polygon triangulations, dual trees and region edge sets
=======================================================

The top face of a triangulated prism is a triangulated n-gon.  Numbering
its triangles outward from a root edge gives each later triangle a parent
and a separating diagonal; the region beyond that diagonal is what the
telescoped bound sums over.
"""

from prismtri.polygon import (
    PolygonTriangulation,
    admissible_order,
    admissible_orders,
    catalan,
    enumerate_polygon_triangulations,
    region_edge_sets,
)

for n in range(3, 10):
    print(n, len(enumerate_polygon_triangulations(n)), catalan(n - 2))

pt = PolygonTriangulation.fan(6, 0)
ao = admissible_order(pt, (2, 3))
print("order    ", ao.order)
print("parents  ", ao.parent)
print("diagonals", ao.separating)
for i, X in enumerate(region_edge_sets(pt, ao).X):
    print(f"X[{i}] = {sorted(X)}")

# a fan rooted in the middle has two branches, hence several orders
print(sum(1 for _ in admissible_orders(pt, (2, 3))), "tree-compatible orders")
