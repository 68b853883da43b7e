"""Triangulations of a convex n-gon, rooted dual trees and region edge sets.

Vertices are ``0..n-1`` in counterclockwise order.  An edge is a sorted pair
``(a, b)``; a triangle is a sorted triple.  Order indices are 0-based:
``order[0]`` is the triangle on the root edge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator

from .errors import CapacityError, DomainError

Edge = tuple[int, int]
Triangle = tuple[int, int, int]

MAX_POLYGON_N = 16


def edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def polygon_edges(n: int) -> list[Edge]:
    return [edge(a, (a + 1) % n) for a in range(n)]


def is_boundary(e: Edge, n: int) -> bool:
    return (e[1] - e[0]) % n in (1, n - 1)


def crosses(e: Edge, f: Edge) -> bool:
    """Whether two chords of a convex polygon cross in their interiors."""
    a, b = e
    c, d = f
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


def triangle_edges(t: Triangle) -> tuple[Edge, Edge, Edge]:
    a, b, c = t
    return (a, b), (b, c), (a, c)


@dataclass(frozen=True)
class PolygonTriangulation:
    n: int
    diagonals: frozenset[Edge]

    def __post_init__(self):
        diagonals = frozenset(edge(*d) for d in self.diagonals)
        object.__setattr__(self, "diagonals", diagonals)
        if len(diagonals) != self.n - 3:
            raise DomainError(f"need {self.n - 3} diagonals, got {len(diagonals)}")
        for d in diagonals:
            if not (0 <= d[0] < d[1] < self.n) or is_boundary(d, self.n):
                raise DomainError(f"{d} is not a diagonal of the {self.n}-gon")
        for d, e in combinations(diagonals, 2):
            if crosses(d, e):
                raise DomainError(f"diagonals {d} and {e} cross")

    @classmethod
    def from_triangles(cls, n: int, triangles) -> PolygonTriangulation:
        tris = {tuple(sorted(t)) for t in triangles}
        if len(tris) != n - 2:
            raise DomainError(f"need {n - 2} triangles, got {len(tris)}")
        diags = {e for t in tris for e in triangle_edges(t) if not is_boundary(e, n)}
        pt = cls(n, frozenset(diags))
        if set(pt.triangles) != tris:
            raise DomainError("triangles do not form a triangulation")
        return pt

    @classmethod
    def fan(cls, n: int, apex: int = 0) -> PolygonTriangulation:
        return cls(n, frozenset(edge(apex, (apex + k) % n) for k in range(2, n - 1)))

    @cached_property
    def edges(self) -> frozenset[Edge]:
        return frozenset(polygon_edges(self.n)) | self.diagonals

    @cached_property
    def triangles(self) -> tuple[Triangle, ...]:
        # in a maximal outerplanar graph every 3-cycle is a face
        adj = {v: set() for v in range(self.n)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        tris = set()
        for a, b in self.edges:
            for c in adj[a] & adj[b]:
                tris.add(tuple(sorted((a, b, c))))
        return tuple(sorted(tris))

    def triangles_on(self, e: Edge) -> list[Triangle]:
        return [t for t in self.triangles if e in triangle_edges(t)]


def catalan(k: int) -> int:
    c = 1
    for i in range(k):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


def _triangulate(lo: int, hi: int) -> Iterator[list[Edge]]:
    # diagonals of the sub-polygon lo..hi, excluding its closing edge (lo, hi)
    if hi - lo < 2:
        yield []
        return
    for k in range(lo + 1, hi):
        for left in _triangulate(lo, k):
            for right in _triangulate(k, hi):
                extra = []
                if k - lo > 1:
                    extra.append((lo, k))
                if hi - k > 1:
                    extra.append((k, hi))
                yield left + right + extra


def iter_polygon_triangulations(n: int) -> Iterator[PolygonTriangulation]:
    if not 3 <= n <= MAX_POLYGON_N:
        raise CapacityError(f"polygon size {n} outside 3..{MAX_POLYGON_N}")
    for diags in _triangulate(0, n - 1):
        yield PolygonTriangulation(n, frozenset(diags))


def enumerate_polygon_triangulations(n: int) -> list[PolygonTriangulation]:
    """All Catalan(n-2) triangulations of the convex n-gon."""
    return list(iter_polygon_triangulations(n))


@dataclass(frozen=True)
class AdmissibleOrder:
    """Tree-compatible numbering of the triangles from a root edge.

    ``parent[i]`` is the index of the unique earlier triangle adjacent to
    triangle ``i`` (for ``i >= 1``), and ``separating[i]`` their common edge.
    """

    root_edge: Edge
    order: tuple[Triangle, ...]
    parent: dict[int, int]
    separating: dict[int, Edge]

    def index(self, t: Triangle) -> int:
        return self.order.index(t)


def dual_adjacency(pt: PolygonTriangulation) -> dict[Triangle, list[tuple[Triangle, Edge]]]:
    by_edge: dict[Edge, list[Triangle]] = {}
    for t in pt.triangles:
        for e in triangle_edges(t):
            by_edge.setdefault(e, []).append(t)
    adj: dict[Triangle, list[tuple[Triangle, Edge]]] = {t: [] for t in pt.triangles}
    for e, ts in by_edge.items():
        if len(ts) == 2:
            s, t = ts
            adj[s].append((t, e))
            adj[t].append((s, e))
    for t in adj:
        adj[t].sort()
    return adj


def _root_triangle(pt: PolygonTriangulation, root_edge: Edge) -> Triangle:
    root_edge = edge(*root_edge)
    if not (0 <= root_edge[0] < root_edge[1] < pt.n) or not is_boundary(root_edge, pt.n):
        raise DomainError(f"root edge {root_edge} is not a boundary edge of the {pt.n}-gon")
    (root,) = pt.triangles_on(root_edge)
    return root


def admissible_order(pt: PolygonTriangulation, root_edge: Edge) -> AdmissibleOrder:
    """Breadth-first order of the dual tree, children in lexicographic order."""
    root = _root_triangle(pt, root_edge)
    adj = dual_adjacency(pt)
    order = [root]
    parent_tri: dict[Triangle, tuple[Triangle, Edge]] = {}
    queue = deque([root])
    seen = {root}
    while queue:
        t = queue.popleft()
        for s, e in adj[t]:
            if s not in seen:
                seen.add(s)
                parent_tri[s] = (t, e)
                order.append(s)
                queue.append(s)
    return _make_order(edge(*root_edge), order, parent_tri)


def _make_order(root_edge, order, parent_tri) -> AdmissibleOrder:
    pos = {t: i for i, t in enumerate(order)}
    parent = {pos[s]: pos[t] for s, (t, _) in parent_tri.items()}
    separating = {pos[s]: e for s, (_, e) in parent_tri.items()}
    return AdmissibleOrder(root_edge, tuple(order), parent, separating)


def admissible_orders(pt: PolygonTriangulation, root_edge: Edge) -> Iterator[AdmissibleOrder]:
    """Every tree-compatible order (linear extension of the rooted dual tree)."""
    root = _root_triangle(pt, root_edge)
    adj = dual_adjacency(pt)
    parent_tri: dict[Triangle, tuple[Triangle, Edge]] = {}
    stack, seen = [root], {root}
    while stack:
        t = stack.pop()
        for s, e in adj[t]:
            if s not in seen:
                seen.add(s)
                parent_tri[s] = (t, e)
                stack.append(s)
    children = {t: [s for s, _ in adj[t] if parent_tri.get(s, (None,))[0] == t] for t in adj}
    root_edge = edge(*root_edge)

    def extend(prefix, available):
        if not available:
            yield _make_order(root_edge, prefix, parent_tri)
            return
        for t in sorted(available):
            yield from extend(prefix + [t], (available - {t}) | set(children[t]))

    yield from extend([root], frozenset(children[root]))


@dataclass(frozen=True)
class RegionEdgeSets:
    """``X[0]`` is every polygon edge; ``X[i]`` bounds the region beyond ``e_i``."""

    X: tuple[frozenset[Edge], ...]


def subtree(ao: AdmissibleOrder, i: int) -> set[int]:
    kids: dict[int, list[int]] = {}
    for c, p in ao.parent.items():
        kids.setdefault(p, []).append(c)
    out, stack = set(), [i]
    while stack:
        j = stack.pop()
        out.add(j)
        stack.extend(kids.get(j, ()))
    return out


def region_edge_sets(pt: PolygonTriangulation, ao: AdmissibleOrder) -> RegionEdgeSets:
    if set(ao.order) != set(pt.triangles) or len(ao.order) != len(pt.triangles):
        raise DomainError("order does not match the triangulation")
    for i, p in ao.parent.items():
        e = ao.separating[i]
        if not p < i or e not in triangle_edges(ao.order[i]) or e not in triangle_edges(ao.order[p]):
            raise DomainError(f"parent map inconsistent at {i}")
    X = [frozenset(polygon_edges(pt.n))]
    for i in range(1, len(ao.order)):
        region = subtree(ao, i)
        if min(region) < i:
            raise DomainError(f"triangle beyond e_{i} has index below {i}")
        edges = {ao.separating[i]}
        for j in region:
            edges.update(e for e in triangle_edges(ao.order[j]) if is_boundary(e, pt.n))
        X.append(frozenset(edges))
    return RegionEdgeSets(tuple(X))
