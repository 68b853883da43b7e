"""Exact predicates for the 2n vertices of a regular prism or antiprism.

Coordinates (never built here, only used by the test oracle): top vertex
``k`` is ``(cos 2k pi/n, sin 2k pi/n, 1)``, bottom vertex ``k`` is
``(cos (2k+d) pi/n, sin (2k+d) pi/n, 0)`` with ``d`` the antiprism offset.
``orient(p, q, r, s)`` is the sign of ``det[q-p, r-p, s-p]``.

With the four points sorted by (layer, index), top first, the determinant
has a closed form:

* four points in one layer: coplanar, 0.
* three top ``a<b<c`` and one bottom: ``(z_B - z_T) * ccw(a, b, c) = -1``.
* one top and three bottom ``b<c<d``: ``-ccw(b, c, d) = -1``.
* top ``i<j`` and bottom ``k<l``: the determinant reduces to the cross
  product of the two chord vectors, ``4 sin((j-i)pi/n) sin((l-k)pi/n)
  sin((k+l+d-i-j)pi/n)``, whose sign is that of the last factor.

Any other argument order picks up the sign of the sorting permutation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CapacityError, DomainError
from .polygon import PolygonTriangulation
from .shapes import Kind, Layer, PointId, ShapeSpec

Tet = tuple[PointId, PointId, PointId, PointId]
Facet = tuple[PointId, PointId, PointId]

MAX_KERNEL_N = 16

DEGENERATE_TET = "degenerate-tet"
IMPROPER_PAIR = "improper-pair"
UNMATCHED_FACET = "unmatched-facet"
BOUNDARY_LEAK = "boundary-leak"
FACE_NOT_TILED = "face-not-tiled"
DISCONNECTED = "disconnected"


def sin_sign(m: int, n: int) -> int:
    """Sign of ``sin(m pi / n)``."""
    r = m % (2 * n)
    if r == 0 or r == n:
        return 0
    return 1 if r < n else -1


def _perm_sign(seq) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def orient(shape: ShapeSpec, p: PointId, q: PointId, r: PointId, s: PointId) -> int:
    pts = (p, q, r, s)
    if len(set(pts)) < 4:
        raise DomainError(f"orient needs four distinct points, got {pts}")
    c = sorted(pts)
    tops = sum(1 for x in c if x.layer is Layer.TOP)
    if tops in (0, 4):
        return 0
    if tops == 2:
        val = sin_sign(c[2].index + c[3].index + shape.delta - c[0].index - c[1].index, shape.n)
    else:
        val = -1
    if val == 0:
        return 0
    return val * _perm_sign(pts)


def canonical_tet(points: Iterable[PointId]) -> Tet:
    return tuple(sorted(PointId(Layer(p[0]), p[1]) for p in points))


def classify_tet(t: Sequence[PointId]) -> tuple[int, int]:
    """``(number of top vertices, number of bottom vertices)``."""
    tops = sum(1 for p in t if p.layer is Layer.TOP)
    return tops, len(t) - tops


def candidate_tets(shape: ShapeSpec) -> list[Tet]:
    """All non-degenerate tetrahedra on the vertices, canonically sorted."""
    if shape.n > MAX_KERNEL_N:
        raise CapacityError(f"n={shape.n} exceeds {MAX_KERNEL_N}")
    return [t for t in combinations(shape.points(), 4) if orient(shape, *t) != 0]


def _off_plane_point(shape: ShapeSpec, plane: Sequence[PointId]) -> PointId:
    for q in shape.points():
        if q not in plane and orient(shape, plane[0], plane[1], plane[2], q) != 0:
            return q
    raise AssertionError("every vertex is coplanar")


def circuit_of(shape: ShapeSpec, z: Sequence[PointId]):
    """Signed circuit ``(Z+, Z-)`` supported on ``z``, or None.

    Only sizes 4 and 5 occur: no three vertices are collinear.  Signs come
    from Cramer's rule, ``lambda_i = (-1)^i det(z without z_i)``; a coplanar
    4-set borrows an off-plane vertex to turn its planar determinants into
    3D orientations.  The overall sign of a circuit is arbitrary.
    """
    z = tuple(z)
    if len(z) == 4:
        if orient(shape, *z) != 0:
            return None
        q = _off_plane_point(shape, z)
        lam = [(-1) ** i * orient(shape, *(z[:i] + z[i + 1:]), q) for i in range(4)]
    elif len(z) == 5:
        lam = [(-1) ** i * orient(shape, *(z[:i] + z[i + 1:])) for i in range(5)]
        if 0 in lam:
            return None
    else:
        raise DomainError("circuits here have 4 or 5 elements")
    if 0 in lam:
        raise AssertionError(f"unexpected collinearity in {z}")
    plus = frozenset(p for p, l in zip(z, lam) if l > 0)
    minus = frozenset(p for p, l in zip(z, lam) if l < 0)
    return plus, minus


def circuits(shape: ShapeSpec, points: Iterable[PointId]) -> list[tuple[frozenset, frozenset]]:
    pts = sorted(set(points))
    out = []
    for size in (4, 5):
        for z in combinations(pts, size):
            c = circuit_of(shape, z)
            if c is not None:
                out.append(c)
    return out


@lru_cache(maxsize=None)
def _proper_pair(shape: ShapeSpec, s: Tet, t: Tet) -> bool:
    if s == t:
        return True
    ss, ts = set(s), set(t)
    for plus, minus in circuits(shape, ss | ts):
        if (plus <= ss and minus <= ts) or (minus <= ss and plus <= ts):
            return False
    return True


def proper_pair(shape: ShapeSpec, s: Sequence[PointId], t: Sequence[PointId]) -> bool:
    """Whether ``conv(s)`` and ``conv(t)`` meet in a common face (possibly empty)."""
    s, t = canonical_tet(s), canonical_tet(t)
    if t < s:
        s, t = t, s
    return _proper_pair(shape, s, t)


def facets(t: Tet) -> list[Facet]:
    return [tuple(p for p in t if p != x) for x in t]


def boundary_faces(shape: ShapeSpec) -> list[tuple[str, frozenset[PointId]]]:
    """The 2-faces of the solid as vertex sets."""
    n = shape.n
    faces = [
        ("top", frozenset(PointId(Layer.TOP, k) for k in range(n))),
        ("bottom", frozenset(PointId(Layer.BOTTOM, k) for k in range(n))),
    ]
    top = lambda k: PointId(Layer.TOP, k % n)
    bot = lambda k: PointId(Layer.BOTTOM, k % n)
    for a in range(n):
        if shape.kind is Kind.PRISM:
            faces.append((f"side{a}", frozenset({top(a), top(a + 1), bot(a), bot(a + 1)})))
        else:
            faces.append((f"side{a}t", frozenset({top(a), top(a + 1), bot(a)})))
            faces.append((f"side{a}b", frozenset({bot(a), bot(a + 1), top(a + 1)})))
    return faces


def boundary_face_of(shape: ShapeSpec, f: Facet):
    """Name of the boundary 2-face containing triangle ``f``, or None."""
    layers = {p.layer for p in f}
    if len(layers) == 1:
        return "top" if Layer.TOP in layers else "bottom"
    n = shape.n
    tops = sorted(p.index for p in f if p.layer is Layer.TOP)
    bots = sorted(p.index for p in f if p.layer is Layer.BOTTOM)
    for a in range(n):
        b = (a + 1) % n
        if shape.kind is Kind.PRISM:
            if set(tops) <= {a, b} and set(bots) <= {a, b}:
                return f"side{a}"
        else:
            if set(tops) == {a, b} and bots == [a]:
                return f"side{a}t"
            if set(bots) == {a, b} and tops == [b]:
                return f"side{a}b"
    return None


@dataclass(frozen=True)
class Triangulation3D:
    """A list of tetrahedra claimed to triangulate the solid.

    Kept as a sorted tuple rather than a set so that duplicated tetrahedra
    survive into validation.
    """

    shape: ShapeSpec
    tets: tuple[Tet, ...]

    def __post_init__(self):
        object.__setattr__(self, "tets", tuple(sorted(canonical_tet(t) for t in self.tets)))

    def __len__(self):
        return len(self.tets)

    @property
    def size(self) -> int:
        return len(self.tets)

    def type_counts(self) -> Counter:
        return Counter(classify_tet(t) for t in self.tets)


@dataclass
class ValidityReport:
    failures: list[tuple[str, object]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def codes(self) -> set[str]:
        return {code for code, _ in self.failures}

    def __bool__(self):
        return self.ok


def _face_tiled(shape: ShapeSpec, name: str, vertices: frozenset, tris: list[Facet]) -> bool:
    n = shape.n
    if name in ("top", "bottom"):
        try:
            PolygonTriangulation.from_triangles(n, [tuple(p.index for p in t) for t in tris])
        except DomainError:
            return False
        return True
    if shape.kind is Kind.ANTIPRISM:
        return len(tris) == 1 and set(tris[0]) == vertices
    if len(tris) != 2:
        return False
    # the two triangles of a quad split share exactly one diagonal
    common = set(tris[0]) & set(tris[1])
    if len(common) != 2 or set(tris[0]) | set(tris[1]) != vertices:
        return False
    return {p.layer for p in common} == {Layer.TOP, Layer.BOTTOM}


def validate_triangulation(tri: Triangulation3D) -> ValidityReport:
    """Certify that the tetrahedra triangulate the solid.

    Checks non-degeneracy, pairwise proper intersection, facet matching (one
    tet on boundary facets, two on interior ones), exact tiling of every
    boundary 2-face and connectivity.  Together these force the union to be
    the whole solid without any volume arithmetic.
    """
    shape = tri.shape
    n = shape.n
    report = ValidityReport()
    fail = report.failures.append
    if not tri.tets:
        fail((FACE_NOT_TILED, "empty"))
        return report

    good = []
    for t in tri.tets:
        ok = len(set(t)) == 4 and all(0 <= p.index < n for p in t)
        if not ok or orient(shape, *t) == 0:
            fail((DEGENERATE_TET, t))
        else:
            good.append(t)

    for t, c in Counter(good).items():
        if c > 1:
            fail((IMPROPER_PAIR, (t, t)))
    uniq = sorted(set(good))
    for s, t in combinations(uniq, 2):
        if not proper_pair(shape, s, t):
            fail((IMPROPER_PAIR, (s, t)))

    incident: dict[Facet, list[Tet]] = {}
    for t in good:
        for f in facets(t):
            incident.setdefault(f, []).append(t)
    on_face: dict[str, list[Facet]] = {}
    for f, ts in sorted(incident.items()):
        face = boundary_face_of(shape, f)
        if face is None:
            if len(ts) == 1:
                fail((UNMATCHED_FACET, f))
            elif len(ts) > 2:
                fail((BOUNDARY_LEAK, f))
        else:
            on_face.setdefault(face, []).append(f)
            if len(ts) > 1:
                fail((BOUNDARY_LEAK, f))

    for name, vertices in boundary_faces(shape):
        if not _face_tiled(shape, name, vertices, on_face.get(name, [])):
            fail((FACE_NOT_TILED, name))

    if uniq:
        adj: dict[Tet, set[Tet]] = {t: set() for t in uniq}
        for ts in incident.values():
            for s, t in combinations(set(ts), 2):
                adj[s].add(t)
                adj[t].add(s)
        seen, stack = {uniq[0]}, [uniq[0]]
        while stack:
            for s in adj[stack.pop()]:
                if s not in seen:
                    seen.add(s)
                    stack.append(s)
        if len(seen) != len(uniq):
            fail((DISCONNECTED, len(uniq) - len(seen)))
    return report
