"""Link bounds, the two expressions for alpha, the monotone-g lemma and the closed-form maxima.

A triangulation of the solid has ``n-2`` tetrahedra of type (3,1), ``n-2`` of
type (1,3), and some number of type (2,2).  The (2,2) count is bounded by
``alpha``, a sum of heights of the bottom apexes ``x_i`` of the top triangles.
Apex assignments are sequences aligned with an :class:`AdmissibleOrder`:
``apex[i]`` is the bottom vertex joined to ``ao.order[i]``.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import StructuralError
from .kernel import Triangulation3D, classify_tet
from .polygon import (
    AdmissibleOrder,
    Edge,
    PolygonTriangulation,
    RegionEdgeSets,
    Triangle,
    _make_order,
    admissible_order,
    enumerate_polygon_triangulations,
    is_boundary,
    polygon_edges,
    region_edge_sets,
)
from .shapes import (
    Chord,
    Kind,
    Layer,
    ShapeSpec,
    Side,
    height_table,
    interior_side,
    profile_sum,
    side_containing,
)


def formula_max(shape: ShapeSpec) -> int:
    """Largest triangulation size: ceil((n^2+6n-16)/4) or floor((n^2+8n-16)/4)."""
    n = shape.n
    if shape.kind is Kind.PRISM:
        return -(-(n * n + 6 * n - 16) // 4)
    return (n * n + 8 * n - 16) // 4


def formula_alpha(shape: ShapeSpec) -> int:
    """Largest possible number of (2,2) tetrahedra."""
    return profile_sum(shape)


def _chord(e: Edge, n: int) -> Chord:
    return Chord.of(Layer.TOP, e[0], e[1], n)


def _third(t: Triangle, e: Edge) -> int:
    (v,) = set(t) - set(e)
    return v


def edge_side(pt: PolygonTriangulation, ao: AdmissibleOrder, e: Edge) -> Side:
    """Positive side for edge ``e``: the interior for polygon edges,
    the greater-index triangle for diagonals."""
    c = _chord(e, pt.n)
    if is_boundary(e, pt.n):
        return interior_side(c, pt.n)
    ts = pt.triangles_on(e)
    later = max(ts, key=ao.order.index)
    return side_containing(c, _third(later, e))


@dataclass
class Structure:
    top: PolygonTriangulation
    bottom: PolygonTriangulation
    apex: dict[Triangle, int]
    bottom_apex: dict[Triangle, int]
    links: dict[Edge, frozenset[Edge]]

    def apex_for(self, ao: AdmissibleOrder) -> list[int]:
        return [self.apex[t] for t in ao.order]

    @property
    def link_total(self) -> int:
        return sum(len(v) for v in self.links.values())


def extract_structure(tri: Triangulation3D) -> Structure:
    """Read off top/bottom triangulations, apexes and links of a triangulation."""
    n = tri.shape.n
    apex: dict[Triangle, int] = {}
    bottom_apex: dict[Triangle, int] = {}
    links: dict[Edge, set[Edge]] = defaultdict(set)
    for t in tri.tets:
        kind = classify_tet(t)
        tops = tuple(sorted(p.index for p in t if p.layer is Layer.TOP))
        bots = tuple(sorted(p.index for p in t if p.layer is Layer.BOTTOM))
        if kind == (3, 1):
            if tops in apex:
                raise StructuralError(f"top triangle {tops} has two apexes")
            apex[tops] = bots[0]
        elif kind == (1, 3):
            if bots in bottom_apex:
                raise StructuralError(f"bottom triangle {bots} has two apexes")
            bottom_apex[bots] = tops[0]
        elif kind == (2, 2):
            if bots in links[tops]:
                raise StructuralError(f"repeated (2,2) tet {t}")
            links[tops].add(bots)
        else:
            raise StructuralError(f"tet {t} lies in one layer")
    try:
        top = PolygonTriangulation.from_triangles(n, apex)
        bottom = PolygonTriangulation.from_triangles(n, bottom_apex)
    except Exception as exc:
        raise StructuralError(f"layer triangles do not triangulate the polygon: {exc}") from exc
    for e in links:
        if e not in top.edges:
            raise StructuralError(f"(2,2) tets use top segment {e}, not an edge of the top triangulation")
    return Structure(top, bottom, apex, bottom_apex, {e: frozenset(v) for e, v in links.items()})


def _eq1_terms(shape: ShapeSpec, pt: PolygonTriangulation, ao: AdmissibleOrder):
    # (height table, index of the plus apex, index of the minus apex or None)
    pos = {t: i for i, t in enumerate(ao.order)}
    terms = []
    for e in sorted(pt.edges):
        table = height_table(shape, _chord(e, pt.n), edge_side(pt, ao, e))
        ts = sorted(pos[t] for t in pt.triangles_on(e))
        if len(ts) == 1:
            terms.append((table, ts[0], None))
        else:
            terms.append((table, ts[1], ts[0]))
    return terms


def alpha_eq1(shape: ShapeSpec, pt: PolygonTriangulation, ao: AdmissibleOrder, apex: Sequence[int]) -> int:
    """Edge-by-edge sum: exterior edges at their triangle's apex, interior
    edges as the height gap between the apexes of their two triangles."""
    total = 0
    for table, k, i in _eq1_terms(shape, pt, ao):
        total += table[apex[k]] if i is None else table[apex[k]] - table[apex[i]]
    return total


@dataclass
class BoundReport:
    alpha_eq1: int
    alpha_eq2: int
    per_term: dict[int, int]
    formula_alpha: int
    total_bound: int

    @property
    def identity_holds(self) -> bool:
        return self.alpha_eq1 == self.alpha_eq2

    @property
    def later_terms_nonpositive(self) -> bool:
        return all(v <= 0 for i, v in self.per_term.items() if i >= 1)


def _eq2_terms(shape: ShapeSpec, pt: PolygonTriangulation, ao: AdmissibleOrder, X: RegionEdgeSets):
    terms = []
    for i, edges in enumerate(X.X):
        tables = [height_table(shape, _chord(e, pt.n), edge_side(pt, ao, e)) for e in sorted(edges)]
        terms.append((tables, i, ao.parent.get(i)))
    return terms


def alpha_eq2(
    shape: ShapeSpec,
    pt: PolygonTriangulation,
    ao: AdmissibleOrder,
    apex: Sequence[int],
    X: RegionEdgeSets | None = None,
) -> BoundReport:
    """Telescoped form: the root region at ``x_1`` plus, for each later
    triangle, ``g_i(x_i) - g_i(x_parent)`` over its region edge set."""
    if X is None:
        X = region_edge_sets(pt, ao)
    per_term = {}
    for tables, i, p in _eq2_terms(shape, pt, ao, X):
        v = sum(tb[apex[i]] for tb in tables)
        if p is not None:
            v -= sum(tb[apex[p]] for tb in tables)
        per_term[i] = v
    fa = formula_alpha(shape)
    return BoundReport(
        alpha_eq1=alpha_eq1(shape, pt, ao, apex),
        alpha_eq2=sum(per_term.values()),
        per_term=per_term,
        formula_alpha=fa,
        total_bound=fa + 2 * shape.n - 4,
    )


class AlphaEvaluator:
    """Both alpha expressions for one (triangulation, order), reused over many apex assignments."""

    def __init__(self, shape: ShapeSpec, pt: PolygonTriangulation, ao: AdmissibleOrder):
        self.eq1 = _eq1_terms(shape, pt, ao)
        self.eq2 = _eq2_terms(shape, pt, ao, region_edge_sets(pt, ao))

    def alpha_eq1(self, apex: Sequence[int]) -> int:
        return sum(t[apex[k]] - (t[apex[i]] if i is not None else 0) for t, k, i in self.eq1)

    def alpha_eq2(self, apex: Sequence[int]) -> int:
        total = 0
        for tables, i, p in self.eq2:
            for tb in tables:
                total += tb[apex[i]] - (tb[apex[p]] if p is not None else 0)
        return total


def region_chords(n: int, chord: Chord, side: Side) -> list[tuple[Chord, Side]]:
    """Polygon edges on ``side`` of ``chord``, plus the chord itself, with their positive sides."""
    a, b = chord.a, chord.b
    if Side(side) is Side.ARC_AB:
        ks = range(a, b)
    else:
        ks = [k % n for k in range(b, a + n)]
    out = [(chord, Side(side))]
    for k in ks:
        e = Chord.of(chord.layer, k, k + 1, n)
        out.append((e, interior_side(e, n)))
    return out


def g_sum(shape: ShapeSpec, X: Iterable[tuple[Chord, Side]], v: int) -> int:
    return sum(height_table(shape, c, s)[v] for c, s in X)


def monotone_violations(shape: ShapeSpec, chord: Chord, side: Side) -> list[tuple[int, int]]:
    """Boundary steps ``v -> w`` going strictly up with respect to ``chord``
    along which ``g`` increases."""
    n = shape.n
    X = region_chords(n, chord, side)
    g = [g_sum(shape, X, v) for v in range(n)]
    lv = height_table(shape, chord, side)
    bad = []
    for v in range(n):
        for w in ((v + 1) % n, (v - 1) % n):
            if lv[w] > lv[v] and g[w] > g[v]:
                bad.append((v, w))
    return bad


def check_monotone_lemma(shape: ShapeSpec, chord: Chord, side: Side) -> bool:
    return not monotone_violations(shape, chord, side)


def _path_order(edges: Iterable[Edge], start: int) -> list[int] | None:
    adj: dict[int, list[int]] = defaultdict(list)
    edges = list(edges)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    if start not in adj:
        return None
    walk, prev = [start], None
    while True:
        nxt = [w for w in adj[walk[-1]] if w != prev]
        if not nxt:
            break
        if len(nxt) > 1 or nxt[0] in walk:
            return None
        prev = walk[-1]
        walk.append(nxt[0])
    return walk if len(walk) == len(edges) + 1 else None


def link_bound_failures(tri: Triangulation3D) -> list[tuple[Edge, str]]:
    """Top edges whose link is not a strictly descending path within its height budget."""
    shape = tri.shape
    n = shape.n
    st = extract_structure(tri)
    ao = admissible_order(st.top, (0, 1))
    pos = {t: i for i, t in enumerate(ao.order)}
    out = []
    for e in sorted(st.top.edges):
        link = st.links.get(e, frozenset())
        lv = height_table(shape, _chord(e, n), edge_side(st.top, ao, e))
        ts = sorted(st.top.triangles_on(e), key=pos.get)
        if len(ts) == 1:
            start = st.apex[ts[0]]
            budget = lv[start] - min(lv)
            ends = {v for v in range(n) if lv[v] == min(lv)}
        else:
            start = st.apex[ts[1]]
            end = st.apex[ts[0]]
            budget = lv[start] - lv[end]
            ends = {end}
        if len(link) > budget:
            out.append((e, f"link size {len(link)} exceeds {budget}"))
            continue
        if not link:
            if start not in ends:
                out.append((e, "empty link but apexes differ"))
            continue
        walk = _path_order(link, start)
        if walk is None:
            out.append((e, "link is not a path starting at the apex"))
        elif walk[-1] not in ends:
            out.append((e, f"link path ends at {walk[-1]}"))
        elif any(lv[w] >= lv[v] for v, w in zip(walk, walk[1:])):
            out.append((e, "link path is not strictly descending"))
    return out


def link_bounds_check(tri: Triangulation3D) -> bool:
    return not link_bound_failures(tri)


def bound_report(tri: Triangulation3D, root_edge: Edge = (0, 1)) -> BoundReport:
    """Both alpha forms evaluated on the structure of a genuine triangulation."""
    st = extract_structure(tri)
    ao = admissible_order(st.top, root_edge)
    return alpha_eq2(tri.shape, st.top, ao, st.apex_for(ao))


def apex_constraints(shape: ShapeSpec, pt: PolygonTriangulation, ao: AdmissibleOrder):
    """``(i, parent, table)`` for each later triangle: a genuine triangulation
    has ``table[apex[i]] >= table[apex[parent]]``."""
    out = []
    for i, p in sorted(ao.parent.items()):
        e = ao.separating[i]
        out.append((i, p, height_table(shape, _chord(e, pt.n), edge_side(pt, ao, e))))
    return out


def is_admissible_assignment(shape, pt, ao, apex: Sequence[int]) -> bool:
    return all(tb[apex[i]] >= tb[apex[p]] for i, p, tb in apex_constraints(shape, pt, ao))


def max_alpha(shape: ShapeSpec, pt: PolygonTriangulation, ao: AdmissibleOrder, admissible: bool = True) -> int:
    """Exact maximum of alpha over apex assignments, by dynamic programming on the dual tree.

    Every term of the edge-by-edge sum touches one triangle or a parent/child
    pair, so the maximum decomposes over subtrees.
    """
    n = shape.n
    own = [[0] * n for _ in ao.order]
    link: dict[int, tuple[int, tuple[int, ...]]] = {}
    for table, k, i in _eq1_terms(shape, pt, ao):
        if i is None:
            for v in range(n):
                own[k][v] += table[v]
        else:
            link[k] = (i, table)
    best = [row[:] for row in own]
    for c in range(len(ao.order) - 1, 0, -1):
        p, table = link[c]
        for v in range(n):
            cands = [best[c][w] + table[w] - table[v] for w in range(n)
                     if not admissible or table[w] >= table[v]]
            best[p][v] += max(cands)
    return max(best[0])


@dataclass
class SweepResult:
    instances: int = 0
    failures: int = 0
    max_alpha: int | None = None
    max_alpha_admissible: int | None = None
    positive_terms: int = 0

    def merge(self, other: SweepResult) -> None:
        self.instances += other.instances
        self.failures += other.failures
        self.positive_terms += other.positive_terms
        for name in ("max_alpha", "max_alpha_admissible"):
            a, b = getattr(self, name), getattr(other, name)
            if b is not None and (a is None or b > a):
                setattr(self, name, b)


def identity_sweep_exhaustive(shape: ShapeSpec, pt: PolygonTriangulation, ao: AdmissibleOrder) -> SweepResult:
    """Compare both alpha forms on all ``n**(n-2)`` apex assignments (vectorised)."""
    n, m = shape.n, len(ao.order)
    X = np.indices((n,) * m, dtype=np.int8).reshape(m, -1)
    eq1 = np.zeros(X.shape[1], dtype=np.int64)
    for table, k, i in _eq1_terms(shape, pt, ao):
        tb = np.asarray(table)
        eq1 += tb[X[k]]
        if i is not None:
            eq1 -= tb[X[i]]
    eq2 = np.zeros_like(eq1)
    positive = np.zeros(X.shape[1], dtype=bool)
    for tables, i, p in _eq2_terms(shape, pt, ao, region_edge_sets(pt, ao)):
        term = np.zeros_like(eq1)
        for table in tables:
            tb = np.asarray(table)
            term += tb[X[i]]
            if p is not None:
                term -= tb[X[p]]
        eq2 += term
        if p is not None:
            positive |= term > 0
    ok = np.ones(X.shape[1], dtype=bool)
    for i, p, table in apex_constraints(shape, pt, ao):
        tb = np.asarray(table)
        ok &= tb[X[i]] >= tb[X[p]]
    res = SweepResult(instances=int(X.shape[1]), failures=int(np.count_nonzero(eq1 != eq2)))
    res.positive_terms = int(np.count_nonzero(positive & ok))
    res.max_alpha = int(eq1.max())
    res.max_alpha_admissible = int(eq1[ok].max()) if ok.any() else None
    return res


def random_admissible_order(pt: PolygonTriangulation, rng) -> AdmissibleOrder:
    """A random root edge and a random tree-compatible order from it."""
    root = rng.choice(polygon_edges(pt.n))
    base = admissible_order(pt, root)
    kids: dict[int, list[int]] = defaultdict(list)
    for c, p in base.parent.items():
        kids[p].append(c)
    seq, avail = [0], list(kids[0])
    while avail:
        j = avail.pop(rng.randrange(len(avail)))
        seq.append(j)
        avail.extend(kids[j])
    parent_tri = {base.order[c]: (base.order[p], base.separating[c]) for c, p in base.parent.items()}
    return _make_order(base.root_edge, [base.order[j] for j in seq], parent_tri)


def identity_sweep_sampled(shape: ShapeSpec, samples: int, seed: int = 0) -> SweepResult:
    """Random (triangulation, order, assignment) instances, reproducible from ``seed``."""
    rng = random.Random(seed)
    pts = enumerate_polygon_triangulations(shape.n)
    res = SweepResult()
    for _ in range(samples):
        pt = rng.choice(pts)
        ao = random_admissible_order(pt, rng)
        apex = [rng.randrange(shape.n) for _ in ao.order]
        rep = alpha_eq2(shape, pt, ao, apex)
        res.instances += 1
        res.failures += not rep.identity_holds
        res.max_alpha = rep.alpha_eq1 if res.max_alpha is None else max(res.max_alpha, rep.alpha_eq1)
        if is_admissible_assignment(shape, pt, ao, apex):
            res.positive_terms += not rep.later_terms_nonpositive
            cur = res.max_alpha_admissible
            res.max_alpha_admissible = rep.alpha_eq1 if cur is None else max(cur, rep.alpha_eq1)
    return res
