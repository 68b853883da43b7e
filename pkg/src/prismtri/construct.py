"""Explicit maximum-size triangulations from placing triangulations."""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import CapacityError, ConstructionError, DomainError
from .kernel import (
    Facet,
    Tet,
    Triangulation3D,
    canonical_tet,
    facets,
    orient,
    proper_pair,
    validate_triangulation,
)
from .shapes import B, PointId, ShapeSpec, T

log = logging.getLogger(__name__)

MAX_CONSTRUCT_N = 12


def placing_triangulation(shape: ShapeSpec, region: Sequence[PointId], order: Sequence[PointId]) -> set[Tet]:
    """Placing triangulation of the vertex set ``region`` in insertion ``order``.

    Each new point is coned to every current boundary facet it strictly sees.
    Points in the plane of a facet see it from neither side, which is what
    makes coplanar faces come out correctly.
    """
    order = list(order)
    if sorted(order) != sorted(set(region)) or len(order) != len(set(order)):
        raise DomainError("placing order must be a permutation of the region")
    if len(order) < 4 or orient(shape, *order[:4]) == 0:
        raise DomainError("the first four points of a placing order must be affinely independent")
    first = canonical_tet(order[:4])
    tets = {first}
    free: dict[Facet, int] = {}
    _toggle(shape, free, first)
    for p in order[4:]:
        seen = [f for f, side in free.items() if orient(shape, *f, p) == -side]
        if not seen:
            raise DomainError(f"{p} lies inside the current hull")
        for f in seen:
            t = canonical_tet(f + (p,))
            tets.add(t)
            _toggle(shape, free, t)
    return tets


def _toggle(shape, free: dict, t: Tet) -> None:
    for f in facets(t):
        (apex,) = set(t) - set(f)
        if f in free:
            del free[f]
        else:
            free[f] = orient(shape, *f, apex)


def hull_facet(shape: ShapeSpec, region: Sequence[PointId], f: Facet) -> bool:
    """Whether every region vertex lies weakly on one side of the plane of ``f``."""
    signs = {orient(shape, *f, q) for q in region if q not in f}
    return not ({1, -1} <= signs)


def validate_region_triangulation(shape: ShapeSpec, region: Sequence[PointId], tets) -> bool:
    """Triangulation check for an arbitrary vertex subset of the solid.

    Non-degenerate, pairwise proper, interior facets shared by exactly two
    tets and every other facet on a supporting plane of the subset's hull.
    """
    tets = [canonical_tet(t) for t in tets]
    if len(set(tets)) != len(tets) or not tets:
        return False
    if any(orient(shape, *t) == 0 for t in tets):
        return False
    if any(not set(t) <= set(region) for t in tets):
        return False
    for s, t in combinations(tets, 2):
        if not proper_pair(shape, s, t):
            return False
    count: dict[Facet, int] = {}
    for t in tets:
        for f in facets(t):
            count[f] = count.get(f, 0) + 1
    for f, c in count.items():
        if c > 2 or (c == 1 and not hull_facet(shape, region, f)):
            return False
    return True


@dataclass(frozen=True)
class HalfSolid:
    """Vertices of the solid on one closed side of a splitting plane."""

    wall: tuple[PointId, ...]
    vertices: tuple[PointId, ...]


def splitting_wall(shape: ShapeSpec, r: int = 0) -> tuple[PointId, ...] | None:
    """Wall through top chord ``{r, r + n//2}`` and the most nearly vertical
    parallel bottom chord; None when the chord is a polygon edge (n = 3)."""
    n, h = shape.n, shape.n // 2
    if h < 2:
        return None
    a, b = r % n, (r + h) % n
    best = None
    for k, l in combinations(range(n), 2):
        if (k + l + shape.delta - a - b) % n:
            continue
        # parallel chords: compare signed distances from the centre along the
        # top chord's normal; the bottom midpoint faces the same way or opposite
        same_way = (k + l + shape.delta - a - b) % (2 * n) == 0
        top_off = math.cos(math.pi * (b - a) / n)
        bot_off = math.cos(math.pi * (l - k) / n) * (1 if same_way else -1)
        score = abs(top_off - bot_off)
        if best is None or score < best[0]:
            best = (score, k, l)
    _, k, l = best
    return (T(a), T(b), B(k), B(l))


def split_halves(shape: ShapeSpec, r: int = 0) -> tuple[HalfSolid, HalfSolid] | None:
    wall = splitting_wall(shape, r)
    if wall is None:
        return None
    plane = wall[:3]
    sides: dict[int, list[PointId]] = {1: [], -1: []}
    for p in shape.points():
        s = 0 if p in plane else orient(shape, *plane, p)
        if s >= 0:
            sides[1].append(p)
        if s <= 0:
            sides[-1].append(p)
    halves = tuple(HalfSolid(wall, tuple(sides[s])) for s in (1, -1))
    if any(len(h.vertices) - len(wall) < 1 for h in halves):
        return None
    return halves


def _alternating(start: int, n: int, members) -> list[int]:
    out = []
    for d in range(n):
        for k in (start + d, start - d):
            k %= n
            if k in members and k not in out:
                out.append(k)
    return out


def _cyclic(start: int, n: int, members, step: int = 1) -> list[int]:
    return [k % n for k in range(start, start + step * n, step) if k % n in members]


def template_orders(shape: ShapeSpec, vertices: Sequence[PointId], apexes: Sequence[PointId]) -> list[list[PointId]]:
    """Ranked placing orders: an apex on one layer, the whole other layer, then the rest.

    Coning one layer's polygon to a single apex makes every apex of the
    other layer's triangles the same vertex; the remaining points are then
    swept outward from the apex (alternating) or around the circle.
    """
    n = shape.n
    orders = []
    for apex in apexes:
        other = [p.index for p in vertices if p.layer is not apex.layer]
        same = [p.index for p in vertices if p.layer is apex.layer and p != apex]
        mk_other = lambda k: PointId(apex.layer.opposite, k)
        mk_same = lambda k: PointId(apex.layer, k)
        near = min(other, key=lambda k: ((2 * k - 2 * apex.index) % (2 * n), k))
        for other_seq in (_cyclic(near, n, other), _cyclic(near, n, other, -1)):
            for same_seq in (_alternating(apex.index, n, same), _cyclic(apex.index, n, same),
                             _cyclic(apex.index, n, same, -1)):
                order = [apex] + [mk_other(k) for k in other_seq] + [mk_same(k) for k in same_seq]
                if order not in orders:
                    orders.append(order)
    return orders


def _try_order(shape, region, order):
    try:
        return placing_triangulation(shape, region, order)
    except DomainError:
        return None


def candidate_constructions(shape: ShapeSpec, seed: int = 0, restarts: int = 200):
    """Yield ``(label, tets)`` in rank order: split templates, whole-solid
    templates, then seeded random whole-solid orders."""
    n = shape.n
    pts = shape.points()
    for r in range(n):
        halves = split_halves(shape, r)
        if halves is None:
            break
        h1, h2 = halves
        apexes = [p for p in h1.wall]
        for apex in apexes:
            for o1 in template_orders(shape, h1.vertices, [apex]):
                t1 = _try_order(shape, h1.vertices, o1)
                if t1 is None:
                    continue
                for o2 in template_orders(shape, h2.vertices, [apex]):
                    t2 = _try_order(shape, h2.vertices, o2)
                    if t2 is not None:
                        yield f"split r={r} apex={apex}", t1 | t2
    for apex in pts:
        for o in template_orders(shape, pts, [apex]):
            t = _try_order(shape, pts, o)
            if t is not None:
                yield f"whole apex={apex}", t
    rng = random.Random(seed)
    for i in range(restarts):
        o = pts[:]
        rng.shuffle(o)
        t = _try_order(shape, pts, o)
        if t is not None:
            yield f"random #{i}", t


def construct_maximal(shape: ShapeSpec, seed: int = 0, max_candidates: int = 2000) -> Triangulation3D:
    """A validated triangulation of size ``formula_max(shape)``."""
    from .bounds import formula_max

    if not 3 <= shape.n <= MAX_CONSTRUCT_N:
        raise CapacityError(f"construction is certified for 3 <= n <= {MAX_CONSTRUCT_N}")
    target = formula_max(shape)
    best = 0
    for k, (label, tets) in enumerate(candidate_constructions(shape, seed)):
        if k >= max_candidates:
            break
        best = max(best, len(tets)) if len(tets) <= target else best
        if len(tets) != target:
            continue
        tri = Triangulation3D(shape, tuple(tets))
        if validate_triangulation(tri).ok:
            log.debug("constructed %s via %s", shape, label)
            return tri
    raise ConstructionError(f"no placing order reached {target} tets for {shape}", best_size=best)
