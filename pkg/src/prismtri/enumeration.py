"""Exhaustive enumeration of triangulations by facet-driven backtracking.

The search keeps a set of *pending* facets: interior triangles covered by
exactly one chosen tetrahedron.  It always extends the lexicographically
least pending facet by a tetrahedron on its other side, compatible with
everything chosen so far.  Every decision is forced by that facet, so each
triangulation is reached along exactly one branch.
"""

from __future__ import annotations

import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterator

from .errors import CapacityError, StructuralError
from .kernel import (
    Tet,
    Triangulation3D,
    boundary_face_of,
    candidate_tets,
    circuits,
    classify_tet,
    orient,
    validate_triangulation,
)
from .shapes import Kind, Layer, PointId, ShapeSpec

GUARDS = {Kind.PRISM: 6, Kind.ANTIPRISM: 5}


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SearchTables:
    """Per-shape precomputation: candidates, facets, sides, incompatibilities."""

    def __init__(self, shape: ShapeSpec):
        self.shape = shape
        self.tets: list[Tet] = candidate_tets(shape)
        self.tet_index = {t: i for i, t in enumerate(self.tets)}

        all_facets = sorted({f for t in self.tets for f in combinations(t, 3)})
        self.facets = all_facets
        self.facet_index = {f: i for i, f in enumerate(all_facets)}
        self.facet_boundary = [boundary_face_of(shape, f) is not None for f in all_facets]

        # tet_facets[i] = [(facet id, side of the opposite apex)]
        self.tet_facets: list[list[tuple[int, int]]] = []
        self.by_facet_side: list[dict[int, list[int]]] = [{1: [], -1: []} for _ in all_facets]
        for i, t in enumerate(self.tets):
            row = []
            for apex in t:
                f = tuple(p for p in t if p != apex)
                fid = self.facet_index[f]
                side = orient(shape, *f, apex)
                row.append((fid, side))
                self.by_facet_side[fid][side].append(i)
            self.tet_facets.append(row)

        containing: dict[frozenset, int] = {}
        for i, t in enumerate(self.tets):
            for k in range(1, 5):
                for sub in combinations(t, k):
                    key = frozenset(sub)
                    containing[key] = containing.get(key, 0) | (1 << i)
        self.incompat = [0] * len(self.tets)
        for plus, minus in circuits(shape, shape.points()):
            mp, mm = containing.get(plus, 0), containing.get(minus, 0)
            if not (mp and mm):
                continue
            for i in _bits(mp):
                self.incompat[i] |= mm
            for j in _bits(mm):
                self.incompat[j] |= mp

    def compatible(self, i: int, j: int) -> bool:
        return not (self.incompat[i] >> j) & 1

    def seeds(self) -> list[int]:
        """Tets covering the part of the boundary next to top edge T0-T1.

        Prism: either diagonal split of side quad {T0,T1,B1,B0}, so a tet on
        {T0,T1,B0} or on {T0,T1,B1}.  Antiprism: the tet on {T0,T1,B0}.
        """
        t0, t1 = PointId(Layer.TOP, 0), PointId(Layer.TOP, 1)
        b0, b1 = PointId(Layer.BOTTOM, 0), PointId(Layer.BOTTOM, 1)
        faces = [(t0, t1, b0)]
        if self.shape.kind is Kind.PRISM:
            faces.append((t0, t1, b1))
        out = []
        for f in faces:
            fid = self.facet_index[tuple(sorted(f))]
            for side in (1, -1):
                out.extend(self.by_facet_side[fid][side])
        return sorted(set(out))


@lru_cache(maxsize=8)
def search_tables(shape: ShapeSpec) -> SearchTables:
    return SearchTables(shape)


def _search(tables: SearchTables, seed: int, on_leaf: Callable[[list[int]], bool]) -> None:
    """Depth-first over all triangulations containing ``seed``.

    ``on_leaf`` receives the chosen tet indices; returning True stops the search.
    """
    tet_facets = tables.tet_facets
    boundary = tables.facet_boundary
    by_side = tables.by_facet_side
    incompat = tables.incompat
    chosen: list[int] = []
    pending: dict[int, int] = {}

    def add(i):
        opened, closed = [], []
        for fid, side in tet_facets[i]:
            if boundary[fid]:
                continue
            if fid in pending:
                if pending[fid] == side:
                    raise StructuralError("two tets on one side of a facet")
                closed.append((fid, pending.pop(fid)))
            else:
                pending[fid] = side
                opened.append(fid)
        chosen.append(i)
        return opened, closed

    def undo(opened, closed):
        chosen.pop()
        for fid in opened:
            del pending[fid]
        for fid, side in closed:
            pending[fid] = side

    def dead_end(forbid):
        for fid, side in pending.items():
            if all((forbid >> c) & 1 for c in by_side[fid][-side]):
                return True
        return False

    def rec(forbid):
        if not pending:
            return on_leaf(chosen)
        fid = min(pending)
        for c in by_side[fid][-pending[fid]]:
            if (forbid >> c) & 1:
                continue
            undo_info = add(c)
            nf = forbid | incompat[c] | (1 << c)
            stop = False
            if not dead_end(nf):
                stop = rec(nf)
            undo(*undo_info)
            if stop:
                return True
        return False

    add(seed)
    rec(incompat[seed] | (1 << seed))


def iter_triangulations(shape: ShapeSpec, guard: bool = True) -> Iterator[Triangulation3D]:
    """Yield every triangulation once (serial, deterministic order)."""
    _check_guard(shape, guard)
    tables = search_tables(shape)
    for seed in tables.seeds():
        found = []
        _search(tables, seed, lambda ch: found.append(tuple(ch)) and False)
        for ch in found:
            yield Triangulation3D(shape, tuple(tables.tets[i] for i in ch))


def _check_guard(shape: ShapeSpec, guard: bool) -> None:
    if guard and shape.n > GUARDS[shape.kind]:
        raise CapacityError(
            f"{shape} exceeds the enumeration guard n <= {GUARDS[shape.kind]}"
        )


@dataclass
class EnumerationResult:
    shape: ShapeSpec
    count: int
    size_histogram: dict[int, int]
    max_size: int
    max_witness: Triangulation3D
    min_size: int
    elapsed: float
    repeats: int = 0
    type_violations: int = 0
    invalid_leaves: int = 0
    leaf_check_failures: int = 0
    orbit_count: int | None = None

    @property
    def invariants_hold(self) -> bool:
        return not (self.repeats or self.type_violations or self.invalid_leaves
                    or self.leaf_check_failures)


@dataclass
class _BranchResult:
    count: int = 0
    histogram: Counter = field(default_factory=Counter)
    best: tuple | None = None
    keys: set = field(default_factory=set)
    repeats: int = 0
    type_violations: int = 0
    invalid_leaves: int = 0
    leaf_check_failures: int = 0


def _run_branch(shape: ShapeSpec, seed: int, certify: bool, leaf_check, want_keys: bool) -> _BranchResult:
    tables = search_tables(shape)
    res = _BranchResult()
    n = shape.n

    def on_leaf(chosen):
        key = 0
        for i in chosen:
            key |= 1 << i
        if key in res.keys:
            res.repeats += 1
        res.keys.add(key)
        tets = tuple(sorted(tables.tets[i] for i in chosen))
        types = Counter(classify_tet(t) for t in tets)
        if types[(3, 1)] != n - 2 or types[(1, 3)] != n - 2:
            res.type_violations += 1
        tri = Triangulation3D(shape, tets)
        if certify and not validate_triangulation(tri).ok:
            res.invalid_leaves += 1
        if leaf_check is not None and not leaf_check(tri):
            res.leaf_check_failures += 1
        res.count += 1
        res.histogram[len(tets)] += 1
        cand = (-len(tets), tets)
        if res.best is None or cand < res.best:
            res.best = cand
        return False

    _search(tables, seed, on_leaf)
    if not want_keys:
        res.keys = set()
    return res


def worker_count(jobs: int | None = None) -> int:
    if jobs is None:
        jobs = int(os.environ.get("PRISMTRI_THREADS", "1") or 1)
    return max(1, jobs)


def enumerate_all(
    shape: ShapeSpec,
    guard: bool = True,
    certify: bool = True,
    jobs: int | None = None,
    leaf_check: Callable[[Triangulation3D], bool] | None = None,
    orbits: bool = False,
) -> EnumerationResult:
    """Enumerate every triangulation, with counts, a size histogram and a maximal witness.

    With ``certify`` every leaf is re-validated by the independent validator.
    ``leaf_check`` is an extra predicate run on every leaf (it must be a
    module-level function when ``jobs > 1``).  ``orbits`` additionally
    reports the number of orbits under the dihedral symmetry of the base.
    """
    _check_guard(shape, guard)
    start = time.perf_counter()
    tables = search_tables(shape)
    seeds = tables.seeds()
    jobs = worker_count(jobs)
    args = [(shape, s, certify, leaf_check, orbits) for s in seeds]
    if jobs > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_branch, *zip(*args)))
    else:
        parts = [_run_branch(*a) for a in args]

    hist: Counter = Counter()
    best = None
    total = _BranchResult()
    for p in parts:
        hist.update(p.histogram)
        total.count += p.count
        total.repeats += p.repeats
        total.type_violations += p.type_violations
        total.invalid_leaves += p.invalid_leaves
        total.leaf_check_failures += p.leaf_check_failures
        if p.best is not None and (best is None or p.best < best):
            best = p.best
    if best is None:
        raise StructuralError(f"no triangulation found for {shape}")

    orbit_count = None
    if orbits:
        all_keys = set().union(*(p.keys for p in parts))
        orbit_count = _count_orbits(tables, all_keys)

    return EnumerationResult(
        shape=shape,
        count=total.count,
        size_histogram=dict(sorted(hist.items())),
        max_size=max(hist),
        max_witness=Triangulation3D(shape, best[1]),
        min_size=min(hist),
        elapsed=time.perf_counter() - start,
        repeats=total.repeats,
        type_violations=total.type_violations,
        invalid_leaves=total.invalid_leaves,
        leaf_check_failures=total.leaf_check_failures,
        orbit_count=orbit_count,
    )


def _symmetries(shape: ShapeSpec) -> list[Callable[[PointId], PointId]]:
    # rotations, and reflections v -> -v (top) / -v - delta (bottom)
    n, d = shape.n, shape.delta
    maps = []
    for r in range(n):
        maps.append(lambda p, r=r: PointId(p.layer, (p.index + r) % n))
        maps.append(lambda p, r=r: PointId(
            p.layer, (-p.index - (d if p.layer is Layer.BOTTOM else 0) + r) % n))
    return maps


def _count_orbits(tables: SearchTables, keys: set[int]) -> int:
    perms = []
    for g in _symmetries(tables.shape):
        perms.append([tables.tet_index[tuple(sorted(g(p) for p in t))] for t in tables.tets])
    seen: set[int] = set()
    orbits = 0
    for key in keys:
        if key in seen:
            continue
        orbits += 1
        idx = list(_bits(key))
        for perm in perms:
            img = 0
            for i in idx:
                img |= 1 << perm[i]
            seen.add(img)
    return orbits


def max_triangulation(
    shape: ShapeSpec, assume_bound: bool = False, guard: bool = True, jobs: int | None = None
) -> tuple[int, Triangulation3D]:
    """A validated maximum-size triangulation.

    Without ``assume_bound`` maximality is certified by exhaustion.  With it,
    the search stops at the first triangulation of the closed-form size.
    """
    from .bounds import formula_max

    if not assume_bound:
        res = enumerate_all(shape, guard=guard, jobs=jobs)
        return res.max_size, res.max_witness

    _check_guard(shape, guard)
    tables = search_tables(shape)
    target = formula_max(shape)
    hit: list[tuple[int, ...]] = []

    def on_leaf(chosen):
        if len(chosen) >= target:
            hit.append(tuple(chosen))
            return True
        return False

    for seed in tables.seeds():
        _search(tables, seed, on_leaf)
        if hit:
            break
    if not hit:
        raise StructuralError(f"no triangulation of size {target} for {shape}")
    tri = Triangulation3D(shape, tuple(tables.tets[i] for i in hit[0]))
    if not validate_triangulation(tri).ok:
        raise StructuralError("search produced an invalid triangulation")
    return tri.size, tri
