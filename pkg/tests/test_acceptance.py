"""Acceptance suite: one test per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary ends
with a ``criterion N PASS|FAIL`` line for each of the ten criteria.
"""

import json
import math
import random
from collections import Counter
from itertools import combinations

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from conftest import exact_coords, numeric_heights, numeric_orient
from prismtri import ShapeSpec, construct_maximal, enumerate_all, validate_triangulation
from prismtri.bounds import (
    check_monotone_lemma,
    formula_max,
    identity_sweep_exhaustive,
    identity_sweep_sampled,
    link_bound_failures,
)
from prismtri.cli import main
from prismtri.documents import TriangulationDocument
from prismtri.kernel import Triangulation3D, classify_tet, orient
from prismtri.polygon import admissible_orders, enumerate_polygon_triangulations, polygon_edges
from prismtri.shapes import B, Chord, Layer, PointId, Side, boundary_height_profile, height_table, profile_sum


def prism_max(n):
    return math.ceil((n * n + 6 * n - 16) / 4)


def antiprism_max(n):
    return (n * n + 8 * n - 16) // 4


class LeafAudit:
    """Leaf predicate that tallies tet types and link discipline on its own."""

    def __init__(self):
        self.seen = 0
        self.type_bad = 0
        self.link_bad = 0

    def __call__(self, tri):
        n = tri.shape.n
        self.seen += 1
        types = Counter(classify_tet(t) for t in tri.tets)
        if types[(3, 1)] != n - 2 or types[(1, 3)] != n - 2:
            self.type_bad += 1
        if link_bound_failures(tri):
            self.link_bad += 1
        return True


_CORPUS = {}


def corpus(kind, n):
    """Enumerate once per session; criteria 1, 2, 7, 8 share the runs."""
    key = (kind, n)
    if key not in _CORPUS:
        audit = LeafAudit()
        res = enumerate_all(ShapeSpec(kind, n), certify=True, jobs=1, leaf_check=audit)
        _CORPUS[key] = (res, audit)
    return _CORPUS[key]


PRISM_NS = (3, 4, 5, 6)
ANTIPRISM_NS = (3, 4, 5)


@pytest.mark.slow
def test_criterion_01_prism_maxima(criterion):
    got = {}
    for n in PRISM_NS:
        res, _ = corpus("prism", n)
        assert res.invariants_hold, res
        got[n] = res.max_size
    criterion(f"max sizes {got}, counts {[corpus('prism', n)[0].count for n in PRISM_NS]}")
    assert got == {3: 3, 4: 6, 5: 10, 6: 14}
    assert all(got[n] == prism_max(n) for n in PRISM_NS)


def test_criterion_02_antiprism_maxima(criterion):
    got = {}
    for n in ANTIPRISM_NS:
        res, _ = corpus("antiprism", n)
        assert res.invariants_hold, res
        got[n] = res.max_size
    criterion(f"max sizes {got}, counts {[corpus('antiprism', n)[0].count for n in ANTIPRISM_NS]}")
    assert got == {3: 4, 4: 8, 5: 12}
    assert all(got[n] == antiprism_max(n) for n in ANTIPRISM_NS)


def _tet_volume(shape, t):
    P = np.array([[float(x) for x in exact_coords(shape, p)] for p in t])
    return abs(np.linalg.det(P[1:] - P[0])) / 6


def test_criterion_03_construction(criterion):
    sizes = {}
    for kind, want in (("prism", prism_max), ("antiprism", antiprism_max)):
        for n in range(3, 13):
            shape = ShapeSpec(kind, n)
            tri = construct_maximal(shape)
            assert tri.size == want(n) == formula_max(shape)
            assert validate_triangulation(tri).ok
            # volume oracle: the tets fill the convex hull exactly
            hull = ConvexHull(np.array([[float(x) for x in exact_coords(shape, p)] for p in shape.points()]))
            assert sum(_tet_volume(shape, t) for t in tri.tets) == pytest.approx(hull.volume, rel=1e-9)
            sizes[f"{kind[0]}{n}"] = tri.size
    for n in PRISM_NS:
        assert corpus("prism", n)[0].max_size == prism_max(n)
    for n in ANTIPRISM_NS:
        assert corpus("antiprism", n)[0].max_size == antiprism_max(n)
    criterion(f"sizes {sizes}")


def test_criterion_04_telescoping_identity(criterion):
    exhaustive = failures = 0
    for kind in ("prism", "antiprism"):
        for n in range(3, 7):
            shape = ShapeSpec(kind, n)
            for pt in enumerate_polygon_triangulations(n):
                for root in polygon_edges(n):
                    for ao in admissible_orders(pt, root):
                        res = identity_sweep_exhaustive(shape, pt, ao)
                        assert res.instances == n ** (n - 2)
                        exhaustive += res.instances
                        failures += res.failures
    sampled = 0
    for kind in ("prism", "antiprism"):
        for n in (7, 8, 9):
            res = identity_sweep_sampled(ShapeSpec(kind, n), 10_000, seed=n)
            sampled += res.instances
            failures += res.failures
    criterion(f"{exhaustive} exhaustive + {sampled} sampled instances, {failures} failures")
    assert failures == 0


def test_criterion_05_monotone_lemma(criterion):
    checked = failures = 0
    for kind in ("prism", "antiprism"):
        for n in range(3, 13):
            shape = ShapeSpec(kind, n)
            for a, b in combinations(range(n), 2):
                if (b - a) in (1, n - 1):
                    continue
                for side in Side:
                    checked += 1
                    failures += not check_monotone_lemma(shape, Chord.of(Layer.TOP, a, b, n), side)
    criterion(f"{checked} (chord, side) cases, {failures} failures")
    assert checked > 0 and failures == 0


def _expected_profile(kind, n):
    if kind == "prism":
        h = n // 2
        if n % 2 == 0:
            return list(range(h)) + list(range(h - 1, -1, -1))
        return list(range(h + 1)) + list(range(h - 1, -1, -1))
    return [min(i, n - i) for i in range(n)]


def _is_rotation(seq, pattern):
    return any(seq[k:] + seq[:k] == pattern for k in range(len(seq)))


def test_criterion_06_height_profiles(criterion):
    sums = {}
    for kind in ("prism", "antiprism"):
        shape_sums = []
        for n in range(3, 17):
            shape = ShapeSpec(kind, n)
            pattern = _expected_profile(kind, n)
            if kind == "prism":
                total = (n * n - 2 * n) // 4 if n % 2 == 0 else (n * n - 2 * n + 1) // 4
            else:
                total = n * n // 4 if n % 2 == 0 else (n * n - 1) // 4
            for base in range(n):
                prof = boundary_height_profile(shape, base)
                assert sorted(prof) == sorted(pattern)
                assert _is_rotation(list(prof), pattern) or _is_rotation(list(prof)[::-1], pattern)
                assert sum(prof) == total
                # the closed form agrees with the numeric f-value ranking
                for a in range(n):
                    c = Chord.of(Layer.TOP, a, a + 1, n)
                    side = Side.ARC_BA if c.b == a + 1 else Side.ARC_AB
                    assert numeric_heights(shape, c, side)[base] == prof[a]
            assert profile_sum(shape) == total
            shape_sums.append(total)
        sums[kind] = shape_sums
    criterion(f"sums n=3..16 {sums}")


def test_criterion_07_tet_types(criterion):
    seen = bad = 0
    for kind, ns in (("prism", PRISM_NS), ("antiprism", ANTIPRISM_NS)):
        for n in ns:
            res, audit = corpus(kind, n)
            assert audit.seen == res.count
            seen += audit.seen
            bad += audit.type_bad + res.type_violations
    criterion(f"{seen} triangulations, {bad} exceptions")
    assert seen > 0 and bad == 0


def test_criterion_08_link_discipline(criterion):
    seen = bad = 0
    for kind, ns in (("prism", PRISM_NS), ("antiprism", ANTIPRISM_NS)):
        for n in ns:
            res, audit = corpus(kind, n)
            seen += audit.seen
            bad += audit.link_bad
    criterion(f"{seen} triangulations, {bad} exceptions")
    assert seen > 0 and bad == 0


def _rule_zero(shape, pts):
    top = sorted(p.index for p in pts if p.layer is Layer.TOP)
    bot = sorted(p.index for p in pts if p.layer is Layer.BOTTOM)
    if len(top) == 4 or len(bot) == 4:
        return True
    if len(top) == 2:
        return (sum(bot) + shape.delta - sum(top)) % shape.n == 0
    return False


def test_criterion_09_kernel_soundness(criterion):
    subsets = mismatches = zeros = 0
    rng = random.Random(9)
    for kind in ("prism", "antiprism"):
        for n in range(3, 13):
            shape = ShapeSpec(kind, n)
            for q in combinations(shape.points(), 4):
                q = list(q)
                if subsets % 7 == 0:
                    rng.shuffle(q)
                subsets += 1
                exact = orient(shape, *q)
                num = numeric_orient(shape, *q, dps=70)
                mismatches += exact != num
                mismatches += (num == 0) != _rule_zero(shape, q)
                zeros += num == 0
    criterion(f"{subsets} subsets at 70 digits, {zeros} coplanar, {mismatches} mismatches")
    assert mismatches == 0


def _crossing(k, l, n, rng):
    inside = set(range(k + 1, l))
    opts = [(c, d) for c, d in combinations(range(n), 2)
            if (c in inside) != (d in inside) and c not in (k, l) and d not in (k, l)]
    return rng.choice(opts) if opts else None


def _mutate(tri, kind, rng):
    tets = list(tri.tets)
    n = tri.shape.n
    if kind == "delete":
        tets.pop(rng.randrange(len(tets)))
        return tets
    if kind == "duplicate":
        tets.append(rng.choice(tets))
        return tets
    pool = []
    for i, t in enumerate(tets):
        if classify_tet(t) == (2, 2):
            k, l = sorted(p.index for p in t if p.layer is Layer.BOTTOM)
            if _crossing(k, l, n, rng):
                pool.append((i, k, l))
    if not pool:
        return None
    i, k, l = rng.choice(pool)
    c, d = _crossing(k, l, n, rng)
    tops = [p for p in tets[i] if p.layer is Layer.TOP]
    tets[i] = tuple(sorted(tops + [B(c), B(d)]))
    return tets


EXPECTED = {"delete": "unmatched-facet", "duplicate": "improper-pair", "swap": "unmatched-facet"}


def test_criterion_10_mutation_rejection(criterion, tmp_path):
    rng = random.Random(10)
    witnesses = [construct_maximal(ShapeSpec(kind, n)) for kind in ("prism", "antiprism") for n in range(4, 10)]
    witnesses += [corpus("prism", 5)[0].max_witness, corpus("antiprism", 5)[0].max_witness]
    for tri in witnesses:
        assert main(["verify", _save(tri, tmp_path / "ok.json")]) == 0
    done = Counter()
    wrong = []
    kinds = ["delete", "duplicate", "swap"]
    while sum(done.values()) < 100:
        kind = kinds[sum(done.values()) % 3]
        tri = rng.choice(witnesses)
        tets = _mutate(tri, kind, rng)
        if tets is None:
            continue
        path = _save(Triangulation3D(tri.shape, tuple(tets)), tmp_path / f"m{sum(done.values())}.json")
        out = tmp_path / "report.json"
        code = main(["verify", path, "--out", str(out)])
        codes = {c for c, _ in json.loads(out.read_text())["results"]["failures"]}
        if code == 0 or EXPECTED[kind] not in codes:
            wrong.append((kind, str(tri.shape), code, sorted(codes)))
        done[kind] += 1
    criterion(f"{dict(done)} mutations, {len(wrong)} accepted or misreported")
    assert not wrong, wrong[:5]


def _save(tri, path):
    TriangulationDocument(tri, generator="test").save(path)
    return str(path)
