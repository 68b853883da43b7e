import random
from itertools import combinations, permutations

import numpy as np
import pytest
from scipy.optimize import linprog

from conftest import exact_coords, numeric_orient
from prismtri.errors import CapacityError, DomainError
from prismtri.kernel import (
    DEGENERATE_TET,
    FACE_NOT_TILED,
    IMPROPER_PAIR,
    UNMATCHED_FACET,
    Triangulation3D,
    boundary_face_of,
    candidate_tets,
    canonical_tet,
    circuits,
    classify_tet,
    orient,
    proper_pair,
    validate_triangulation,
)
from prismtri.construct import construct_maximal
from prismtri.enumeration import search_tables
from prismtri.shapes import B, ShapeSpec, T

STAIRCASE = [(T(0), T(1), T(2), B(2)), (T(0), T(1), B(1), B(2)), (T(0), B(0), B(1), B(2))]


def overlap_lp(shape, s, t):
    """Largest weight a common point of both hulls puts on s's private vertices."""
    P = {p: [float(x) for x in exact_coords(shape, p)] for p in set(s) | set(t)}
    s, t = list(s), list(t)
    m = len(s) + len(t)
    A = np.zeros((5, m))
    for j, p in enumerate(s):
        A[:3, j] = P[p]
        A[3, j] = 1
    for j, q in enumerate(t):
        A[:3, len(s) + j] = [-x for x in P[q]]
        A[4, len(s) + j] = 1
    b = np.array([0, 0, 0, 1, 1])
    c = np.array([-(p not in t) for p in s] + [0] * len(t), dtype=float)
    res = linprog(c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    return -res.fun if res.status == 0 else 0.0


def test_orient_examples():
    assert orient(ShapeSpec.prism(4), T(0), T(1), B(2), B(3)) == 0
    with pytest.raises(DomainError):
        orient(ShapeSpec.prism(4), T(0), T(0), B(2), B(3))


@pytest.mark.parametrize("kind", ["prism", "antiprism"])
@pytest.mark.parametrize("n", range(3, 8))
def test_orient_matches_numeric_under_permutation(kind, n):
    s = ShapeSpec(kind, n)
    rng = random.Random(n)
    for q in combinations(s.points(), 4):
        perms = list(permutations(q))
        for perm in rng.sample(perms, 3):
            assert orient(s, *perm) == numeric_orient(s, *perm)


def test_orient_alternates():
    s = ShapeSpec.antiprism(5)
    p = (T(0), T(2), B(1), B(4))
    base = orient(s, *p)
    assert base != 0
    for i, j in combinations(range(4), 2):
        q = list(p)
        q[i], q[j] = q[j], q[i]
        assert orient(s, *q) == -base


@pytest.mark.parametrize("kind", ["prism", "antiprism"])
def test_orient_rotation_invariant(kind):
    s = ShapeSpec(kind, 7)
    rot = lambda p: type(p)(p.layer, (p.index + 3) % 7)
    for q in combinations(s.points(), 4):
        assert orient(s, *q) == orient(s, *map(rot, q))


def test_candidate_counts():
    assert len(candidate_tets(ShapeSpec.prism(3))) == 12
    p4 = candidate_tets(ShapeSpec.prism(4))
    # 70 subsets, minus 2 one-layer, minus 2+2 subsets with parallel chords
    parallel = sum(1 for i, j in combinations(range(4), 2) for k, l in combinations(range(4), 2)
                   if (k + l - i - j) % 4 == 0)
    assert len(p4) == 70 - 2 - parallel
    a3 = candidate_tets(ShapeSpec.antiprism(3))
    excluded = sum(1 for i, j in combinations(range(3), 2) for k, l in combinations(range(3), 2)
                   if (k + l + 1 - i - j) % 3 == 0)
    assert len(a3) == 15 - excluded
    with pytest.raises(CapacityError):
        candidate_tets(ShapeSpec.prism(17))


def test_classify():
    assert classify_tet((T(0), T(1), T(2), B(0))) == (3, 1)
    assert classify_tet((T(0), B(1), B(2), B(0))) == (1, 3)
    assert classify_tet((T(0), T(1), B(2), B(0))) == (2, 2)


def test_proper_pair_examples():
    s4 = ShapeSpec.prism(4)
    assert not proper_pair(s4, (T(0), T(1), T(2), B(0)), (T(0), T(1), T(2), B(1)))
    s6 = ShapeSpec.prism(6)
    assert proper_pair(s6, (T(0), T(1), T(2), B(1)), (T(3), T(4), T(5), B(4)))
    assert proper_pair(s4, (T(0), T(1), T(2), B(0)), (T(0), T(1), T(2), B(0)))


@pytest.mark.parametrize("shape", [ShapeSpec.prism(4), ShapeSpec.prism(5), ShapeSpec.antiprism(4)],
                         ids=str)
def test_proper_pair_matches_lp_oracle(shape):
    tets = candidate_tets(shape)
    rng = random.Random(shape.n)
    pairs = [tuple(rng.sample(tets, 2)) for _ in range(400)]
    for s, t in pairs:
        improper = overlap_lp(shape, s, t) > 1e-7 or overlap_lp(shape, t, s) > 1e-7
        assert proper_pair(shape, s, t) == (not improper), (s, t)


@pytest.mark.parametrize("shape", [ShapeSpec.prism(4), ShapeSpec.antiprism(4)], ids=str)
def test_incompatibility_table_matches_pairwise(shape):
    tab = search_tables(shape)
    for i, j in combinations(range(len(tab.tets)), 2):
        assert tab.compatible(i, j) == proper_pair(shape, tab.tets[i], tab.tets[j])


def test_circuits_are_signed_dependencies():
    s = ShapeSpec.prism(4)
    for zp, zm in circuits(s, s.points()):
        assert zp and zm and not zp & zm
        assert 4 <= len(zp | zm) <= 5


def test_boundary_faces():
    s = ShapeSpec.prism(4)
    assert boundary_face_of(s, canonical_tet((T(0), T(1), T(2), B(0)))[:3]) == "top"
    assert boundary_face_of(s, (T(0), T(1), B(0))) is not None
    assert boundary_face_of(s, (T(0), T(2), B(0))) is None


def test_staircase_validates():
    tri = Triangulation3D(ShapeSpec.prism(3), tuple(STAIRCASE))
    rep = validate_triangulation(tri)
    assert rep.ok and bool(rep)


def test_cube_maximal_type_counts():
    tri = construct_maximal(ShapeSpec.prism(4))
    assert tri.size == 6 and validate_triangulation(tri).ok
    assert tri.type_counts() == {(3, 1): 2, (1, 3): 2, (2, 2): 2}


def test_single_tet_fails():
    rep = validate_triangulation(Triangulation3D(ShapeSpec.prism(3), (STAIRCASE[0],)))
    assert not rep.ok and UNMATCHED_FACET in rep.codes


def test_degenerate_and_duplicate():
    s = ShapeSpec.prism(4)
    flat = (T(0), T(1), B(2), B(3))
    rep = validate_triangulation(Triangulation3D(s, (canonical_tet(flat),)))
    assert DEGENERATE_TET in rep.codes
    tri = construct_maximal(s)
    rep = validate_triangulation(Triangulation3D(s, tri.tets + tri.tets[:1]))
    assert IMPROPER_PAIR in rep.codes


@pytest.mark.parametrize("kind", ["prism", "antiprism"])
@pytest.mark.parametrize("n", [4, 5, 6])
def test_removing_any_tet_is_rejected(kind, n):
    tri = construct_maximal(ShapeSpec(kind, n))
    for i in range(tri.size):
        rest = tri.tets[:i] + tri.tets[i + 1:]
        assert not validate_triangulation(Triangulation3D(tri.shape, rest)).ok


def test_wrong_face_tiling_is_flagged():
    # a lone tet covers only half of the top square
    s = ShapeSpec.prism(4)
    tets = (canonical_tet((T(0), T(1), T(2), B(0))),)
    rep = validate_triangulation(Triangulation3D(s, tets))
    assert not rep.ok
    assert FACE_NOT_TILED in rep.codes
