import random

import pytest
from hypothesis import given, settings, strategies as st

from torcells.errors import PreconditionError, UnsupportedError
from torcells.lattice import lattice_index
from torcells.polyhedral import (
    Cone, Fan, Polytope, cone_multiplicity, convex_hull, dual_cone, fan_validate, is_simplicial,
    placing_triangulation, quotient_cone, triangulate,
)
from torcells.randgen import random_cone

from conftest import FAN_NAMES, corpus_fan

SQUARE = [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)]


@pytest.mark.parametrize("rays, want", [
    ([(1, 0), (0, 1)], {(1, 0), (0, 1)}),
    ([(1, 0), (1, 2)], {(0, 1), (2, -1)}),
])
def test_dual_cone_examples(rays, want):
    assert set(dual_cone(Cone(rays)).rays) == want


def test_dual_of_cone_with_line_is_unsupported():
    c = Cone([(1, 0), (0, 1), (-1, -1)], strongly_convex=False)
    assert not c.is_strongly_convex
    with pytest.raises(UnsupportedError):
        dual_cone(c)
    with pytest.raises(PreconditionError):
        Cone([(1, 0), (0, 1), (-1, -1)])


def test_dual_of_low_dimensional_cone_is_unsupported():
    with pytest.raises(UnsupportedError):
        dual_cone(Cone([(1, 0, 0), (0, 1, 0)], 3))


@pytest.mark.parametrize("rays, want", [
    ([(1, 0), (1, 2)], True),
    (SQUARE, False),
    ([(1,)], True),
])
def test_is_simplicial(rays, want):
    assert is_simplicial(Cone(rays)) is want


@pytest.mark.parametrize("rays, want", [
    ([(1, 0), (0, 1)], 1),
    ([(1, 0), (1, 2)], 2),
    ([(1, 0), (1, 3)], 3),
    ([(2, 1, 0), (0, 1, 2)], 2),  # index inside the saturated span, not in Z^3
])
def test_cone_multiplicity(rays, want):
    assert cone_multiplicity(Cone(rays)) == want


def test_cone_multiplicity_needs_simplicial():
    with pytest.raises(PreconditionError):
        cone_multiplicity(Cone(SQUARE))


def test_rays_are_checked():
    with pytest.raises(PreconditionError, match="not extremal"):
        Cone([(1, 0), (1, 2), (1, 1)])
    with pytest.raises(PreconditionError):
        Cone([(1, 0), (2, 0)])
    assert Cone([(2, 4), (0, 3)]).rays == ((1, 2), (0, 1))


def test_triangulate_examples():
    c = Cone([(1, 0), (1, 2)])
    assert triangulate(c) == [c]
    pieces = placing_triangulation(SQUARE, 3)
    assert pieces == [(0, 1, 2), (1, 2, 3)]
    assert [set(p.rays) for p in triangulate(Cone(SQUARE))] == [
        {SQUARE[0], SQUARE[1], SQUARE[2]}, {SQUARE[1], SQUARE[2], SQUARE[3]}]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10 ** 6))
def test_dual_is_involution(d, seed):
    c = random_cone(random.Random(seed), d)
    assert dual_cone(dual_cone(c)) == c


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(0, 10 ** 6))
def test_triangulation_volume_is_order_independent(d, seed):
    rng = random.Random(seed)
    c = random_cone(rng, d)
    rays = list(c.rays)
    vols = set()
    for _ in range(3):
        rng.shuffle(rays)
        vols.add(sum(lattice_index([rays[i] for i in p], d) for p in placing_triangulation(rays, d)))
    assert len(vols) == 1


@pytest.mark.parametrize("name", FAN_NAMES)
def test_corpus_fans_are_complete(name):
    rep = fan_validate(corpus_fan(name))
    assert rep.complete and rep.label == "complete (certified)" and not rep.defects


def test_fan_missing_cone_is_flagged():
    fan = Fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (0, 2)])
    rep = fan_validate(fan)
    assert not rep.complete
    assert any("shared once" in d for d in rep.defects)


def test_fan_overlap_is_flagged():
    fan = Fan(2, [(1, 0), (1, 1), (0, 1)], [(0, 1), (0, 2)])
    rep = fan_validate(fan)
    assert rep.label == "defective"
    assert any("face" in d for d in rep.defects)


def test_hirzebruch_mutant_is_flagged():
    # F1 with the wrong ray: cones overlap
    fan = Fan(2, [(1, 0), (0, 1), (-1, 1), (0, -1)], [(0, 1), (0, 2), (2, 3), (0, 3)])
    assert not fan_validate(fan).complete


def test_fan_json_round_trip():
    fan = corpus_fan("f1")
    assert Fan.from_json(fan.to_json()).to_json() == fan.to_json()
    assert len(fan.all_cones()) == 1 + 4 + 4


def test_convex_hull_examples():
    seg = convex_hull([(1, 0), (0, 1)])
    assert len(seg.vertices) == 2 and len(seg.faces_of_dim(1)) == 1
    sq = convex_hull([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)])
    assert set(sq.vertices) == {(0, 0), (2, 0), (0, 2), (2, 2)}
    cube = convex_hull([(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)])
    assert cube.f_vector() == [8, 12, 6]
    assert len(cube.facets) == 6


def test_polytope_rejects_interior_point():
    with pytest.raises(PreconditionError):
        Polytope([(0, 0), (2, 0), (0, 2), (1, 1)])


@pytest.mark.parametrize("pts", [
    [(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)],
    [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
    [(2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 0, 2), (0, 1, 2), (0, 2, 1)],
    [(0, 0), (1, 0)],
])
def test_euler_relation(pts):
    P = convex_hull(pts)
    assert sum((-1) ** (f.dim % 2) for f in P.faces) == 0


def test_hexagon_in_a_plane():
    P = convex_hull([(2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 0, 2), (0, 1, 2), (0, 2, 1)])
    assert P.dim == 2 and P.f_vector() == [6, 6]
    assert all(P.edges_at(i) == 2 for i in range(6))
    assert P.contains((1, 1, 1)) and not P.contains((1, 1, 0))


def test_quotient_cone_examples():
    sigma = Cone([(1, 0), (1, 2)])
    q, P = quotient_cone(Cone([], 2), sigma)
    assert q == sigma and P == [(1, 0), (0, 1)]
    q, P = quotient_cone(Cone([(1, 0)]), Cone([(1, 0), (0, 1)]))
    assert q == Cone([(1,)]) and len(P) == 1
    q, P = quotient_cone(Cone([(-1, -1)]), Cone([(0, 1), (-1, -1)]))
    assert q == Cone([(1,)])
    # the quotient character is orthogonal to tau
    assert sum(a * b for a, b in zip(P[0], (-1, -1))) == 0


def test_quotient_cone_needs_a_face():
    with pytest.raises(PreconditionError):
        quotient_cone(Cone([(1, 1)]), Cone([(1, 0), (0, 1)]))
