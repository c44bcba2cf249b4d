import itertools

import pytest

from torcells.errors import HypothesisError, InputError
from torcells.monoid import (
    MonoidDatum, cross_section_lattice, dim_M, embedding_chow_rank, face_orbit_count,
    group_order, matrix_monoid_datum, monoid_cell_check, orbit_polytope, quasismooth_check,
    rank1_count, rook_rank1_count, vertex_orbits, weyl_enumerate,
)

from conftest import corpus_monoid

MONOIDS = ["m2", "m3", "m4", "b3_cube", "b3_octahedron", "a2_hexagon", "c2_square"]


@pytest.mark.parametrize("family, rank, order", [
    ("A", 1, 2), ("A", 2, 6), ("A", 3, 24), ("B", 2, 8), ("B", 3, 48), ("C", 3, 48),
    ("D", 2, 4), ("D", 3, 24), ("D", 4, 192), ("B", 4, 384), ("A", 5, 720),
])
def test_weyl_orders(family, rank, order):
    W = weyl_enumerate(family, rank)
    assert W.order == order == group_order(family, rank)


def test_weyl_matrices_form_a_group():
    W = weyl_enumerate("B", 2)
    mats = set(W.matrices)
    for a, b in itertools.product(mats, repeat=2):
        prod = tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
                     for i in range(2))
        assert prod in mats


def test_signed_permutation_oracle():
    # independent enumeration of B3 as all signed permutation matrices
    oracle = set()
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            oracle.add(tuple(tuple(signs[i] if j == perm[i] else 0 for j in range(3))
                             for i in range(3)))
    assert set(weyl_enumerate("B", 3).matrices) == oracle
    # D3: even number of sign changes
    even = {m for m in oracle if sum(1 for r in m for x in r if x < 0) % 2 == 0}
    assert set(weyl_enumerate("D", 3).matrices) == even


def test_weyl_size_guard():
    with pytest.raises(InputError):
        weyl_enumerate("B", 5)
    with pytest.raises(InputError):
        weyl_enumerate("A", 6)
    with pytest.raises(InputError):
        weyl_enumerate("E", 6)


def test_orbit_polytopes():
    m2 = corpus_monoid("m2")
    assert set(orbit_polytope(m2).vertices) == {(1, 0), (0, 1)}
    octa = corpus_monoid("b3_octahedron")
    assert len(orbit_polytope(octa).vertices) == 6
    assert vertex_orbits(octa) == [{"representative": [1, 0, 0], "orbit_size": 6,
                                    "stabilizer_order": 8}]
    cube = corpus_monoid("b3_cube")
    assert len(orbit_polytope(cube).vertices) == 8
    assert vertex_orbits(cube)[0]["stabilizer_order"] == 6


def test_cross_section_lattice():
    lam = cross_section_lattice(corpus_monoid("m2"))
    assert len(lam) == 3
    ranks = sorted(rk for _, rk in lam)
    assert ranks == [0, 1, 2]
    # oracle: idempotents of the diagonal 2x2 matrices up to conjugation by S2
    diag_idem = {(a, b) for a in (0, 1) for b in (0, 1)}
    assert len({tuple(sorted(e, reverse=True)) for e in diag_idem}) == len(lam)
    octa = cross_section_lattice(corpus_monoid("b3_octahedron"))
    assert sorted(rk for _, rk in octa) == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("name", MONOIDS)
def test_lambda_is_a_cross_section(name):
    d = corpus_monoid(name)
    lam = cross_section_lattice(d)
    ranks = [rk for _, rk in lam]
    assert 0 in ranks and d.dim_T in ranks
    assert len(lam) == face_orbit_count(d)


@pytest.mark.parametrize("name, r1", [("m2", 4), ("m3", 9), ("b3_octahedron", 36), ("b3_cube", 64)])
def test_rank1_count(name, r1):
    assert rank1_count(corpus_monoid(name)) == r1


@pytest.mark.parametrize("name, want", [("m2", 4), ("m3", 9), ("b3_cube", 22)])
def test_dim_M(name, want):
    assert dim_M(corpus_monoid(name)) == want


@pytest.mark.parametrize("n", [2, 3, 4])
def test_rook_oracle(n):
    d = matrix_monoid_datum(n)
    assert rank1_count(d) == n * n == dim_M(d) == rook_rank1_count(n)


@pytest.mark.parametrize("name, b, f", [
    ("m2", True, True), ("m3", True, True), ("m4", True, True),
    ("b3_octahedron", False, False), ("b3_cube", False, False),
    ("a2_hexagon", False, False), ("c2_square", False, False),
])
def test_cell_check(name, b, f):
    rep = monoid_cell_check(corpus_monoid(name))
    assert (rep.rational_cell_b, rep.rational_cell_f) == (b, f)
    assert rep.equivalence_ok


def test_octahedron_counts():
    rep = monoid_cell_check(corpus_monoid("b3_octahedron"))
    assert (rep.E1_count, rep.dim_T, rep.R1_count, rep.dim_M) == (6, 4, 36, 22)
    rep = monoid_cell_check(corpus_monoid("b3_cube"))
    assert (rep.E1_count, rep.R1_count) == (8, 64)


@pytest.mark.parametrize("name, ok", [
    ("m2", True), ("m3", True), ("m4", True), ("b3_cube", True), ("b3_octahedron", False),
])
def test_quasismooth(name, ok):
    q = quasismooth_check(corpus_monoid(name))
    assert q["quasismooth"] is ok
    # edge counts are constant along each orbit
    assert len(set(q["per_vertex_edge_counts"].values())) == len(q["per_orbit"])


def test_octahedron_edge_counts():
    q = quasismooth_check(corpus_monoid("b3_octahedron"))
    assert set(q["per_vertex_edge_counts"].values()) == {4} and q["dim_P"] == 3


@pytest.mark.parametrize("name, rank", [("m2", 4), ("m3", 9), ("b3_cube", 64)])
def test_embedding_chow_rank(name, rank):
    assert embedding_chow_rank(corpus_monoid(name)) == rank


def test_embedding_chow_rank_refuses_octahedron():
    with pytest.raises(HypothesisError, match="not quasismooth: vertex \\(1,0,0\\) has 4 edges"):
        embedding_chow_rank(corpus_monoid("b3_octahedron"))


def test_projective_space_oracle():
    # P(M2) = P^3 has one Chow class per degree 0..3
    assert embedding_chow_rank(corpus_monoid("m2")) == len(range(4))


def test_dim_M_override_is_flagged():
    d = MonoidDatum.from_json({"weyl": {"family": "A", "rank": 1}, "dominant_points": [[1, 0]],
                               "dim_M": 5})
    rep = monoid_cell_check(d)
    assert rep.dim_M == 5 and rep.dim_M_table == 4 and rep.dim_M_mismatch


def test_multiple_orbits():
    d = MonoidDatum(weyl_enumerate("B", 2), ((3, 0), (2, 2)))
    rep = monoid_cell_check(d)
    assert rep.E1_count == 8 and len(rep.orbits) == 2 and rep.equivalence_ok


@pytest.mark.parametrize("data, msg", [
    ({"weyl": {"family": "B", "rank": 3}, "dominant_points": [[0, 1, 0]]}, "not dominant"),
    ({"weyl": {"family": "A", "rank": 1}, "dominant_points": [[1, -1]]}, "no zero"),
    ({"weyl": {"family": "A", "rank": 2}, "dominant_points": [[1, 1, 1]]}, "not full"),
    ({"weyl": {"family": "B", "rank": 2}, "dominant_points": [[0, 0]]}, "not full"),
    ({"weyl": {"family": "B", "rank": 2}, "dominant_points": []}, "at least one"),
    ({"weyl": {"family": "B"}, "dominant_points": [[1, 0]]}, "malformed"),
])
def test_invalid_data(data, msg):
    with pytest.raises(InputError, match=msg):
        MonoidDatum.from_json(data)


def test_json_round_trip():
    d = corpus_monoid("b3_cube")
    assert MonoidDatum.from_json(d.to_json()).to_json() == d.to_json()


def test_point_inside_another_orbit_is_not_a_vertex():
    # (1,1) is the midpoint of (2,0) and (0,2)
    d = MonoidDatum(weyl_enumerate("B", 2), ((2, 0), (1, 1)))
    assert monoid_cell_check(d).E1_count == 4
