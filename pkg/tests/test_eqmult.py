import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from torcells.charfrac import CharFraction
from torcells.eqmult import (
    eq_mult, finite_cover_certificate, is_algebraic_rational_cell, orbifold_tangent_weights,
    product_formula_check,
)
from torcells.errors import NoCertificateError, PreconditionError, UnsupportedError
from torcells.hilbert import hilbert_estimate
from torcells.lattice import lattice_index
from torcells.polyhedral import Cone, dual_cone
from torcells.randgen import (
    interior_point, random_cone, random_simplicial_cone, random_smooth_cone,
)

SQUARE = Cone([(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)])
A1 = Cone([(1, 0), (1, 2)])
A2 = Cone([(1, 0), (1, 3)])
SMOOTH = Cone([(1, 0), (0, 1)])


def test_tangent_weights():
    assert set(orbifold_tangent_weights(SMOOTH)) == {(1, 0), (0, 1)}
    assert set(orbifold_tangent_weights(A1)) == {(0, 1), (2, -1)}
    assert len(orbifold_tangent_weights(SQUARE)) == 4


def test_tangent_weights_need_full_dimension():
    with pytest.raises(UnsupportedError):
        orbifold_tangent_weights(Cone([(1, 0, 0)], 3))


def test_eq_mult_examples():
    e = eq_mult(SMOOTH)
    assert e.value.render() == "1/(x*y)" and e.homogeneity_degree == -2
    assert eq_mult(A1).value.render() == "2/(y*(2x-y))"
    assert eq_mult(A2).value.render() == "3/(y*(3x-y))"


def test_eq_mult_with_square_dual_under_both_triangulations():
    sigma = dual_cone(SQUARE)
    want = "(x + y + z)/(x*y*(x+z)*(y+z))"
    n = len(dual_cone(sigma).rays)
    seen = set()
    for order in ([0, 1, 2, 3], [3, 2, 1, 0], [1, 3, 0, 2], [2, 0, 3, 1]):
        assert sorted(order) == list(range(n))
        seen.add(eq_mult(sigma, dual_order=order).value.render())
    assert seen == {want}


def test_bad_dual_order():
    with pytest.raises(PreconditionError):
        eq_mult(A1, dual_order=[0, 0])


def test_finite_cover():
    assert finite_cover_certificate(SMOOTH)[1] == 1
    weights, degree = finite_cover_certificate(A1)
    assert degree == 2 and set(weights) == {(0, 1), (2, -1)}
    with pytest.raises(NoCertificateError):
        finite_cover_certificate(SQUARE)


def test_rational_cell_verdicts():
    c = is_algebraic_rational_cell(SMOOTH)
    assert c.verdict and c.cover_degree == 1
    c = is_algebraic_rational_cell(A1)
    assert c.verdict and c.cover_degree == 2 and c.curve_count == 2
    c = is_algebraic_rational_cell(SQUARE)
    assert not c.verdict and c.curve_count == 4 and c.dimension == 3
    assert c.failure_reason == "curve count ℓ(x) = 4 exceeds dim X = 3"


def test_rational_cell_without_fixed_point():
    c = is_algebraic_rational_cell(Cone([(1, 0, 0), (0, 1, 0)], 3))
    assert not c.verdict and "attractive" in c.failure_reason


@pytest.mark.parametrize("cone, d", [(SMOOTH, 1), (A1, 2), (A2, 3)])
def test_product_formula(cone, d):
    assert product_formula_check(cone) == d


def test_product_formula_needs_simplicial():
    with pytest.raises(PreconditionError):
        product_formula_check(SQUARE)


def test_rank_zero_and_one():
    assert eq_mult(Cone([], 0)).value == CharFraction.constant(0, 1)
    assert eq_mult(Cone([(1,)])).value.render() == "1/x"
    assert eq_mult(Cone([(-1,)])).value.render() == "-1/x"


def test_cover_degree_is_dual_index_not_cone_index():
    # the cone has multiplicity 2 but the dual weights span an index-4 lattice
    sigma = Cone([(1, 0, 0), (0, 1, 0), (1, 1, 2)])
    assert product_formula_check(sigma) == 4
    assert lattice_index(orbifold_tangent_weights(sigma), 3) == 4


# -- properties ---------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10 ** 6))
def test_homogeneous_nonzero_and_order_independent(d, seed):
    rng = random.Random(seed)
    c = random_cone(rng, d)
    e = eq_mult(c)
    assert not e.value.is_zero() and e.value.degree() == -d
    n = len(dual_cone(c).rays)
    order = list(range(n))
    rng.shuffle(order)
    assert eq_mult(c, dual_order=order).value == e.value


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10 ** 6))
def test_positive_on_interior(d, seed):
    c = random_cone(random.Random(seed), d)
    assert eq_mult(c).evaluate(interior_point(c)) > 0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10 ** 6))
def test_smoothness_detection(d, seed):
    rng = random.Random(seed)
    c = random_smooth_cone(rng, d) if rng.random() < 0.5 else random_simplicial_cone(rng, d)
    w = orbifold_tangent_weights(c)
    smooth_formula = eq_mult(c).value == CharFraction.reciprocal_product(w, rank=d)
    assert smooth_formula == (lattice_index(w, d) == 1)


def test_hilbert_oracle_small():
    # cheap version of the acceptance check, pure Python backend
    e = eq_mult(A1).evaluate((3, 2))
    assert e == Fraction(1, 4)
    est = hilbert_estimate(A1, (3, 2), height=60, samples=7, backend="python")
    assert abs(est - float(e)) / float(e) < 0.02
