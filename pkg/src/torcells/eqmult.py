"""Equivariant multiplicities of affine toric varieties and rational-cell tests.

Conventions: a cone ``sigma`` lives in the cocharacter lattice N; the affine
toric variety ``X_sigma`` has coordinate ring ``k[sigma^dual ∩ M]`` and its
torus-fixed point is attractive exactly when ``sigma`` is full-dimensional.
One-parameter subgroups in the interior of ``sigma`` contract ``X_sigma`` to
that point, and every tangent weight pairs nonnegatively with ``sigma``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .charfrac import CharFraction, Polynomial, frac_eval
from .errors import NoCertificateError, PreconditionError, PropertyViolation, UnsupportedError
from .lattice import Vector, lattice_index
from .polyhedral import Cone, dual_cone, is_simplicial, placing_triangulation


@dataclass(frozen=True)
class EqMult:
    value: CharFraction
    homogeneity_degree: int

    def evaluate(self, lam: Sequence[int]) -> Fraction:
        return frac_eval(self.value, lam)

    def __str__(self):
        return self.value.render()


@dataclass
class RationalCellCertificate:
    verdict: bool
    ray_count: int
    dimension: int
    cover_degree: int | None = None
    cover_weights: list[Vector] | None = None
    curve_characters: list[Vector] = field(default_factory=list)
    failure_reason: str | None = None

    @property
    def curve_count(self) -> int:
        return len(self.curve_characters)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "ray_count": self.ray_count,
            "dimension": self.dimension,
            "cover_degree": self.cover_degree,
            "cover_weights": None if self.cover_weights is None else [list(w) for w in self.cover_weights],
            "curve_characters": [list(c) for c in self.curve_characters],
            "failure_reason": self.failure_reason,
        }


def _require_attractive(sigma: Cone):
    if not sigma.is_strongly_convex:
        raise UnsupportedError("cone contains a line: no torus-fixed point")
    if not sigma.is_full_dimensional():
        raise UnsupportedError(
            f"cone of dimension {sigma.dim} in rank {sigma.rank} has no attractive fixed point")


def orbifold_tangent_weights(sigma: Cone) -> list[Vector]:
    """Primitive extremal generators of the dual cone."""
    _require_attractive(sigma)
    return list(dual_cone(sigma).rays)


def eq_mult(sigma: Cone, *, dual_order: Sequence[int] | None = None) -> EqMult:
    """Equivariant multiplicity of ``X_sigma`` at its fixed point.

    Computed as ``sum mult(tau) / prod(generators of tau)`` over a placing
    triangulation of the dual cone; ``dual_order`` permutes the dual rays
    before triangulating (the result does not depend on it).
    """
    _require_attractive(sigma)
    d = sigma.rank
    if d == 0:
        return EqMult(CharFraction.constant(0, 1), 0)
    weights = list(dual_cone(sigma).rays)
    if dual_order is not None:
        if sorted(dual_order) != list(range(len(weights))):
            raise PreconditionError("dual_order must be a permutation of the dual rays")
        weights = [weights[i] for i in dual_order]
    total = CharFraction.zero(d)
    for piece in placing_triangulation(weights, d):
        gens = [weights[i] for i in piece]
        total = total + CharFraction.reciprocal_product(gens, lattice_index(gens, d), rank=d)
    result = EqMult(total, -d)
    if total.is_zero() or total.degree() != -d:
        raise PropertyViolation(f"equivariant multiplicity {total} is not homogeneous of degree {-d}")
    return result


def finite_cover_certificate(sigma: Cone) -> tuple[list[Vector], int]:
    """Weights and degree of a finite cover ``X_sigma -> V`` by a representation.

    The monomials of the dual-cone generators give a finite equivariant map to
    affine space whose degree is the index of the lattice they span.
    """
    _require_attractive(sigma)
    if not is_simplicial(sigma):
        raise NoCertificateError(
            f"{sigma.nrays} rays in dimension {sigma.dim}: a finite cover by a representation "
            "would need exactly one tangent curve per dimension")
    weights = orbifold_tangent_weights(sigma)
    degree = lattice_index(weights, sigma.rank)
    lhs = eq_mult(sigma).value
    rhs = CharFraction.reciprocal_product(weights, degree, rank=sigma.rank)
    if lhs != rhs:
        raise PropertyViolation(f"cover identity fails: {lhs} != {rhs}")
    return weights, degree


def is_algebraic_rational_cell(sigma: Cone) -> RationalCellCertificate:
    """Decide whether ``(X_sigma, x_sigma)`` is an algebraic rational cell."""
    if not sigma.is_strongly_convex or not sigma.is_full_dimensional():
        return RationalCellCertificate(
            verdict=False, ray_count=sigma.nrays, dimension=sigma.dim,
            failure_reason="no attractive fixed point (cone not full-dimensional and pointed)")
    curves = orbifold_tangent_weights(sigma)
    # Simplicial: the dual generators give a finite surjection onto affine space
    # with zero fibre {x}, so the rational Chow groups of X and of its weighted
    # projectivization agree with those of the representation: a cell.
    # Non-simplicial: the number of invariant curves through x (one per dual
    # generator) exceeds dim X, which no rational cell allows.
    if is_simplicial(sigma):
        weights, degree = finite_cover_certificate(sigma)
        return RationalCellCertificate(
            verdict=True, ray_count=sigma.nrays, dimension=sigma.dim,
            cover_degree=degree, cover_weights=weights, curve_characters=curves)
    return RationalCellCertificate(
        verdict=False, ray_count=sigma.nrays, dimension=sigma.dim, curve_characters=curves,
        failure_reason=f"curve count \u2113(x) = {len(curves)} exceeds dim X = {sigma.dim}")


def product_formula_check(sigma: Cone) -> int:
    """``eq_mult * prod(curve characters)``; a positive integer for simplicial cones."""
    _require_attractive(sigma)
    if not is_simplicial(sigma):
        raise PreconditionError(f"product formula needs a simplicial cone ({sigma.nrays} rays)")
    curves = orbifold_tangent_weights(sigma)
    prod = eq_mult(sigma).value * CharFraction(_product(curves, sigma.rank))
    if not prod.is_polynomial() or not prod.numerator.is_constant():
        raise PropertyViolation(f"e * prod(weights) = {prod} is not a constant")
    d = prod.numerator.constant_term()
    if d <= 0 or d.denominator != 1:
        raise PropertyViolation(f"cover degree {d} is not a positive integer")
    if d != lattice_index(curves, sigma.rank):
        raise PropertyViolation(f"cover degree {d} differs from the dual lattice index")
    return int(d)


def _product(chars: Sequence[Vector], rank: int) -> Polynomial:
    out = Polynomial.constant(rank, 1)
    for c in chars:
        out = out * Polynomial.linear(c)
    return out
