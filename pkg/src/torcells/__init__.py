"""Exact computations for torus actions: equivariant multiplicities of affine
toric varieties, rational-cell decisions, Białynicki-Birula filtrations of
complete simplicial toric varieties, and combinatorial monoid models."""

from .bb import (
    BasisMatrix, CellReport, Filtration, LocalizedClass, bb_decomposition, build_filtration,
    chow_ranks, fundamental_class, h_from_f_vector, h_polynomial, integrate, is_generic,
    localized_basis_matrix, point_class,
)
from .bundle import load_corpus
from .charfrac import CharFraction, Polynomial, frac_eval, frac_sum
from .eqmult import (
    EqMult, RationalCellCertificate, eq_mult, finite_cover_certificate,
    is_algebraic_rational_cell, orbifold_tangent_weights, product_formula_check,
)
from .errors import (
    DimensionError, HypothesisError, InputError, NoCertificateError, NotGenericError, PoleError,
    PreconditionError, PropertyViolation, TorcellsError, UnsupportedError,
)
from .kernels import BACKEND
from .lattice import (
    det, is_primitive, kernel_basis, lattice_index, normalize_character, pairing, primitive,
    saturation_index, smith_normal_form,
)
from .monoid import (
    MonoidDatum, MonoidReport, WeylDatum, cross_section_lattice, dim_M, embedding_chow_rank,
    monoid_cell_check, orbit_polytope, quasismooth_check, rank1_count, weyl_enumerate,
)
from .polyhedral import (
    Cone, Fan, FanReport, Polytope, cone_multiplicity, convex_hull, dual_cone, fan_validate,
    is_simplicial, placing_triangulation, quotient_cone, triangulate,
)

__version__ = "0.1.0"
