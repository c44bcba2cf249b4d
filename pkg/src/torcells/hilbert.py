"""Numerical cross-check of equivariant multiplicities by lattice-point counting.

For ``lam`` in the interior of a full-dimensional cone ``sigma`` the number of
points ``m`` of ``sigma^dual ∩ M`` with ``<lam, m> <= H`` grows like
``e(lam) * H^d / d!``. Fitting a polynomial in ``H`` to exact counts recovers
``e(lam)`` approximately. Only used to validate the exact formula.
"""
from __future__ import annotations

from fractions import Fraction
from math import ceil, factorial, floor
from typing import Sequence

from . import kernels
from .errors import PreconditionError
from .lattice import as_vector, pairing
from .polyhedral import Cone, dual_cone


def _box(sigma: Cone, lam, height: int):
    d = sigma.rank
    verts = [(0,) * d]
    for u in dual_cone(sigma).rays:
        s = pairing(lam, u)
        verts.append(tuple(Fraction(height * c, s) for c in u))
    lo = [floor(min(v[i] for v in verts)) for i in range(d - 1)]
    hi = [ceil(max(v[i] for v in verts)) for i in range(d - 1)]
    return lo, hi


def count_dual_points(sigma: Cone, lam: Sequence[int], height: int, *, backend=None) -> int:
    """``#{m in sigma^dual ∩ Z^d : 0 <= <lam, m> <= height}``."""
    lam = as_vector(lam)
    if not (sigma.is_full_dimensional() and sigma.in_relative_interior(lam)):
        raise PreconditionError(f"lambda {list(lam)} must lie in the interior of the cone")
    lo, hi = _box(sigma, lam, height)
    return kernels.count_cone_points([list(v) for v in sigma.rays], list(lam), height, lo, hi,
                                     backend=backend)


def hilbert_estimate(sigma: Cone, lam: Sequence[int], height: int = 200, samples: int = 11,
                     *, backend=None) -> float:
    """Estimate ``e(lam)`` from a least-squares fit of the counts on ``[height/2, height]``."""
    import numpy as np

    d = sigma.rank
    hs = sorted({round(height / 2 + k * (height / 2) / (samples - 1)) for k in range(samples)})
    counts = [count_dual_points(sigma, lam, h, backend=backend) for h in hs]
    coeffs = np.polyfit(np.array(hs, dtype=float), np.array(counts, dtype=float), d)
    return float(coeffs[0] * factorial(d))
