"""Seeded random inputs for property sweeps."""
from __future__ import annotations

import random
from typing import Sequence

from .lattice import Vector, det, matvec, primitive
from .polyhedral import Cone, Fan, convex_hull, rank_of


def random_unimodular(rng: random.Random, d: int, steps: int = 6) -> list[list[int]]:
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2) if d > 1 else (0, 0)
        if i == j:
            m[i] = [-c for c in m[i]]
            continue
        k = rng.choice([-2, -1, 1, 2])
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    if d > 1 and rng.random() < 0.5:
        i, j = rng.sample(range(d), 2)
        m[i], m[j] = m[j], m[i]
    return m


def random_smooth_cone(rng: random.Random, d: int) -> Cone:
    """Rows of a random unimodular matrix."""
    return Cone([tuple(r) for r in random_unimodular(rng, d)], d)


def random_simplicial_cone(rng: random.Random, d: int, bound: int = 3) -> Cone:
    while True:
        rays = [tuple(rng.randint(-bound, bound) for _ in range(d)) for _ in range(d)]
        if det(rays) != 0:
            rays = [primitive(r) for r in rays]
            if len(set(rays)) == d:
                return Cone(rays, d)


def random_cone(rng: random.Random, d: int, max_rays: int = 8, bound: int = 2) -> Cone:
    """Strongly convex full-dimensional cone over a random lattice polytope at
    height one, moved by a unimodular map."""
    while True:
        npts = rng.randint(d, max(d, max_rays + 2))
        pts = {tuple(rng.randint(-bound, bound) for _ in range(d - 1)) for _ in range(npts)}
        lifted = [p + (1,) for p in pts]
        if rank_of(lifted) < d:
            continue
        verts = convex_hull(sorted(pts)).vertices if d > 1 else [()]
        if len(verts) > max_rays:
            continue
        g = random_unimodular(rng, d)
        rays = [tuple(matvec(g, v + (1,))) for v in verts]
        return Cone(rays, d)


def random_lambda(rng: random.Random, d: int, bound: int = 20) -> Vector:
    return tuple(rng.randint(-bound, bound) for _ in range(d))


def random_generic_lambda(rng: random.Random, fan: Fan, bound: int = 20, tries: int = 1000) -> Vector:
    from .bb import is_generic

    for _ in range(tries):
        lam = random_lambda(rng, fan.rank, bound)
        if any(lam) and is_generic(lam, fan):
            return lam
    raise RuntimeError("no generic lambda found")


def interior_point(sigma: Cone) -> Vector:
    """Sum of the rays: lies in the relative interior."""
    return tuple(sum(r[i] for r in sigma.rays) for i in range(sigma.rank))


__all__ = [
    "random_unimodular", "random_smooth_cone", "random_simplicial_cone", "random_cone",
    "random_lambda", "random_generic_lambda", "interior_point",
]
