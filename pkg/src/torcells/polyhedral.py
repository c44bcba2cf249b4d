"""Exact rational polyhedral cones, fans and lattice polytopes.

Facets are found by brute force over (k-1)-subsets of generators after
projecting onto pivot coordinates, which is exact and fast enough for the
desk-scale inputs this package targets (rank <= 5, a few dozen generators).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import kernels
from .errors import DimensionError, PreconditionError, UnsupportedError
from .lattice import (
    Vector, as_vector, cofactor_normal, kernel_basis, pivot_columns, primitive,
    quotient_projection, rank, saturation_index,
)


@dataclass(frozen=True)
class _Frame:
    dim: int
    pivots: tuple[int, ...]
    equations: tuple[Vector, ...]
    facets: tuple[tuple[Vector, frozenset], ...]  # ambient normal, tight generator indices
    projected_facets: tuple[Vector, ...]


def _frame(vectors: Sequence[Vector], d: int) -> _Frame:
    pivots = tuple(pivot_columns(vectors)) if vectors else ()
    k = len(pivots)
    equations = tuple(kernel_basis(vectors, d)) if vectors else tuple(
        tuple(int(i == j) for j in range(d)) for i in range(d))
    if k == 0:
        return _Frame(0, pivots, equations, (), ())
    proj = [tuple(v[c] for c in pivots) for v in vectors]
    found = kernels.full_dim_facets(proj, k)
    facets = []
    projected = []
    for normal, tight in found:
        amb = [0] * d
        for c, val in zip(pivots, normal):
            amb[c] = val
        facets.append((tuple(amb), frozenset(tight)))
        projected.append(normal)
    return _Frame(k, pivots, equations, tuple(facets), tuple(projected))


class Cone:
    """Rational polyhedral cone given by primitive extremal ray generators.

    Rays are normalized to primitive vectors on input. Proportional rays and
    rays that are not extremal are rejected. Cones containing a line are
    rejected unless ``strongly_convex=False`` is passed.
    """

    def __init__(self, rays: Iterable[Sequence[int]], rank: int | None = None, *,
                 strongly_convex: bool = True):
        rays = [as_vector(r) for r in rays]
        if rank is None:
            if not rays:
                raise DimensionError("rank is required for a cone without rays")
            rank = len(rays[0])
        if any(len(r) != rank for r in rays):
            raise DimensionError(f"ray of wrong length for rank {rank}")
        if any(not any(r) for r in rays):
            raise PreconditionError("zero vector is not a ray")
        rays = [primitive(r) for r in rays]
        if len(set(rays)) != len(rays):
            raise PreconditionError("duplicate ray generators")
        self.rank = rank
        self.rays: tuple[Vector, ...] = tuple(rays)
        fr = _frame(self.rays, rank)
        self.dim = fr.dim
        self.equations = fr.equations
        self.facets = fr.facets
        self._projected = fr.projected_facets
        self.is_strongly_convex = (
            rank_of(list(self.equations) + [n for n, _ in self.facets]) == rank
            if self.dim else True)
        if strongly_convex and not self.is_strongly_convex:
            raise PreconditionError("cone contains a line (not strongly convex)")
        if self.is_strongly_convex:
            for i, r in enumerate(self.rays):
                tight = [p for p, (_, t) in zip(self._projected, self.facets) if i in t]
                if rank_of(tight) < self.dim - 1:
                    raise PreconditionError(f"ray {list(r)} is not extremal")

    # -- basic predicates -------------------------------------------------
    @property
    def nrays(self) -> int:
        return len(self.rays)

    def is_full_dimensional(self) -> bool:
        return self.dim == self.rank

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return self.rank == other.rank and set(self.rays) == set(other.rays)

    def __hash__(self):
        return hash((self.rank, frozenset(self.rays)))

    def __repr__(self):
        return f"Cone({[list(r) for r in self.rays]}, rank={self.rank})"

    def contains(self, v: Sequence[int]) -> bool:
        v = as_vector(v)
        if any(sum(a * b for a, b in zip(e, v)) for e in self.equations):
            return False
        return all(sum(a * b for a, b in zip(n, v)) >= 0 for n, _ in self.facets)

    def in_relative_interior(self, v: Sequence[int]) -> bool:
        v = as_vector(v)
        return self.contains(v) and all(sum(a * b for a, b in zip(n, v)) > 0 for n, _ in self.facets)

    # -- faces --------------------------------------------------------------
    def face_closure(self, subset: Iterable[int]) -> frozenset:
        """Smallest face (as a set of ray indices) containing the given rays."""
        s = frozenset(subset)
        out = frozenset(range(self.nrays))
        for _, tight in self.facets:
            if s <= tight:
                out &= tight
        return out

    def is_face(self, subset: Iterable[int]) -> bool:
        s = frozenset(subset)
        return self.face_closure(s) == s

    def faces(self) -> list[frozenset]:
        """All faces as ray-index sets, including the apex (empty set) and the cone."""
        top = frozenset(range(self.nrays))
        seen = {top}
        frontier = [top]
        while frontier:
            nxt = []
            for f in frontier:
                for _, tight in self.facets:
                    g = self.face_closure(f & tight)
                    if g != f and g not in seen:
                        seen.add(g)
                        nxt.append(g)
            frontier = nxt
        if self.is_strongly_convex:
            seen.add(frozenset())
        return sorted(seen, key=lambda f: (len(f), sorted(f)))

    def face_dim(self, subset: Iterable[int]) -> int:
        return rank_of([self.rays[i] for i in subset])

    def subcone(self, subset: Iterable[int]) -> Cone:
        return Cone([self.rays[i] for i in sorted(subset)], self.rank)

    def to_json(self) -> dict:
        return {"rank": self.rank, "rays": [list(r) for r in self.rays]}

    @classmethod
    def from_json(cls, data: Mapping) -> Cone:
        rays = [as_vector(r) for r in data["rays"]]
        return cls(rays, int(data["rank"]) if "rank" in data else None)


def rank_of(vectors: Sequence[Sequence[int]]) -> int:
    return rank(vectors) if vectors else 0


def dual_cone(sigma: Cone) -> Cone:
    """``{m : <m, v> >= 0 for all v in sigma}`` for a full-dimensional pointed cone."""
    if not sigma.is_strongly_convex:
        raise UnsupportedError("dual of a cone containing a line is not full-dimensional")
    if not sigma.is_full_dimensional():
        raise UnsupportedError(
            f"cone of dimension {sigma.dim} in rank {sigma.rank}: its dual contains a line")
    return Cone([n for n, _ in sigma.facets], sigma.rank)


def is_simplicial(sigma: Cone) -> bool:
    return sigma.nrays == sigma.dim


def cone_multiplicity(sigma: Cone) -> int:
    """Index of the lattice spanned by the rays in the saturated span lattice."""
    if not is_simplicial(sigma):
        raise PreconditionError(
            f"multiplicity needs a simplicial cone ({sigma.nrays} rays, dimension {sigma.dim})")
    if not sigma.rays:
        return 1
    return saturation_index(sigma.rays)


def triangulate(sigma: Cone) -> list[Cone]:
    """Placing triangulation in ray order; uses no new rays."""
    return [sigma.subcone(s) for s in placing_triangulation(sigma.rays, sigma.rank)]


def placing_triangulation(rays: Sequence[Vector], d: int) -> list[tuple[int, ...]]:
    """Simplices (as sorted index tuples) of the placing triangulation of
    ``cone(rays)``; every ray must be extremal in the cone of all rays."""
    simplices: list[tuple[int, ...]] = []
    cur_rank = 0
    for i, r in enumerate(rays):
        if not simplices:
            simplices = [(i,)]
            cur_rank = 1
            continue
        used = list(rays[:i])
        if rank_of(used + [r]) > cur_rank:
            simplices = [s + (i,) for s in simplices]
            cur_rank += 1
            continue
        span_eqs = kernel_basis(used, d)
        count: dict[tuple[int, ...], list] = {}
        for s in simplices:
            for o in s:
                f = tuple(x for x in s if x != o)
                count.setdefault(f, []).append(o)
        new = []
        for f, opps in count.items():
            if len(opps) != 1:
                continue
            normal = _normal_in_span([rays[j] for j in f], span_eqs, d)
            o = rays[opps[0]]
            side = _dot(normal, o)
            if side < 0:
                normal = tuple(-c for c in normal)
            if _dot(normal, r) < 0:
                new.append(tuple(sorted(f + (i,))))
        simplices.extend(new)
    return sorted(simplices)


def _normal_in_span(face_rays, span_eqs, d) -> Vector:
    rows = [tuple(v) for v in face_rays] + [tuple(e) for e in span_eqs]
    ker = kernel_basis(rows, d)
    if len(ker) != 1:
        raise PreconditionError("degenerate simplex in triangulation")
    return ker[0]


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def quotient_cone(tau: Cone, sigma: Cone) -> tuple[Cone, list[Vector]]:
    """Image of ``sigma`` in ``N / (N ∩ span tau)``.

    Returns the quotient cone and the projection matrix ``P`` (rows). The rows
    of ``P`` are a basis of ``tau^perp ∩ M``, so a quotient character ``c``
    corresponds to ``sum(c_i * P[i])``.
    """
    if tau.rank != sigma.rank:
        raise DimensionError("tau and sigma live in different lattices")
    idx = {r: i for i, r in enumerate(sigma.rays)}
    try:
        sub = frozenset(idx[r] for r in tau.rays)
    except KeyError:
        raise PreconditionError("tau is not a face of sigma (ray not in sigma)") from None
    if not sigma.is_face(sub):
        raise PreconditionError("tau is not a face of sigma")
    P = quotient_projection(list(tau.rays), sigma.rank)
    images = []
    for i, v in enumerate(sigma.rays):
        if i in sub:
            continue
        w = primitive(tuple(_dot(row, v) for row in P))
        if w not in images:
            images.append(w)
    q = len(P)
    if images:
        fr = _frame(images, q)
        keep = []
        for i, w in enumerate(images):
            tight = [p for p, (_, t) in zip(fr.projected_facets, fr.facets) if i in t]
            if rank_of(tight) >= fr.dim - 1:
                keep.append(w)
        images = keep
    return Cone(images, q), P


# -- fans ---------------------------------------------------------------------


@dataclass
class FanReport:
    complete: bool
    defects: list[str] = field(default_factory=list)

    @property
    def label(self) -> str:
        if self.complete:
            return "complete (certified)"
        return "defective" if self.defects else "incomplete"

    def to_json(self) -> dict:
        return {"label": self.label, "complete": self.complete, "defects": list(self.defects)}


class Fan:
    """Fan given by a global ray list and maximal cones as ray-index sets."""

    def __init__(self, rank: int, rays: Sequence[Sequence[int]], max_cones: Sequence[Iterable[int]]):
        self.rank = int(rank)
        self.rays: tuple[Vector, ...] = tuple(primitive(as_vector(r)) for r in rays)
        if any(len(r) != self.rank for r in self.rays):
            raise DimensionError(f"fan ray of wrong length for rank {self.rank}")
        if any(not any(r) for r in self.rays):
            raise PreconditionError("zero vector is not a ray")
        if len(set(self.rays)) != len(self.rays):
            raise PreconditionError("duplicate fan rays")
        self.max_cones: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(int(i) for i in c)) for c in max_cones)
        for c in self.max_cones:
            if any(i < 0 or i >= len(self.rays) for i in c):
                raise PreconditionError(f"cone {list(c)} references a missing ray")
            if len(set(c)) != len(c):
                raise PreconditionError(f"cone {list(c)} repeats a ray")
        self._cones: dict[int, Cone] = {}

    def cone(self, j: int) -> Cone:
        if j not in self._cones:
            self._cones[j] = Cone([self.rays[i] for i in self.max_cones[j]], self.rank)
        return self._cones[j]

    def local_to_global(self, j: int, subset: Iterable[int]) -> frozenset:
        c = self.max_cones[j]
        return frozenset(c[i] for i in subset)

    def global_to_local(self, j: int, subset: Iterable[int]) -> frozenset:
        pos = {g: i for i, g in enumerate(self.max_cones[j])}
        return frozenset(pos[g] for g in subset)

    def all_cones(self) -> list[frozenset]:
        """Every cone of the fan (faces of maximal cones) as global ray-index sets."""
        out = set()
        for j in range(len(self.max_cones)):
            for f in self.cone(j).faces():
                out.add(self.local_to_global(j, f))
        return sorted(out, key=lambda f: (len(f), sorted(f)))

    def is_simplicial(self) -> bool:
        return all(is_simplicial(self.cone(j)) for j in range(len(self.max_cones)))

    def to_json(self) -> dict:
        return {"rank": self.rank, "rays": [list(r) for r in self.rays],
                "max_cones": [list(c) for c in self.max_cones]}

    @classmethod
    def from_json(cls, data: Mapping) -> Fan:
        return cls(int(data["rank"]), [as_vector(r) for r in data["rays"]], data["max_cones"])

    def __repr__(self):
        return f"Fan(rank={self.rank}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"


def fan_validate(fan: Fan) -> FanReport:
    """Face-intersection checks plus a facet-pairing completeness certificate."""
    defects = []
    cones = {}
    for j, c in enumerate(fan.max_cones):
        try:
            cones[j] = fan.cone(j)
        except PreconditionError as exc:
            defects.append(f"cone {j} {list(c)}: {exc}")
    for a, b in combinations(sorted(cones), 2):
        msg = _intersection_defect(fan, a, b, cones[a], cones[b])
        if msg:
            defects.append(msg)
    complete = not defects and bool(cones)
    if cones:
        lowdim = [j for j, c in cones.items() if not c.is_full_dimensional()]
        for j in lowdim:
            defects.append(f"cone {j} {list(fan.max_cones[j])} is not full-dimensional")
        if lowdim:
            complete = False
        else:
            shared: dict[frozenset, list[int]] = {}
            for j, c in cones.items():
                for _, tight in c.facets:
                    shared.setdefault(fan.local_to_global(j, tight), []).append(j)
            for facet, owners in sorted(shared.items(), key=lambda t: sorted(t[0])):
                if len(owners) == 1:
                    defects.append(f"facet {sorted(facet)} shared once (cone {owners[0]})")
                    complete = False
                elif len(owners) > 2:
                    defects.append(f"facet {sorted(facet)} shared by {len(owners)} cones")
                    complete = False
            # facet-adjacency connectivity
            adj = {j: set() for j in cones}
            for owners in shared.values():
                for x, y in combinations(owners, 2):
                    adj[x].add(y)
                    adj[y].add(x)
            start = next(iter(cones))
            seen = {start}
            stack = [start]
            while stack:
                for y in adj[stack.pop()]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != len(cones):
                defects.append("maximal cones are not connected through facets")
                complete = False
    else:
        defects.append("fan has no maximal cones")
    return FanReport(complete=complete and not defects, defects=defects)


def _intersection_defect(fan: Fan, a: int, b: int, ca: Cone, cb: Cone) -> str | None:
    common = set(fan.max_cones[a]) & set(fan.max_cones[b])
    la = fan.global_to_local(a, common)
    lb = fan.global_to_local(b, common)
    if not ca.is_face(la) or not cb.is_face(lb):
        return f"cones {a} and {b}: common rays {sorted(common)} do not form a common face"
    common_rays = {fan.rays[i] for i in common}
    for r in intersection_rays(ca, cb):
        if r not in common_rays:
            return (f"cones {a} and {b}: non-face intersection "
                    f"(ray {list(r)} of the intersection is not a common ray)")
    return None


def intersection_rays(ca: Cone, cb: Cone) -> list[Vector]:
    """Extreme rays of ``ca ∩ cb`` (both pointed), by brute-force vertex enumeration."""
    d = ca.rank
    ineqs = [n for n, _ in ca.facets] + [n for n, _ in cb.facets]
    for e in list(ca.equations) + list(cb.equations):
        ineqs.append(tuple(e))
        ineqs.append(tuple(-c for c in e))
    if d == 1:
        cands = [(1,), (-1,)]
    else:
        cands = set()
        for sub in combinations(ineqs, d - 1):
            n = cofactor_normal(sub)
            if any(n):
                p = primitive(n)
                cands.add(p)
                cands.add(tuple(-c for c in p))
        cands = sorted(cands)
    out = []
    for v in cands:
        if all(_dot(h, v) >= 0 for h in ineqs):
            tight = [h for h in ineqs if _dot(h, v) == 0]
            if rank_of(tight) >= d - 1 and v not in out:
                out.append(v)
    return out


# -- polytopes ----------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    vertices: frozenset  # vertex indices
    dim: int


class Polytope:
    """Lattice polytope with exact facet inequalities and full face lattice."""

    def __init__(self, vertices: Sequence[Sequence[int]], rank: int | None = None):
        verts = [as_vector(v) for v in vertices]
        if not verts:
            raise PreconditionError("a polytope needs at least one vertex")
        self.rank = rank if rank is not None else len(verts[0])
        if any(len(v) != self.rank for v in verts):
            raise DimensionError("vertex of wrong length")
        if len(set(verts)) != len(verts):
            raise PreconditionError("duplicate vertices")
        hull = _hull_frame(verts, self.rank)
        nonext = [verts[i] for i in range(len(verts)) if i not in hull.extreme]
        if nonext:
            raise PreconditionError(f"point {list(nonext[0])} is not a vertex")
        self.vertices: tuple[Vector, ...] = tuple(verts)
        self.dim = hull.frame.dim - 1
        self._cone_facets = hull.frame.facets
        self._projected = hull.frame.projected_facets
        # facet (a, b): a . x + b >= 0
        self.facets: tuple[tuple[Vector, int], ...] = tuple(
            (n[:-1], n[-1]) for n, _ in self._cone_facets)
        self.equations: tuple[tuple[Vector, int], ...] = tuple(
            (e[:-1], e[-1]) for e in hull.frame.equations)
        self._faces = None

    def _closure(self, s: frozenset) -> frozenset:
        out = frozenset(range(len(self.vertices)))
        for _, tight in self._cone_facets:
            if s <= tight:
                out &= tight
        return out

    @property
    def faces(self) -> list[Face]:
        """All faces from the empty face (dim -1) up to the polytope itself."""
        if self._faces is None:
            top = frozenset(range(len(self.vertices)))
            seen = {top}
            frontier = [top]
            while frontier:
                nxt = []
                for f in frontier:
                    for _, tight in self._cone_facets:
                        g = self._closure(f & tight)
                        if g not in seen:
                            seen.add(g)
                            nxt.append(g)
                frontier = nxt
            seen.add(frozenset())
            faces = [Face(f, rank_of([self.vertices[i] + (1,) for i in f]) - 1) for f in seen]
            self._faces = sorted(faces, key=lambda f: (f.dim, sorted(f.vertices)))
        return self._faces

    def faces_of_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    def f_vector(self) -> list[int]:
        """Proper face counts for dimensions 0..dim-1."""
        return [len(self.faces_of_dim(k)) for k in range(self.dim)]

    def edges_at(self, v: int) -> int:
        return sum(1 for f in self.faces_of_dim(1) if v in f.vertices)

    def contains(self, x: Sequence) -> bool:
        from fractions import Fraction
        x = [Fraction(c) for c in x]
        ok = all(sum(a * c for a, c in zip(n, x)) + b >= 0 for n, b in self.facets)
        return ok and all(sum(a * c for a, c in zip(n, x)) + b == 0 for n, b in self.equations)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "vertices": [list(v) for v in self.vertices],
            "dim": self.dim,
            "facets": [[list(n), b] for n, b in self.facets],
            "f_vector": self.f_vector(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Polytope:
        return cls([as_vector(v) for v in data["vertices"]], data.get("rank"))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)})"


@dataclass
class _Hull:
    frame: _Frame
    extreme: set


def _hull_frame(points: Sequence[Vector], d: int) -> _Hull:
    lifted = [tuple(p) + (1,) for p in points]
    fr = _frame(lifted, d + 1)
    extreme = set()
    for i in range(len(points)):
        tight = [p for p, (_, t) in zip(fr.projected_facets, fr.facets) if i in t]
        if rank_of(tight) >= fr.dim - 1:
            extreme.add(i)
    return _Hull(fr, extreme)


def convex_hull(points: Iterable[Sequence[int]]) -> Polytope:
    """Convex hull of integer points; non-extreme points are discarded."""
    pts = []
    for p in points:
        p = as_vector(p)
        if p not in pts:
            pts.append(p)
    if not pts:
        raise PreconditionError("convex hull of no points")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionError("points of mismatched length")
    hull = _hull_frame(pts, d)
    return Polytope([pts[i] for i in sorted(hull.extreme)], d)


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
