"""Combinatorial models of reductive monoids with zero.

A datum is a Weyl group of classical type together with dominant lattice
points. The closure of the maximal torus is modelled as the cone over the
polytope ``P = conv(W . points)``:

* types B, C, D act on ``Z^r`` and a height coordinate 1 is appended, so the
  cone lives in ``Z^{r+1}``;
* type ``A_r`` acts on ``Z^{r+1}`` by permuting coordinates. No height is
  appended; instead every point must have the same positive coordinate sum,
  which then plays the role of the height (this is the torus of ``M_{r+1}``).

Idempotents of the torus closure correspond to faces of the cone, rank-one
idempotents to vertices of ``P``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .errors import HypothesisError, InputError, PropertyViolation
from .lattice import Vector, as_vector
from .polyhedral import Face, Polytope, convex_hull, rank_of

FAMILIES = ("A", "B", "C", "D")
MAX_RANK = {"A": 5, "B": 4, "C": 4, "D": 4}

# Signed permutation encoding: g = (g_1..g_n) with g_i = +-(j+1) means
# (g.x)_i = sign(g_i) * x_j.


def _compose(g: tuple, h: tuple) -> tuple:
    return tuple(h[abs(a) - 1] if a > 0 else -h[abs(a) - 1] for a in g)


def _act(g: tuple, x: Sequence) -> tuple:
    return tuple(x[a - 1] if a > 0 else -x[-a - 1] for a in g)


def _matrix(g: tuple) -> tuple[tuple[int, ...], ...]:
    n = len(g)
    return tuple(tuple((1 if a > 0 else -1) if abs(a) - 1 == j else 0 for j in range(n)) for a in g)


def ambient_dim(family: str, rank: int) -> int:
    return rank + 1 if family == "A" else rank


def group_order(family: str, rank: int) -> int:
    if family == "A":
        return factorial(rank + 1)
    if family in ("B", "C"):
        return 2 ** rank * factorial(rank)
    return 2 ** (rank - 1) * factorial(rank)


def root_count(family: str, rank: int) -> int:
    if family == "A":
        return rank * (rank + 1)
    if family in ("B", "C"):
        return 2 * rank * rank
    return 2 * rank * (rank - 1)


def _generators(family: str, rank: int) -> list[tuple]:
    n = ambient_dim(family, rank)
    ident = list(range(1, n + 1))
    gens = []
    for i in range(n - 1):
        g = ident[:]
        g[i], g[i + 1] = g[i + 1], g[i]
        gens.append(tuple(g))
    if family in ("B", "C"):
        g = ident[:]
        g[-1] = -g[-1]
        gens.append(tuple(g))
    elif family == "D":
        g = ident[:]
        g[-2], g[-1] = -ident[-1], -ident[-2]
        gens.append(tuple(g))
    return gens


def simple_root_pairings(family: str, rank: int, x: Sequence) -> list:
    """Pairings of ``x`` with the simple coroots; all >= 0 iff ``x`` is dominant."""
    n = ambient_dim(family, rank)
    out = [x[i] - x[i + 1] for i in range(n - 1)]
    if family in ("B", "C"):
        out.append(x[n - 1])
    elif family == "D":
        out.append(x[n - 2] + x[n - 1])
    return out


def is_dominant(family: str, rank: int, x: Sequence) -> bool:
    return all(p >= 0 for p in simple_root_pairings(family, rank, x))


@dataclass(frozen=True)
class WeylDatum:
    family: str
    rank: int
    elements: tuple[tuple[int, ...], ...]  # signed permutations, identity first

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def ambient(self) -> int:
        return ambient_dim(self.family, self.rank)

    @property
    def matrices(self) -> list[tuple[tuple[int, ...], ...]]:
        return [_matrix(g) for g in self.elements]

    def orbit(self, x: Sequence[int]) -> list[Vector]:
        return sorted({_act(g, x) for g in self.elements}, reverse=True)

    def stabilizer(self, x: Sequence[int]) -> list[tuple[int, ...]]:
        x = tuple(x)
        return [g for g in self.elements if _act(g, x) == x]

    def to_json(self) -> dict:
        return {"family": self.family, "rank": self.rank, "order": self.order}


_WEYL_CACHE: dict[tuple[str, int], WeylDatum] = {}


def weyl_enumerate(family: str, rank: int) -> WeylDatum:
    """All elements of the Weyl group, by breadth-first closure from the
    simple reflections."""
    family = str(family).upper()
    if family not in FAMILIES:
        raise InputError(f"unknown Weyl family {family!r}; expected one of A, B, C, D")
    rank = int(rank)
    lowest = 2 if family == "D" else 1
    if rank < lowest:
        raise InputError(f"type {family} needs rank >= {lowest}")
    if rank > MAX_RANK[family]:
        raise InputError(f"type {family}{rank} exceeds the size guard (rank <= {MAX_RANK[family]})")
    key = (family, rank)
    if key in _WEYL_CACHE:
        return _WEYL_CACHE[key]
    gens = _generators(family, rank)
    ident = tuple(range(1, ambient_dim(family, rank) + 1))
    seen = {ident: None}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = _compose(g, s)
            if h not in seen:
                seen[h] = None
                queue.append(h)
    elements = tuple(seen)
    # closed under right multiplication by generators, hence a group
    if any(_compose(g, s) not in seen for g in elements for s in gens):
        raise PropertyViolation("Weyl enumeration is not closed")
    if len(elements) != group_order(family, rank):
        raise PropertyViolation(
            f"{family}{rank}: enumerated {len(elements)} elements, expected {group_order(family, rank)}")
    w = WeylDatum(family, rank, elements)
    _WEYL_CACHE[key] = w
    return w


@dataclass
class MonoidDatum:
    weyl: WeylDatum
    dominant_points: tuple[Vector, ...]
    dim_M_override: int | None = None
    name: str = ""

    def __post_init__(self):
        pts = tuple(as_vector(p) for p in self.dominant_points)
        if not pts:
            raise InputError("a monoid datum needs at least one dominant point")
        n = self.weyl.ambient
        fam, r = self.weyl.family, self.weyl.rank
        for p in pts:
            if len(p) != n:
                raise InputError(f"dominant point {list(p)} should have {n} coordinates for {fam}{r}")
            if not is_dominant(fam, r, p):
                raise InputError(f"point {list(p)} is not dominant for {fam}{r}")
        if fam == "A":
            sums = {sum(p) for p in pts}
            if len(sums) != 1 or next(iter(sums)) <= 0:
                raise InputError(
                    "type A points must share one positive coordinate sum "
                    "(otherwise the monoid has no zero)")
        self.dominant_points = pts
        if self.polytope_points_rank() != self.dim_T:
            raise InputError(
                f"cone over the weight polytope has dimension {self.polytope_points_rank()}, "
                f"expected {self.dim_T}: torus closure is not full")

    @property
    def dim_T(self) -> int:
        return self.weyl.rank + 1

    def lift(self, v: Sequence[int]) -> Vector:
        return tuple(v) if self.weyl.family == "A" else tuple(v) + (1,)

    def orbit_points(self) -> list[Vector]:
        pts = set()
        for p in self.dominant_points:
            pts.update(self.weyl.orbit(p))
        return sorted(pts, reverse=True)

    def polytope_points_rank(self) -> int:
        return rank_of([self.lift(v) for v in self.orbit_points()])

    def to_json(self) -> dict:
        out = {"weyl": {"family": self.weyl.family, "rank": self.weyl.rank},
               "dominant_points": [list(p) for p in self.dominant_points]}
        if self.dim_M_override is not None:
            out["dim_M"] = self.dim_M_override
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> MonoidDatum:
        try:
            w = data["weyl"]
            weyl = weyl_enumerate(w["family"], w["rank"])
            pts = [as_vector(p) for p in data["dominant_points"]]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed monoid JSON: missing or bad field {exc}") from None
        dm = data.get("dim_M")
        return cls(weyl, tuple(pts), None if dm is None else int(dm), data.get("name", ""))


@dataclass
class MonoidReport:
    dim_T: int
    E1_count: int
    R1_count: int
    dim_M: int
    rational_cell_b: bool
    rational_cell_f: bool
    equivalence_ok: bool
    quasismooth: bool
    per_vertex_edge_counts: dict
    Lambda_ranks: list[int]
    dim_M_table: int = 0
    dim_M_mismatch: bool = False
    orbits: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "dim_T": self.dim_T,
            "E1_count": self.E1_count,
            "R1_count": self.R1_count,
            "dim_M": self.dim_M,
            "dim_M_table": self.dim_M_table,
            "dim_M_mismatch": self.dim_M_mismatch,
            "rational_cell_b": self.rational_cell_b,
            "rational_cell_f": self.rational_cell_f,
            "equivalence_ok": self.equivalence_ok,
            "quasismooth": self.quasismooth,
            "per_vertex_edge_counts": {k: v for k, v in sorted(self.per_vertex_edge_counts.items())},
            "Lambda_ranks": list(self.Lambda_ranks),
            "orbits": self.orbits,
        }


def orbit_polytope(datum: MonoidDatum) -> Polytope:
    """Convex hull of the W-orbits, with non-vertices dropped."""
    return convex_hull(datum.orbit_points())


def vertex_orbits(datum: MonoidDatum) -> list[dict]:
    """Vertices of ``P`` grouped into W-orbits, with stabilizer orders.

    The stabilizer of a vertex is the centralizer ``C_W(e)`` of the matching
    rank-one idempotent; it is reported but plays no role in any verdict.
    """
    P = orbit_polytope(datum)
    verts = set(P.vertices)
    W = datum.weyl
    out = []
    done: set = set()
    for v in sorted(verts, reverse=True):
        if v in done:
            continue
        orb = W.orbit(v)
        done.update(orb)
        stab = len(W.stabilizer(v))
        if len(orb) * stab != W.order:
            raise PropertyViolation(f"orbit-stabilizer fails at {list(v)}")
        rep = next(u for u in orb if is_dominant(W.family, W.rank, u))
        out.append({"representative": list(rep), "orbit_size": len(orb), "stabilizer_order": stab})
    return sorted(out, key=lambda o: o["representative"], reverse=True)


def rank1_count(datum: MonoidDatum) -> int:
    """``sum over vertices v of [W : Stab(v)]``."""
    W = datum.weyl
    total = 0
    for v in orbit_polytope(datum).vertices:
        total += W.order // len(W.stabilizer(v))
    return total


def dim_M(datum: MonoidDatum) -> int:
    """``dim T + #roots``, or the user's override when one was given."""
    if datum.dim_M_override is not None:
        return datum.dim_M_override
    return dim_M_table(datum)


def dim_M_table(datum: MonoidDatum) -> int:
    return datum.dim_T + root_count(datum.weyl.family, datum.weyl.rank)


def _barycenter(P: Polytope, face: Face) -> tuple[Fraction, ...]:
    k = len(face.vertices)
    return tuple(sum(Fraction(P.vertices[i][c]) for i in face.vertices) / k for c in range(P.rank))


def cross_section_lattice(datum: MonoidDatum) -> list[tuple[Face | None, int]]:
    """Faces of the cone over ``P`` meeting the dominant chamber, with ranks.

    The apex appears as ``(None, 0)``; a face ``F`` of ``P`` gives the cone
    face of rank ``dim F + 1``. A face is taken iff its barycenter is dominant;
    since the barycenter lies in the relative interior and W permutes faces,
    this picks exactly one face per W-orbit.
    """
    P = orbit_polytope(datum)
    fam, r = datum.weyl.family, datum.weyl.rank
    out: list[tuple[Face | None, int]] = [(None, 0)]
    for f in P.faces:
        if f.dim < 0:
            continue
        if is_dominant(fam, r, _barycenter(P, f)):
            out.append((f, f.dim + 1))
    return out


def face_orbit_count(datum: MonoidDatum) -> int:
    """Number of W-orbits on the nonempty faces of ``P``, plus the apex."""
    P = orbit_polytope(datum)
    index = {v: i for i, v in enumerate(P.vertices)}
    W = datum.weyl
    seen: set = set()
    orbits = 0
    for f in P.faces:
        if f.dim < 0 or f.vertices in seen:
            continue
        orbits += 1
        for g in W.elements:
            seen.add(frozenset(index[_act(g, P.vertices[i])] for i in f.vertices))
    return orbits + 1


def quasismooth_check(datum: MonoidDatum) -> dict:
    """Simplicity of the vertex figures: every vertex of ``P`` lies on exactly
    ``dim P`` edges."""
    P = orbit_polytope(datum)
    per_vertex = {}
    for i, v in enumerate(P.vertices):
        per_vertex[",".join(str(c) for c in v)] = P.edges_at(i)
    per_orbit = []
    W = datum.weyl
    for o in vertex_orbits(datum):
        counts = {per_vertex[",".join(str(c) for c in u)] for u in W.orbit(o["representative"])}
        if len(counts) != 1:
            raise PropertyViolation(f"edge counts vary along the orbit of {o['representative']}")
        e = counts.pop()
        per_orbit.append({"representative": o["representative"], "edges": e, "ok": e == P.dim})
    return {
        "dim_P": P.dim,
        "per_vertex_edge_counts": per_vertex,
        "per_orbit": per_orbit,
        "quasismooth": all(o["ok"] for o in per_orbit),
    }


def monoid_cell_check(datum: MonoidDatum) -> MonoidReport:
    P = orbit_polytope(datum)
    e1 = len(P.vertices)
    r1 = rank1_count(datum)
    dm = dim_M(datum)
    b = datum.dim_T == e1
    f = dm == r1
    qs = quasismooth_check(datum)
    lam = cross_section_lattice(datum)
    return MonoidReport(
        dim_T=datum.dim_T,
        E1_count=e1,
        R1_count=r1,
        dim_M=dm,
        rational_cell_b=b,
        rational_cell_f=f,
        equivalence_ok=b == f,
        quasismooth=qs["quasismooth"],
        per_vertex_edge_counts=qs["per_vertex_edge_counts"],
        Lambda_ranks=sorted(rk for _, rk in lam),
        dim_M_table=dim_M_table(datum),
        dim_M_mismatch=dm != dim_M_table(datum),
        orbits=vertex_orbits(datum),
    )


def embedding_chow_rank(datum: MonoidDatum) -> int:
    """Total rational Chow rank of the projective embedding: one class per
    torus-fixed point, i.e. ``|R_1|``. Needs a quasismooth monoid."""
    qs = quasismooth_check(datum)
    if not qs["quasismooth"]:
        bad = next(o for o in qs["per_orbit"] if not o["ok"])
        raise HypothesisError(
            f"not quasismooth: vertex ({','.join(map(str, bad['representative']))}) has {bad['edges']} edges, "
            f"expected {qs['dim_P']} (each minimal idempotent must see a rational cell)")
    return rank1_count(datum)


def rook_rank1_count(n: int) -> int:
    """Brute force: rank-one 0/1 n x n matrices with at most one 1 per row and
    column (rank-one elements of the rook monoid)."""
    from itertools import product

    count = 0
    for bits in product((0, 1), repeat=n * n):
        rows = [bits[i * n:(i + 1) * n] for i in range(n)]
        if any(sum(r) > 1 for r in rows):
            continue
        if any(sum(r[j] for r in rows) > 1 for j in range(n)):
            continue
        if sum(bits) == 1:
            count += 1
    return count


def matrix_monoid_datum(n: int) -> MonoidDatum:
    """The torus model of ``M_n``: type ``A_{n-1}`` with the point ``e_1``."""
    return MonoidDatum(weyl_enumerate("A", n - 1), (tuple([1] + [0] * (n - 1)),), name=f"M{n}")
