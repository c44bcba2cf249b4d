"""Białynicki-Birula cells, filtrations and localized Chow bases for complete
simplicial toric varieties.

Sign convention: a tangent coordinate of weight ``u`` at a fixed point is
attracting for ``lam`` iff ``<lam, u> > 0``. On P^1 this puts the open cell at
the cone containing ``lam``.

Fixed points are indexed by maximal cones (their position in ``fan.max_cones``).
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .charfrac import CharFraction, frac_sum
from .eqmult import eq_mult
from .errors import NotGenericError, PreconditionError, PropertyViolation
from .lattice import Vector, as_vector, lex_sign, pairing
from .polyhedral import Cone, Fan, fan_validate, quotient_cone


@dataclass(frozen=True)
class CellReport:
    fixed_point: int
    cell_dim: int
    dense_cone: tuple[int, ...]  # global ray indices of tau
    closure_id: str
    attracting_weights: tuple[Vector, ...]
    repelling_weights: tuple[Vector, ...]
    max_cone: tuple[int, ...]
    assigned_cones: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "fixed_point": self.fixed_point,
            "cell_dim": self.cell_dim,
            "max_cone": list(self.max_cone),
            "dense_cone": list(self.dense_cone),
            "closure": self.closure_id,
            "attracting_weights": [list(w) for w in self.attracting_weights],
            "repelling_weights": [list(w) for w in self.repelling_weights],
            "assigned_cones": [list(c) for c in self.assigned_cones],
        }


@dataclass(frozen=True)
class Filtration:
    order: tuple[int, ...]  # fixed point ids, closed cells first
    pieces: tuple[frozenset, ...]  # cumulative unions of assigned cones

    def position(self) -> dict[int, int]:
        return {fp: k for k, fp in enumerate(self.order)}

    def to_json(self) -> dict:
        return {
            "order": list(self.order),
            "pieces": [sorted(sorted(c) for c in p) for p in self.pieces],
        }


class LocalizedClass:
    """An equivariant class stored by its multiplicities at the fixed points."""

    def __init__(self, entries: Mapping[int, CharFraction], rank: int, name: str = ""):
        self.entries = {k: v for k, v in entries.items() if not v.is_zero()}
        self.rank = rank
        self.name = name

    def __getitem__(self, fp: int) -> CharFraction:
        return self.entries.get(fp, CharFraction.zero(self.rank))

    def support(self) -> list[int]:
        return sorted(self.entries)

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self.entries.items()))
        return f"LocalizedClass({self.name or ''}{{{body}}})"


@dataclass(frozen=True)
class BasisMatrix:
    """Localized free basis. ``entries[a][b] = e_{x_order[b]}[Y_order[a]]``:
    row ``a`` is the class of the closure of cell ``order[a]``, column ``b`` the
    fixed point ``order[b]``; lower-triangular in filtration order."""

    order: tuple[int, ...]
    entries: tuple[tuple[CharFraction, ...], ...]
    cell_dims: tuple[int, ...]

    def entry(self, fixed_point: int, cell: int) -> CharFraction:
        pos = {fp: k for k, fp in enumerate(self.order)}
        return self.entries[pos[cell]][pos[fixed_point]]

    def diagonal(self) -> list[CharFraction]:
        return [self.entries[k][k] for k in range(len(self.order))]

    def is_lower_triangular(self) -> bool:
        n = len(self.order)
        return all(self.entries[a][b].is_zero() for a in range(n) for b in range(a + 1, n))

    def class_of(self, cell: int, rank: int) -> LocalizedClass:
        a = self.order.index(cell)
        return LocalizedClass({fp: self.entries[a][b] for b, fp in enumerate(self.order)},
                              rank, name=f"Y{cell}")

    def class_sums(self) -> list[CharFraction]:
        """Sum over fixed points of each basis class (row sums)."""
        return [frac_sum(row) for row in self.entries]

    def to_json(self) -> dict:
        return {
            "order": list(self.order),
            "cell_dims": list(self.cell_dims),
            "rows": "classes Y_j in filtration order",
            "columns": "fixed points x_i in filtration order",
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }


# -- fan data -----------------------------------------------------------------


@dataclass(frozen=True)
class _Local:
    rays: tuple[int, ...]  # global ray ids of the maximal cone
    weights: tuple[Vector, ...]  # weights[i] matched to rays[i]


def _require_complete_simplicial(fan: Fan):
    cached = getattr(fan, "_bb_ok", None)
    if cached is not None:
        return cached
    report = fan_validate(fan)
    if not report.complete:
        raise PreconditionError("fan is not complete: " + "; ".join(report.defects))
    bad = [j for j in range(len(fan.max_cones)) if fan.cone(j).nrays != fan.rank]
    if bad:
        raise PreconditionError(
            f"maximal cone {bad[0]} is not simplicial: its cells are not algebraic rational "
            "cells (more invariant curves than dimensions)")
    local = []
    for j, gl in enumerate(fan.max_cones):
        cone = fan.cone(j)
        matched = [None] * len(gl)
        for normal, tight in cone.facets:
            (missing,) = set(range(len(gl))) - set(tight)
            matched[missing] = normal
        local.append(_Local(tuple(gl), tuple(matched)))
    fan._bb_ok = local
    return local


def nongeneric_weights(lam: Sequence[int], fan: Fan) -> list[tuple[Vector, int]]:
    """All (weight, fixed point) pairs with ``<lam, weight> = 0``.

    Zero pairings on a wall show up as a pair of opposite weights at the two
    adjacent fixed points; lex-positive weights are listed first so reports
    name a canonical representative.
    """
    lam = as_vector(lam)
    out = []
    for j, loc in enumerate(_require_complete_simplicial(fan)):
        for u in loc.weights:
            if pairing(lam, u) == 0:
                out.append((u, j))
    return sorted(out, key=lambda t: (lex_sign(t[0]) < 0, t[1], t[0]))


def find_nongeneric(lam: Sequence[int], fan: Fan) -> tuple[Vector, int] | None:
    bad = nongeneric_weights(lam, fan)
    return bad[0] if bad else None


def is_generic(lam: Sequence[int], fan: Fan) -> bool:
    return find_nongeneric(lam, fan) is None


def _check_generic(lam, fan):
    lam = as_vector(lam)
    if len(lam) != fan.rank:
        raise PreconditionError(f"lambda has {len(lam)} entries but the fan has rank {fan.rank}")
    bad = find_nongeneric(lam, fan)
    if bad is not None:
        raise NotGenericError(bad[0], bad[1], lam)
    return lam


def bb_decomposition(fan: Fan, lam: Sequence[int]) -> list[CellReport]:
    """One cell per maximal cone, with the cones of the fan it contains."""
    local = _require_complete_simplicial(fan)
    lam = _check_generic(lam, fan)
    dense = []
    for loc in local:
        tau = tuple(sorted(r for r, u in zip(loc.rays, loc.weights) if pairing(lam, u) < 0))
        dense.append(tau)
    assigned: dict[int, list[tuple[int, ...]]] = {j: [] for j in range(len(local))}
    for c in fan.all_cones():
        owners = [j for j, loc in enumerate(local) if set(dense[j]) <= c <= set(loc.rays)]
        if len(owners) != 1:
            raise PropertyViolation(
                f"cone {sorted(c)} lies in {len(owners)} cells; cells must partition the fan")
        assigned[owners[0]].append(tuple(sorted(c)))
    cells = []
    for j, loc in enumerate(local):
        att = tuple(u for u in loc.weights if pairing(lam, u) > 0)
        rep = tuple(u for u in loc.weights if pairing(lam, u) < 0)
        cells.append(CellReport(
            fixed_point=j,
            cell_dim=len(att),
            dense_cone=dense[j],
            closure_id="V(" + ",".join(str(r) for r in dense[j]) + ")",
            attracting_weights=att,
            repelling_weights=rep,
            max_cone=loc.rays,
            assigned_cones=tuple(sorted(assigned[j], key=lambda c: (len(c), c))),
        ))
        if cells[-1].cell_dim != len(loc.rays) - len(dense[j]):
            raise PropertyViolation("cell dimension disagrees with the dense cone")
    return cells


def h_polynomial(fan: Fan, lam: Sequence[int]) -> list[int]:
    """``h[k]`` = number of k-dimensional cells."""
    cells = bb_decomposition(fan, lam)
    h = [0] * (fan.rank + 1)
    for c in cells:
        h[c.cell_dim] += 1
    return h


def build_filtration(cells: Sequence[CellReport]) -> Filtration:
    """Closed-first order: cell j comes after every fixed point of its closure."""
    by_id = {c.fixed_point: c for c in cells}
    after: dict[int, set[int]] = {c.fixed_point: set() for c in cells}
    indeg = {c.fixed_point: 0 for c in cells}
    for cj in cells:
        for ci in cells:
            if ci.fixed_point != cj.fixed_point and set(cj.dense_cone) <= set(ci.max_cone):
                after[ci.fixed_point].add(cj.fixed_point)
                indeg[cj.fixed_point] += 1
    heap = [(by_id[f].cell_dim, f) for f, k in indeg.items() if k == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, f = heapq.heappop(heap)
        order.append(f)
        for g in after[f]:
            indeg[g] -= 1
            if indeg[g] == 0:
                heapq.heappush(heap, (by_id[g].cell_dim, g))
    if len(order) != len(cells):
        raise PropertyViolation("closure relation has a cycle; lambda cannot be generic")
    pieces = []
    acc: set = set()
    for f in order:
        acc |= {frozenset(c) for c in by_id[f].assigned_cones}
        pieces.append(frozenset(acc))
    return Filtration(tuple(order), tuple(pieces))


def orbit_closure_multiplicity(fan: Fan, fixed_point: int, tau: Iterable[int]) -> CharFraction:
    """``e_x[V(tau)]`` at the fixed point of a maximal cone; 0 off the closure."""
    tau = frozenset(tau)
    sigma_rays = set(fan.max_cones[fixed_point])
    if not tau <= sigma_rays:
        return CharFraction.zero(fan.rank)
    sigma = fan.cone(fixed_point)
    t = Cone([fan.rays[i] for i in sorted(tau)], fan.rank)
    q, P = quotient_cone(t, sigma)
    return eq_mult(q).value.pullback(P, fan.rank)


def localized_basis_matrix(fan: Fan, lam: Sequence[int]) -> BasisMatrix:
    cells = bb_decomposition(fan, lam)
    filt = build_filtration(cells)
    by_id = {c.fixed_point: c for c in cells}
    rows = []
    for cell in filt.order:
        tau = by_id[cell].dense_cone
        rows.append(tuple(orbit_closure_multiplicity(fan, fp, tau) for fp in filt.order))
    return BasisMatrix(filt.order, tuple(rows), tuple(by_id[f].cell_dim for f in filt.order))


def fundamental_class(fan: Fan) -> LocalizedClass:
    _require_complete_simplicial(fan)
    return LocalizedClass({j: eq_mult(fan.cone(j)).value for j in range(len(fan.max_cones))},
                          fan.rank, name="X")


def point_class(fan: Fan, fixed_point: int) -> LocalizedClass:
    return LocalizedClass({fixed_point: CharFraction.constant(fan.rank, 1)}, fan.rank, name="pt")


def integrate(alpha: LocalizedClass, fan: Fan | None = None, *, check: bool = True) -> CharFraction:
    """Push forward to a point: the sum of the fixed-point entries.

    With ``check`` the result must be a constant (a genuine class integrates
    to its degree), otherwise :class:`PropertyViolation` is raised.
    """
    if fan is not None:
        n = len(fan.max_cones)
        if any(k < 0 or k >= n for k in alpha.entries):
            raise PreconditionError("class supported outside the fixed points of the fan")
    total = frac_sum(alpha.entries.values(), rank=alpha.rank)
    if check and not (total.is_polynomial() and total.numerator.is_constant()):
        raise PropertyViolation(f"integral {total} is not a constant")
    return total


def chow_ranks(fan: Fan, lam: Sequence[int]) -> dict:
    cells = bb_decomposition(fan, lam)
    filt = build_filtration(cells)
    h = [0] * (fan.rank + 1)
    for c in cells:
        h[c.cell_dim] += 1
    step_ranks = []
    for k, piece in enumerate(filt.pieces):
        # each filtered piece is a union of cells; its rank is the number of cells
        cells_in = sum(1 for f in filt.order[:k + 1])
        step_ranks.append(cells_in)
    additive = all(b - a == 1 for a, b in zip([0] + step_ranks, step_ranks))
    basis = localized_basis_matrix(fan, lam)
    diag_ok = all(not e.is_zero() for e in basis.diagonal())
    total = sum(h)
    nfixed = len(fan.max_cones)
    return {
        "ranks": h,
        "total": total,
        "fixed_points": nfixed,
        "free": total == nfixed and diag_ok and basis.is_lower_triangular(),
        "step_ranks": step_ranks,
        "rank_additive": additive,
        "triangular": basis.is_lower_triangular(),
        "diagonal_nonzero": diag_ok,
        "palindromic": h == h[::-1],
    }


def h_from_f_vector(fan: Fan) -> list[int]:
    """h-vector of the fan's simplicial complex from its face counts, via
    ``sum h_i t^(d-i) = sum f_(i-1) (t-1)^(d-i)``. Independent of any lambda."""
    from math import comb

    d = fan.rank
    f = [0] * (d + 1)  # f[i] = number of cones with i rays
    for c in fan.all_cones():
        f[len(c)] += 1
    h = []
    for k in range(d + 1):
        # coefficient of t^(d-k)
        h.append(sum(f[i] * comb(d - i, k - i) * (-1) ** (k - i) for i in range(k + 1)))
    return h
