"""Exact integer lattice linear algebra.

Characters and one-parameter subgroups are plain tuples of Python ints; the
pairing between them is the dot product. Everything here is exact: no floats.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionError

Vector = tuple[int, ...]
Character = Vector
OneParamSubgroup = Vector
Matrix = list[list[int]]


def as_vector(v: Iterable) -> Vector:
    """Coerce to a tuple of ints. Strings are accepted for big values."""
    out = []
    for c in v:
        if isinstance(c, bool):
            raise TypeError("booleans are not lattice coordinates")
        if isinstance(c, str):
            c = int(c.strip())
        elif isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"non-integral coordinate {c}")
            c = c.numerator
        elif not isinstance(c, int):
            if float(c) != int(c):
                raise ValueError(f"non-integral coordinate {c}")
            c = int(c)
        out.append(c)
    return tuple(out)


def pairing(lam: Sequence[int], chi: Sequence[int]) -> int:
    """Integer pairing <lam, chi>."""
    if len(lam) != len(chi):
        raise DimensionError(f"length mismatch: {len(lam)} vs {len(chi)}")
    return sum(a * b for a, b in zip(lam, chi))


def content(v: Sequence[int]) -> int:
    g = 0
    for c in v:
        g = gcd(g, c)
    return g


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


def primitive(v: Sequence[int]) -> Vector:
    """Divide by the gcd of the coordinates. The zero vector is returned as is."""
    g = content(v)
    if g == 0:
        return tuple(v)
    return tuple(c // g for c in v)


def lex_sign(v: Sequence[int]) -> int:
    for c in v:
        if c:
            return 1 if c > 0 else -1
    return 0


def normalize_character(v: Sequence[int]) -> tuple[int, Vector]:
    """Split ``v`` as ``scale * p`` with ``p`` primitive and lex-positive."""
    g = content(v)
    if g == 0:
        raise ValueError("zero character has no normal form")
    if lex_sign(v) < 0:
        g = -g
    return g, tuple(c // g for c in v)


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    if any(len(r) != n for r in a):
        raise DimensionError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(pivot_columns(rows))


def pivot_columns(rows: Sequence[Sequence[int]]) -> list[int]:
    """Pivot columns of the row echelon form, computed over Q."""
    a = [[Fraction(c) for c in r] for r in rows]
    if not a:
        return []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return pivots


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def smith_normal_form(rows: Sequence[Sequence[int]], ncols: int | None = None):
    """Smith normal form with unimodular transforms.

    Returns ``(diag, U, V)`` with ``U @ A @ V`` diagonal, the diagonal being
    ``diag`` (nonnegative, each entry dividing the next, zeros trailing).
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    if any(len(r) != n for r in a):
        raise DimensionError("ragged matrix")
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for r in a:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the remaining block becomes the pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if done:
                # divisibility: fold any offending entry into the pivot row
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            best = None
            for i in range(t, m):
                if a[i][t] and (best is None or abs(a[i][t]) < abs(a[best][t])):
                    best = i
            swap_rows(t, best)
            bestc = None
            for j in range(t, n):
                if a[t][j] and (bestc is None or abs(a[t][j]) < abs(a[t][bestc])):
                    bestc = j
            swap_cols(t, bestc)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = [a[i][i] for i in range(min(m, n))]
    return diag, U, V


def elementary_divisors(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix."""
    if not rows:
        return []
    diag, _, _ = smith_normal_form(rows)
    return [d for d in diag if d]


def lattice_index(vectors: Sequence[Sequence[int]], dim: int | None = None) -> int:
    """Index of the sublattice spanned by ``vectors`` in Z^dim; 0 if not full rank."""
    vecs = [as_vector(v) for v in vectors]
    if dim is None:
        if not vecs:
            raise DimensionError("cannot infer rank of an empty vector set")
        dim = len(vecs[0])
    if any(len(v) != dim for v in vecs):
        raise DimensionError("vectors of mismatched length")
    if dim == 0:
        return 1
    divs = elementary_divisors(vecs) if vecs else []
    if len(divs) < dim:
        return 0
    out = 1
    for d in divs:
        out *= d
    return out


def saturation_index(vectors: Sequence[Sequence[int]]) -> int:
    """Index of span_Z(vectors) inside its saturation span_R(vectors) ∩ Z^d."""
    out = 1
    for d in elementary_divisors(vectors):
        out *= d
    return out


def kernel_basis(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Lattice basis of {x in Z^ncols : rows @ x = 0} (a saturated lattice)."""
    if not rows:
        return [tuple(r) for r in identity(ncols)]
    diag, _, V = smith_normal_form(rows, ncols)
    r = sum(1 for d in diag if d)
    return [tuple(V[i][j] for i in range(ncols)) for j in range(r, ncols)]


def quotient_projection(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Rows of a surjection Z^ncols -> Z^(ncols - r) whose kernel is the
    saturation of the span of ``rows``.

    The rows are a lattice basis of the annihilator of ``rows``, so a quotient
    character c pulls back to ``sum(c_i * P[i])``.
    """
    return kernel_basis(rows, ncols)


def unimodular_inverse(a: Sequence[Sequence[int]]) -> Matrix:
    """Exact inverse of a square integer matrix with determinant ±1."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    out = []
    for row in aug:
        inv_row = row[n:]
        if any(x.denominator != 1 for x in inv_row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in inv_row])
    return out


def cofactor_normal(vectors: Sequence[Sequence[int]]) -> Vector:
    """Generalized cross product of k-1 vectors in Z^k."""
    k = len(vectors) + 1
    out = []
    for j in range(k):
        minor = [[v[c] for c in range(k) if c != j] for v in vectors]
        out.append((-1) ** j * det(minor))
    return tuple(out)
