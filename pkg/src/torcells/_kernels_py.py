"""Pure-Python reference versions of the hot kernels.

Same signatures as the compiled ``_kernels`` extension. Python ints make these
exact for any input size; the compiled versions are only used when the
selector in ``kernels`` has proven no 64-bit overflow can occur.
"""
from itertools import combinations
from math import gcd

from .lattice import cofactor_normal


def full_dim_facets(points, k):
    """Facets of the cone generated by ``points`` (full rank ``k`` in Z^k).

    Returns ``[(normal, tight)]`` with ``normal`` primitive, ``normal . p >= 0``
    for every point, and ``tight`` the sorted tuple of indices where it is 0.
    Facets appear in order of first discovery over ``combinations(range(n), k-1)``.
    """
    n = len(points)
    if k == 0:
        return []
    seen = {}
    for subset in combinations(range(n), k - 1):
        normal = cofactor_normal([points[i] for i in subset])
        if not any(normal):
            continue
        pos = neg = False
        tight = []
        for idx, p in enumerate(points):
            v = 0
            for a, b in zip(normal, p):
                v += a * b
            if v > 0:
                pos = True
            elif v < 0:
                neg = True
            else:
                tight.append(idx)
            if pos and neg:
                break
        if pos and neg:
            continue
        if neg:
            normal = tuple(-c for c in normal)
        g = 0
        for c in normal:
            g = gcd(g, c)
        normal = tuple(c // g for c in normal)
        if normal not in seen:
            seen[normal] = tuple(tight)
    return list(seen.items())


def count_cone_points(ineqs, lam, height, lo, hi):
    """Count m in Z^d with ``a . m >= 0`` for every row of ``ineqs`` and
    ``0 <= lam . m <= height``; the first d-1 coordinates range over the
    inclusive box ``[lo, hi]`` and the last one is solved as an interval."""
    d = len(lam)
    rows = [tuple(r) for r in ineqs] + [tuple(lam), tuple(-c for c in lam)]
    offs = [0] * len(ineqs) + [0, height]
    total = 0

    def last_interval(partial):
        lower, upper = None, None
        for r, off, s in zip(rows, offs, partial):
            a = r[d - 1]
            rhs = -(s + off)  # need a * t >= rhs
            if a == 0:
                if rhs > 0:
                    return 0
            elif a > 0:
                b = -((-rhs) // a)
                lower = b if lower is None or b > lower else lower
            else:
                b = rhs // a  # a < 0: t <= floor(rhs / a)
                upper = b if upper is None or b < upper else upper
        if lower is None or upper is None:
            raise ValueError("unbounded count region")
        return max(0, upper - lower + 1)

    if d == 1:
        return last_interval([0] * len(rows))

    def rec(i, partial):
        nonlocal total
        if i == d - 1:
            total += last_interval(partial)
            return
        for x in range(lo[i], hi[i] + 1):
            rec(i + 1, [s + r[i] * x for s, r in zip(partial, rows)])

    rec(0, [0] * len(rows))
    return total
