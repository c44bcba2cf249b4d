# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_kernels_py``.

All arithmetic is in 64-bit integers. Callers (see ``kernels``) must check the
overflow bounds before dispatching here.
"""
from libc.stdlib cimport malloc, free

cdef enum:
    MAXK = 8


cdef long long _det(long long* m, int n):
    # Laplace expansion along the first row; n <= MAXK - 1.
    cdef long long sub[(MAXK - 1) * (MAXK - 1)]
    cdef long long total = 0
    cdef long long sign = 1
    cdef int c, i, j, jj
    if n == 0:
        return 1
    if n == 1:
        return m[0]
    if n == 2:
        return m[0] * m[3] - m[1] * m[2]
    for c in range(n):
        if m[c] != 0:
            for i in range(1, n):
                jj = 0
                for j in range(n):
                    if j != c:
                        sub[(i - 1) * (n - 1) + jj] = m[i * n + j]
                        jj += 1
            total += sign * m[c] * _det(sub, n - 1)
        sign = -sign
    return total


cdef long long _gcd(long long a, long long b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def full_dim_facets(points, int k):
    cdef int n = len(points)
    cdef int i, j, c, r, idx, jj, t
    cdef long long v, g
    cdef bint pos, neg
    cdef long long* P
    cdef int comb[MAXK]
    cdef long long minor[(MAXK - 1) * (MAXK - 1)]
    cdef long long normal[MAXK]
    if k == 0:
        return []
    if k > MAXK:
        raise ValueError("rank too large for compiled kernel")
    P = <long long*> malloc(n * k * sizeof(long long))
    if P == NULL:
        raise MemoryError()
    seen = {}
    try:
        for i in range(n):
            row = points[i]
            for j in range(k):
                P[i * k + j] = row[j]
        r = k - 1
        if r > n:
            return []
        for i in range(r):
            comb[i] = i
        while True:
            # cofactor normal of the chosen r points
            for c in range(k):
                for i in range(r):
                    jj = 0
                    for j in range(k):
                        if j != c:
                            minor[i * r + jj] = P[comb[i] * k + j]
                            jj += 1
                v = _det(minor, r)
                normal[c] = -v if (c & 1) else v
            g = 0
            for c in range(k):
                g = _gcd(g, normal[c])
            if g != 0:
                pos = False
                neg = False
                for idx in range(n):
                    v = 0
                    for c in range(k):
                        v += normal[c] * P[idx * k + c]
                    if v > 0:
                        pos = True
                    elif v < 0:
                        neg = True
                    if pos and neg:
                        break
                if not (pos and neg):
                    if neg:
                        g = -g
                    key = tuple([normal[c] // g for c in range(k)])
                    if key not in seen:
                        tight = []
                        for idx in range(n):
                            v = 0
                            for c in range(k):
                                v += normal[c] * P[idx * k + c]
                            if v == 0:
                                tight.append(idx)
                        seen[key] = tuple(tight)
            # next combination
            t = r - 1
            while t >= 0 and comb[t] == n - r + t:
                t -= 1
            if t < 0:
                break
            comb[t] += 1
            for i in range(t + 1, r):
                comb[i] = comb[i - 1] + 1
    finally:
        free(P)
    return list(seen.items())


cdef inline long long _floordiv(long long a, long long b):
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


def count_cone_points(ineqs, lam, long long height, lo, hi):
    cdef int d = len(lam)
    cdef int nr = len(ineqs) + 2
    cdef int i, j
    cdef long long total = 0
    cdef long long* R = <long long*> malloc(nr * d * sizeof(long long))
    cdef long long* off = <long long*> malloc(nr * sizeof(long long))
    cdef long long* part = <long long*> malloc(nr * d * sizeof(long long))
    cdef long long* x = <long long*> malloc(d * sizeof(long long))
    cdef long long* L = <long long*> malloc(d * sizeof(long long))
    cdef long long* H = <long long*> malloc(d * sizeof(long long))
    cdef long long a, rhs, b, lower, upper, s
    cdef bint has_lo, has_up, empty
    cdef int level
    if R == NULL or off == NULL or part == NULL or x == NULL or L == NULL or H == NULL:
        raise MemoryError()
    try:
        for i in range(nr - 2):
            row = ineqs[i]
            for j in range(d):
                R[i * d + j] = row[j]
            off[i] = 0
        for j in range(d):
            R[(nr - 2) * d + j] = lam[j]
            R[(nr - 1) * d + j] = -lam[j]
        off[nr - 2] = 0
        off[nr - 1] = height
        for j in range(d - 1):
            L[j] = lo[j]
            H[j] = hi[j]
        # part[level * nr + r] = sum_{i < level} R[r, i] * x[i]
        for i in range(nr):
            part[i] = 0
        level = 0
        if d > 1:
            x[0] = L[0] - 1
        while True:
            if level < d - 1:
                x[level] += 1
                if x[level] > H[level]:
                    if level == 0:
                        break
                    level -= 1
                    continue
                for i in range(nr):
                    part[(level + 1) * nr + i] = part[level * nr + i] + R[i * d + level] * x[level]
                level += 1
                if level < d - 1:
                    x[level] = L[level] - 1
                continue
            # innermost: solve the last coordinate
            has_lo = False
            has_up = False
            empty = False
            lower = 0
            upper = 0
            for i in range(nr):
                a = R[i * d + d - 1]
                rhs = -(part[level * nr + i] + off[i])
                if a == 0:
                    if rhs > 0:
                        empty = True
                        break
                elif a > 0:
                    b = -_floordiv(-rhs, a)
                    if not has_lo or b > lower:
                        lower = b
                        has_lo = True
                else:
                    b = _floordiv(rhs, a)
                    if not has_up or b < upper:
                        upper = b
                        has_up = True
            if not empty:
                if not (has_lo and has_up):
                    raise ValueError("unbounded count region")
                if upper >= lower:
                    total += upper - lower + 1
            if d == 1:
                break
            level -= 1
    finally:
        free(R)
        free(off)
        free(part)
        free(x)
        free(L)
        free(H)
    return total
