import itertools
import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from torcells import _kernels_py, kernels
from torcells.polyhedral import Cone, dual_cone
from torcells.hilbert import _box, count_dual_points
from torcells.randgen import interior_point, random_cone

needs_ext = pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")


def brute_count(ineqs, lam, height, lo, hi, top):
    d = len(lam)
    total = 0
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)] + [range(-top, top + 1)]
    for m in itertools.product(*ranges):
        if all(sum(a * x for a, x in zip(r, m)) >= 0 for r in ineqs):
            s = sum(a * x for a, x in zip(lam, m))
            if 0 <= s <= height:
                total += 1
    return total


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10 ** 6), st.integers(0, 12))
def test_count_matches_brute_force(d, seed, height):
    c = random_cone(random.Random(seed), d, bound=1)
    lam = interior_point(c)
    lo, hi = _box(c, lam, height)
    top = max([abs(v) for v in lo + hi] + [0]) * 8 + height * 8 + 8
    want = brute_count(c.rays, lam, height, lo, hi, top) if d <= 2 else None
    got = kernels.count_cone_points(c.rays, lam, height, lo, hi, backend="python")
    if want is not None:
        assert got == want
    if kernels.BACKEND == "cython":
        assert kernels.count_cone_points(c.rays, lam, height, lo, hi, backend="cython") == got


def test_count_small_cases():
    # standard orthant, lambda = (1, 1): points with a + b <= h number (h+1)(h+2)/2
    c = Cone([(1, 0), (0, 1)])
    for h in range(6):
        assert count_dual_points(c, (1, 1), h, backend="python") == (h + 1) * (h + 2) // 2


@needs_ext
@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10 ** 6))
def test_facets_agree_across_backends(d, seed):
    c = random_cone(random.Random(seed), d)
    pts = [list(r) for r in c.rays]
    assert kernels.full_dim_facets(pts, d, backend="cython") == \
        kernels.full_dim_facets(pts, d, backend="python")


def test_facets_of_square_cone():
    rays = [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)]
    facets = dict(_kernels_py.full_dim_facets(rays, 3))
    assert set(facets) == set(dual_cone(Cone(rays)).rays)
    assert all(len(t) == 2 for t in facets.values())


@needs_ext
def test_large_entries_fall_back_to_python():
    big = 2 ** 40
    pts = [[big, 1, 0], [0, big, 1], [1, 0, big]]
    assert kernels.full_dim_facets(pts, 3) == _kernels_py.full_dim_facets(pts, 3)


def test_pure_python_switch():
    code = "from torcells import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, TORCELLS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.full_dim_facets([[1]], 1, backend="fortran")
