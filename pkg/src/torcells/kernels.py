"""Kernel dispatch: compiled extension when importable, Python otherwise.

Set ``TORCELLS_PURE_PYTHON=1`` to force the fallback. The compiled path uses
64-bit integers, so every call is routed there only after a magnitude bound
shows no intermediate value can overflow; otherwise the exact Python version
runs.
"""
from __future__ import annotations

import os
from math import factorial

from . import _kernels_py

_LIMIT = 2 ** 62

try:
    if os.environ.get("TORCELLS_PURE_PYTHON"):
        raise ImportError("pure Python forced")
    from . import _kernels as _ext
except ImportError:  # pragma: no cover - depends on the build
    _ext = None

BACKEND = "cython" if _ext is not None else "python"


def _max_abs(rows) -> int:
    return max((abs(c) for r in rows for c in r), default=0)


def full_dim_facets(points, k: int, *, backend: str | None = None):
    """See :func:`torcells._kernels_py.full_dim_facets`."""
    impl = _pick(backend)
    if impl is _ext:
        m = max(_max_abs(points), 1)
        # |normal entries| <= (k-1)! m^(k-1); pairings add a factor k m
        if k > 8 or factorial(k) * m ** k >= _LIMIT:
            impl = _kernels_py
    return impl.full_dim_facets(points, k)


def count_cone_points(ineqs, lam, height: int, lo, hi, *, backend: str | None = None) -> int:
    """See :func:`torcells._kernels_py.count_cone_points`."""
    impl = _pick(backend)
    if impl is _ext:
        box = max([abs(v) for v in list(lo) + list(hi)] + [1])
        m = max(_max_abs(ineqs), _max_abs([lam]), 1)
        if len(lam) * m * box + height >= _LIMIT // 4:
            impl = _kernels_py
    return impl.count_cone_points(ineqs, lam, height, lo, hi)


def _pick(backend):
    if backend is None:
        return _ext if _ext is not None else _kernels_py
    if backend == "python":
        return _kernels_py
    if backend == "cython":
        if _ext is None:
            raise RuntimeError("compiled kernels are not available")
        return _ext
    raise ValueError(f"unknown backend {backend!r}")
