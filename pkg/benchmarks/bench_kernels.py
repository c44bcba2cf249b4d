"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import timeit

from torcells import kernels
from torcells.bundle import corpus_path
from torcells.hilbert import _box
from torcells.polyhedral import Cone


def facet_case():
    rng = random.Random(7)
    pts = sorted({tuple(rng.randint(-4, 4) for _ in range(3)) + (1,) for _ in range(30)})
    return pts, 4


def count_case():
    import json

    sigma = Cone.from_json(json.loads(corpus_path("cone_square.json").read_text()))
    lam, height = (1, 1, 3), 60
    ineqs = [tuple(r) for r in sigma.rays]
    lo, hi = _box(sigma, lam, height)
    return ineqs, lam, height, lo, hi


def bench(label, fn, repeat):
    out = {}
    for backend in ("python", "cython"):
        if backend == "cython" and kernels.BACKEND != "cython":
            out[backend] = None
            continue
        out[backend] = min(timeit.repeat(lambda: fn(backend), number=1, repeat=repeat))
    py, cy = out["python"], out["cython"]
    if cy is None:
        print(f"{label:<20} python {py * 1e3:9.2f} ms   cython  unavailable")
    else:
        print(f"{label:<20} python {py * 1e3:9.2f} ms   cython {cy * 1e3:9.2f} ms   speedup {py / cy:6.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"default backend: {kernels.BACKEND}")
    pts, k = facet_case()
    bench("full_dim_facets", lambda b: kernels.full_dim_facets(pts, k, backend=b), args.repeat)
    ineqs, lam, h, lo, hi = count_case()
    bench("count_cone_points", lambda b: kernels.count_cone_points(ineqs, lam, h, lo, hi, backend=b),
          args.repeat)


if __name__ == "__main__":
    main()
