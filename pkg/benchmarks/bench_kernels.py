"""Compare the compiled and pure-Python integer kernels.

Usage: ``python3 benchmarks/bench_kernels.py [--repeat N]``
"""

import argparse
import time

from toricprequant import kernels
from toricprequant.catalog import builtin
from toricprequant.census import enumerate_smooth_fano, search_representatives


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    N = list(builtin("CP1x(CP2#3)").polytope.conormals)
    return {
        "census search dim 3, B=3": lambda: search_representatives(3, 3),
        "census dim 3, B=2 (with audit)": lambda: enumerate_smooth_fano(3, 2),
        "canonical_matrix x200 (8 facets)": lambda: [kernels.canonical_matrix(N, 3) for _ in range(200)],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "cython" not in kernels.BACKENDS:
        print("compiled kernels not built; run `python3 setup.py build_ext --inplace`")
        return
    print(f"{'case':36s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in cases().items():
        res = {}
        for b in ("python", "cython"):
            kernels.use_backend(b)
            res[b] = best_of(fn, args.repeat)
        print(f"{name:36s} {res['python']:9.3f}s {res['cython']:9.3f}s {res['python'] / res['cython']:7.1f}x")
    kernels.use_backend("cython")


if __name__ == "__main__":
    main()
