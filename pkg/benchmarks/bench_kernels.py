"""Compare the numba and pure-numpy kernels on the same inputs.

Run ``python3 benchmarks/bench_kernels.py``.  The first numba call of each
kernel is timed separately, since it includes JIT compilation (or loading
the on-disk cache).
"""

from __future__ import annotations

import argparse
import time

from schubdeg._accel import HAVE_NUMBA
from schubdeg.demazure import GTPolytopeSpec
from schubdeg.identities import root_gram_matrix
from schubdeg.kernels import gt_count, permanent_int
from schubdeg.permgroup import Permutation


def _best(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def gt_cases():
    yield "w0, lam=(6,4,2,0)", (6, 4, 2, 0), Permutation.longest(4)
    yield "w0, lam=(8,6,3,1,0)", (8, 6, 3, 1, 0), Permutation.longest(5)
    yield "2314, lam=(12,8,4,0)", (12, 8, 4, 0), Permutation.parse("2314")


def perm_cases():
    for n in (4, 5):
        M = root_gram_matrix(n)
        yield f"root Gram matrix, n={n} ({len(M)}x{len(M)})", M


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    print(f"{'case':40} {'backend':8} {'first (s)':>10} {'best (s)':>10}  result")
    for label, lam, w in gt_cases():
        b = GTPolytopeSpec(lam, w).b
        results = set()
        for backend in backends:
            t0 = time.perf_counter()
            gt_count(lam, b, backend)
            first = time.perf_counter() - t0
            best, out = _best(lambda: gt_count(lam, b, backend), args.repeat)
            results.add(out)
            print(f"{'gt ' + label:40} {backend:8} {first:10.4f} {best:10.4f}  {out}")
        assert len(results) == 1, f"backends disagree on {label}"
    for label, M in perm_cases():
        results = set()
        for backend in backends:
            t0 = time.perf_counter()
            permanent_int(M, backend)
            first = time.perf_counter() - t0
            best, out = _best(lambda: permanent_int(M, backend), args.repeat)
            results.add(out)
            print(f"{'per ' + label:40} {backend:8} {first:10.4f} {best:10.4f}  {out}")
        assert len(results) == 1, f"backends disagree on {label}"


if __name__ == "__main__":
    main()
