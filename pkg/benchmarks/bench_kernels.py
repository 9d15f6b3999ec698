"""Compare the compiled and pure-Python GF(2) rank kernels.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from hkcalc import kernels
from hkcalc.colength import QuotientSpec, colength
from hkcalc.poly import parse_poly


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def random_case(rows, cols, seed):
    rng = np.random.default_rng(seed)
    return kernels.pack_rows(rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)), cols


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"] + (["cython"] if kernels.has_extension() else [])
    nodal = parse_poly("x^3+y^3+x*y*z", "xyz")
    cases = [
        ("random 512x512", lambda b, m=random_case(512, 512, 1): kernels.gf2_rank(*m, backend=b)),
        ("random 2048x2048", lambda b, m=random_case(2048, 2048, 2): kernels.gf2_rank(*m, backend=b)),
        ("nodal colength n=3, ungraded", lambda b: colength(nodal, QuotientSpec(3, 3), graded=False, backend=b)),
        ("nodal colength n=4, ungraded", lambda b: colength(nodal, QuotientSpec(3, 4), graded=False, backend=b)),
        ("nodal colength n=5, graded", lambda b: colength(nodal, QuotientSpec(3, 5), backend=b)),
    ]
    print(f"{'case':32s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, fn in cases:
        times, results = [], []
        for b in backends:
            t, out = best_of(lambda: fn(b), args.repeat)
            times.append(t)
            results.append(out)
        assert len(set(results)) == 1, f"{name}: backends disagree {results}"
        line = f"{name:32s}" + "".join(f"{t:11.4f}s" for t in times)
        if len(times) == 2:
            line += f"{times[0] / times[1]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
