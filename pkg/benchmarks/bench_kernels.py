"""Compare the compiled and pure-Python kernel backends.

Usage: python benchmarks/bench_kernels.py [--degree 40] [--count 200] [--seed 0]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from littlewood import kernels
from littlewood.polycore import random_reciprocal, to_cosine
from littlewood.rootcount import count_unimodular


def _time(fn, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, default=40)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--resolution", type=int, default=1 << 14)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    polys = [random_reciprocal(args.degree, rng) for _ in range(args.count)]
    cosines = [[int(a) for a in to_cosine(P).coeffs] for P in polys]

    def census():
        return [count_unimodular(P).with_multiplicity for P in polys]

    def grid():
        return [kernels.cosine_grid_sign_changes(A, args.resolution, 1e-10) for A in cosines]

    print(f"degree {args.degree}, {args.count} polynomials, grid resolution {args.resolution}")
    print(f"{'kernel':<12}{'backend':<10}{'seconds':>10}{'speedup':>10}")
    for label, fn in (("census", census), ("grid", grid)):
        timings, answers = {}, {}
        for name in kernels.available():
            with kernels.use_backend(name):
                answers[name] = fn()
                timings[name] = _time(fn)
        if len(set(map(tuple, answers.values()))) != 1:
            raise SystemExit(f"{label}: backends disagree")
        ref = timings.get("python")
        for name, t in timings.items():
            speedup = f"{ref / t:.1f}x" if ref else "-"
            print(f"{label:<12}{name:<10}{t:>10.3f}{speedup:>10}")


if __name__ == "__main__":
    main()
