#!/usr/bin/env python3
"""Timing comparison of the kernel backends (compiled vs. NumPy reference).

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from charsum.kernels import _ref

try:
    from charsum.kernels import _fast
except ImportError:
    _fast = None


def best_of(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()
    scale = 10 if args.quick else 1

    rng = np.random.default_rng(0)
    x1 = rng.normal(size=10**7 // scale)
    x2 = rng.normal(size=(512, 4001))
    sin_table = np.sin(2 * np.pi * np.arange(101) / 101)
    chi = rng.choice(np.array([-1, 1], dtype=np.int8), size=101)

    cases = [
        ("kahan_sum 1e6", "kahan_sum", (x1[: 10**6 // scale],)),
        (f"comp_cumsum {x1.size:.0e}", "comp_cumsum", (x1,)),
        ("comp_cumsum 512x4001", "comp_cumsum", (x2,)),
        (f"nonsmooth_count {10**7 // scale:.0e}, b=100", "nonsmooth_count", (10**7 // scale, 100)),
        (f"half_model_sum {10**7 // scale:.0e} terms", "half_model_sum", (10**7 // scale, sin_table, chi)),
    ]

    print(f"{'kernel':<30} {'python':>10} {'cython':>10} {'speedup':>9}")
    for label, name, call_args in cases:
        t_ref = best_of(getattr(_ref, name), *call_args)
        if _fast is None:
            print(f"{label:<30} {t_ref:>9.4f}s {'n/a':>10} {'n/a':>9}")
            continue
        t_fast = best_of(getattr(_fast, name), *call_args)
        print(f"{label:<30} {t_ref:>9.4f}s {t_fast:>9.4f}s {t_ref / t_fast:>8.1f}x")
    if _fast is None:
        print("\ncompiled backend not built; run `python setup.py build_ext --inplace`")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
