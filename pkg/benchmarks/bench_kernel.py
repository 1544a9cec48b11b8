"""Benchmark the compiled kernels against their pure-Python twins.

Run as: python3 benchmarks/bench_kernel.py [--repeat N]

Workloads mirror the hot paths: sparse Laurent term-map products from the
symbolic family computations, and the integer determinant / all-minors
tables behind tnn checks and vanishing families.
"""

from __future__ import annotations

import argparse
import random
import time
from fractions import Fraction

from tnncells import _kernel_py

try:
    from tnncells import _kernel_c
except ImportError:
    _kernel_c = None


def _rand_term_map(rng: random.Random, nvars: int, nterms: int) -> dict:
    out = {}
    while len(out) < nterms:
        e = tuple(rng.randint(-2, 3) for _ in range(nvars))
        out[e] = Fraction(rng.randint(-99, 99) or 1, rng.randint(1, 40))
    return out


def _rand_int_matrix(rng: random.Random, n: int, p: int | None = None) -> list:
    p = n if p is None else p
    return [[rng.randint(-10**6, 10**6) for _ in range(p)] for _ in range(n)]


def _time(fn, args_list, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = random.Random(42)
    workloads = [
        (
            "term_map_mul (40x40 terms, 9 vars, x50)",
            "term_map_mul",
            [(_rand_term_map(rng, 9, 40), _rand_term_map(rng, 9, 40)) for _ in range(50)],
        ),
        (
            "det_bareiss_int (10x10, x200)",
            "det_bareiss_int",
            [(_rand_int_matrix(rng, 10),) for _ in range(200)],
        ),
        (
            "all_minors_int (6x6, x20)",
            "all_minors_int",
            [(_rand_int_matrix(rng, 6),) for _ in range(20)],
        ),
    ]

    if _kernel_c is None:
        print("compiled kernel not built; timing the pure lane only")
    header = f"{'workload':<42}{'pure (s)':>10}{'compiled (s)':>14}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, name, args_list in workloads:
        pure = _time(getattr(_kernel_py, name), args_list, args.repeat)
        if _kernel_c is None:
            print(f"{label:<42}{pure:>10.4f}{'-':>14}{'-':>9}")
            continue
        comp = _time(getattr(_kernel_c, name), args_list, args.repeat)
        check_args = args_list[0]
        assert getattr(_kernel_py, name)(*check_args) == getattr(_kernel_c, name)(*check_args)
        print(f"{label:<42}{pure:>10.4f}{comp:>14.4f}{pure / comp:>8.2f}x")


if __name__ == "__main__":
    main()
