#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Times the three hot loops on random inputs:

    rref        reduced row echelon form mod p (drives nullspaces and inverses)
    matmul      matrix product mod p
    slice       monomial-image table for one graded slice (degree given by
                --degree on an n-variable substitution, n from --nvars)

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 200,400,800 --p 31 --repeats 5
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from invred import _kernels
from invred.poly import parent_table, promote_table


def random_array(rng, rows, cols, p):
    return np.array(
        [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)], dtype=np.int64
    )


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def slice_images_with(impl, subst, degree, p):
    n = subst.shape[0]
    level = np.ones((1, 1), dtype=np.int64)
    for k in range(1, degree + 1):
        parent_rank, parent_var = parent_table(n, k)
        level = _kernels.next_slice_level(
            level, parent_rank, parent_var, promote_table(n, k - 1), subst, p, impl
        )
    return level


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="200,400,800",
                        help="comma-separated matrix sizes for rref and matmul")
    parser.add_argument("--p", type=int, default=31, help="prime modulus")
    parser.add_argument("--nvars", type=int, default=4, help="variables for the slice build")
    parser.add_argument("--degree", type=int, default=12, help="degree for the slice build")
    parser.add_argument("--repeats", type=int, default=3, help="repeats per timing (best kept)")
    parser.add_argument("--seed", type=int, default=12345)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    p = args.p
    rng = random.Random(args.seed)
    impls = {name: _kernels.IMPLEMENTATIONS[name] for name in sorted(_kernels.IMPLEMENTATIONS)}
    if "numba" not in impls:
        print("note: numba not importable, benchmarking numpy only")

    # warm up JIT outside the timings
    for impl in impls.values():
        warm = random_array(rng, 8, 8, p)
        _kernels.rref_mod(warm, p, impl)
        _kernels.matmul_mod(warm, warm, p, impl)
        slice_images_with(impl, random_array(rng, 3, 3, p), 3, p)

    header = f"{'kernel':<22}" + "".join(f"{name:>12}" for name in impls)
    if len(impls) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    def report(label, times):
        row = f"{label:<22}" + "".join(f"{times[name] * 1000:>10.2f}ms" for name in impls)
        if len(times) == 2:
            a, b = (times[n] for n in impls)  # sorted: numba, numpy
            row += f"{b / a:>9.1f}x"
        print(row)

    for size in sizes:
        a = random_array(rng, size, size, p)
        times = {
            name: time_call(lambda im=impl: _kernels.rref_mod(a, p, im), args.repeats)
            for name, impl in impls.items()
        }
        report(f"rref {size}x{size}", times)

    for size in sizes:
        a = random_array(rng, size, size, p)
        b = random_array(rng, size, size, p)
        times = {
            name: time_call(lambda im=impl: _kernels.matmul_mod(a, b, p, im), args.repeats)
            for name, impl in impls.items()
        }
        report(f"matmul {size}x{size}", times)

    subst = random_array(rng, args.nvars, args.nvars, p)
    dim = slice_images_with(next(iter(impls.values())), subst, args.degree, p).shape[0]
    times = {
        name: time_call(
            lambda im=impl: slice_images_with(im, subst, args.degree, p), args.repeats
        )
        for name, impl in impls.items()
    }
    report(f"slice n={args.nvars} d={args.degree} ({dim})", times)

    print(f"\nactive backend for the package: {_kernels.backend()}")


if __name__ == "__main__":
    main()
