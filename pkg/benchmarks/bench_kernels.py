#!/usr/bin/env python3
"""Benchmark the compiled kernels against their pure-numpy twins.

Runs every kernel pair from momo.kernels.IMPLEMENTATIONS on representative
problem sizes and prints a speedup table.  The numba path is exercised even
when MOMO_DISABLE_NUMBA is set, as both implementations are addressed
directly here rather than through the dispatch layer.

    python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from momo.kernels import HAVE_NUMBA, IMPLEMENTATIONS


def _timeit(fn, args, repeats: int) -> float:
    fn(*args)  # warm-up (and JIT compile for the numba path)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _cases(rng):
    F = rng.random((200, 5))
    degree = np.where(rng.random(200) < 0.2, rng.random(200), 0.0)
    samples = rng.random((10000, 5))
    weights = np.zeros(201)
    weights[1:6] = 1.0 / np.arange(1, 6)
    G = rng.integers(0, 10, size=(150, 5)).astype(np.int64)
    gcpd = rng.random(150)
    return {
        "domination_matrix": (F, degree),
        "non_dominated_mask": (F, degree),
        "front_ranks": (F, degree),
        "any_dominating": (F, samples),
        "mc_attribution": (F, samples, weights),
        "grea_select": (G, gcpd, 75),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(1234)
    cases = _cases(rng)
    print(f"numba available: {HAVE_NUMBA}")
    print(f"{'kernel':20s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    for name, impls in IMPLEMENTATIONS.items():
        case = cases[name]
        t_np = _timeit(impls["numpy"], case, args.repeats)
        if impls["numba"] is None:
            print(f"{name:20s} {t_np * 1e3:9.2f}ms {'n/a':>10s} {'-':>8s}")
            continue
        t_nb = _timeit(impls["numba"], case, args.repeats)
        print(f"{name:20s} {t_np * 1e3:9.2f}ms {t_nb * 1e3:9.2f}ms {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
