#!/usr/bin/env python3
"""Benchmark the compiled SNF kernel against the pure-Python twin.

Times the raw kernel on random dense matrices and on the differential
matrices of a real workload (the projective-plane site with Z, Z/2 and
Z/6 coefficients).  Run after `pip install -e .`:

    python benchmarks/bench_snf.py
"""

import random
import time

from cechtower import _snf_py

try:
    from cechtower import _snf_cy
except ImportError:
    _snf_cy = None

from cechtower.abelian import cyclic_group, free_group
from cechtower.cochain import build_complex_from_facets, cech_complex

RP2_FACETS = [(0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 5), (0, 3, 4),
              (1, 2, 3), (1, 2, 4), (1, 3, 5), (2, 4, 5), (3, 4, 5)]


def random_matrices(rng, count, size, bound):
    return [[[rng.randint(-bound, bound) for _ in range(size)]
             for _ in range(size)] for _ in range(count)]


def workload_matrices():
    x = build_complex_from_facets(6, RP2_FACETS)
    mats = []
    for coeff in (free_group(1), cyclic_group(2), cyclic_group(6)):
        comp = cech_complex(x, coeff)
        for d in comp.diffs:
            if d.matrix and d.matrix[0]:
                mats.append([list(r) for r in d.matrix])
    return mats


def time_backend(kernel, mats, repeats):
    best = None
    for _ in range(repeats):
        start = time.perf_counter()
        for m in mats:
            kernel(m)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def main():
    rng = random.Random(20240731)
    suites = [
        ("random 6x6, |a| <= 9", random_matrices(rng, 40, 6, 9)),
        ("random 10x10, |a| <= 9", random_matrices(rng, 20, 10, 9)),
        ("random 14x14, |a| <= 30", random_matrices(rng, 10, 14, 30)),
        ("RP2 differentials (Z, Z/2, Z/6)", workload_matrices()),
    ]
    if _snf_cy is None:
        print("compiled kernel not built; timing the pure backend only")
    print(f"{'suite':36} {'pure (s)':>10} {'cython (s)':>11} {'speedup':>8}")
    for name, mats in suites:
        t_py = time_backend(_snf_py.smith_with_transforms, mats, 3)
        if _snf_cy is not None:
            t_cy = time_backend(_snf_cy.smith_with_transforms, mats, 3)
            for m in mats[:3]:
                assert _snf_py.smith_with_transforms(m) == \
                    _snf_cy.smith_with_transforms(m)
            print(f"{name:36} {t_py:10.4f} {t_cy:11.4f} {t_py / t_cy:7.2f}x")
        else:
            print(f"{name:36} {t_py:10.4f} {'-':>11} {'-':>8}")


if __name__ == "__main__":
    main()
