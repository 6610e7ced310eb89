"""Timing comparison: compiled polynomial kernels vs the pure Python fallback.

Runs the same representative workloads through both implementations and
prints one line per workload with the speedup.  Workload inputs come from a
real rank-one datum over Z/7 at p = 29, the heaviest shapes the library
meets in practice.

Workloads whose result is a large Python term dict tie near 1x because
materializing the dict dominates either way; the compiled backend wins
where the computation stays native end to end (block agreement checks,
product comparisons).

Usage: python3 benchmarks/bench_kernels.py [--repeat K]
"""

import argparse
import time

from prym_atlas import _kernels_py
from prym_atlas.covers import CoverMatrix
from prym_atlas.hasse_witt import _caps, choose_prime, hasse_witt_entry

try:
    from prym_atlas import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def build_workloads():
    mat = CoverMatrix(7, ((1, 1, 2, 3),))
    p = choose_prime(7)

    caps1 = _caps(mat, (1,), p)  # d = 2 block
    upsilon = 2 * (p - 1)  # top-left entry of that block

    # degree p-1 polynomials in 4 variables, then their degree 2(p-1)
    # products: the polynomial-identity workload
    a = hasse_witt_entry(mat, (3,), 1, 1, p).terms
    b = hasse_witt_entry(mat, (4,), 1, 1, p).terms
    c = hasse_witt_entry(mat, (5,), 1, 1, p).terms
    e = hasse_witt_entry(mat, (2,), 1, 1, p).terms

    return [
        ("entry terms", lambda k: k.hw_entry_terms(caps1, upsilon, p)),
        ("series slices", lambda k: k.series_slices(caps1, upsilon, p)),
        ("block agreement", lambda k: k.hw_block_agrees(caps1, 2, p)),
        ("product comparison", lambda k: k.products_equal(a, b, c, e, 4, p)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--repeat", type=int, default=3, help="trials per workload, best kept"
    )
    args = parser.parse_args()

    if _kernels is None:
        print("compiled kernels not built; timing the pure backend only")

    print(f"{'workload':<22}{'pure':>12}{'compiled':>12}{'speedup':>10}")
    for name, run in build_workloads():
        pure = best_of(lambda: run(_kernels_py), args.repeat)
        if _kernels is None:
            print(f"{name:<22}{pure:>11.4f}s")
            continue
        fast = best_of(lambda: run(_kernels), args.repeat)
        print(f"{name:<22}{pure:>11.4f}s{fast:>11.4f}s{pure / fast:>9.1f}x")


if __name__ == "__main__":
    main()
