"""Benchmark the numba kernels against their pure-numpy fallbacks.

Runs each hot kernel on representative workloads and prints a timing table.

    python3 benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time

import numpy as np

from ddfkit import _kernels
from ddfkit import build_field, build_ring, develop, feng_families, squares_family, wilson_family

BACKENDS = ("numba", "numpy") if _kernels.backend() == "numba" else ("numpy",)


def timed(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def workloads():
    ch = wilson_family(build_field(5, 4), 52)
    g = ch.group
    yield ("diff-hist  (625,12,11), 52^2 base pairs",
           lambda be: _kernels.diff_pair_hist(
               ch.block_array(), g.base, g.digits, g.order, force_backend=be))

    feng = feng_families(build_field(11, 3))[0]
    gf = feng.group
    yield ("diff-hist  (1331,665,664), 2^2 base pairs",
           lambda be: _kernels.diff_pair_hist(
               feng.block_array(), gf.base, gf.digits, gf.order, force_backend=be))

    design = develop(squares_family(build_ring(13, 1)))
    yield (f"intersect  {design.block_count} blocks of size {design.k}",
           lambda be: _kernels.block_intersection_hist(
               design.blocks, design.v, force_backend=be))

    big = develop(wilson_family(build_field(11, 3), 14))
    yield (f"pair-cover {big.block_count} blocks of size {big.k}",
           lambda be: _kernels.pair_coverage(big.blocks, big.v, force_backend=be))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3, help="take the best of N runs")
    args = ap.parse_args()

    if "numba" in BACKENDS:
        _kernels.warmup()  # JIT-compile outside the timed region

    print(f"{'workload':<45} " + " ".join(f"{be:>12}" for be in BACKENDS) + "  speedup")
    for name, runner in workloads():
        times = {}
        reference = None
        for be in BACKENDS:
            times[be], out = timed(lambda be=be: runner(be), args.repeat)
            flat = np.asarray(out).ravel()
            if reference is None:
                reference = flat
            elif not np.array_equal(reference, flat):
                raise AssertionError(f"backends disagree on {name}")
        cols = " ".join(f"{times[be] * 1e3:>10.1f}ms" for be in BACKENDS)
        if len(BACKENDS) == 2:
            ratio = times["numpy"] / times["numba"]
            print(f"{name:<45} {cols}  {ratio:>6.1f}x")
        else:
            print(f"{name:<45} {cols}")


if __name__ == "__main__":
    main()
