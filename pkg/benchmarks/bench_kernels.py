#!/usr/bin/env python3
"""Benchmark the weight-count kernel backends (numba vs numpy vs python).

The workload is the hot path of the package: weight-space dimensions along
the outer ray of the period-6 counterexample, m^{3,4s}_{s(7,5,0)}, plus one
inner-scaled evaluation.  All backends must agree exactly; timings show what
the numba kernels buy over the vectorized numpy fallback and the big-integer
reference.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

from plethyray.kernels import numba_available, resolve_backend
from plethyray.partitions import Partition, scale
from plethyray.plethysm import plethysm_multiplicity
from plethyray.rays import OUTER, INNER, RaySpec, sample_ray


def time_backend(backend: str, spec: RaySpec, s_max: int, repeats: int) -> tuple[float, list[int]]:
    best = float("inf")
    values: list[int] = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        values = sample_ray(spec, s_max, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, values


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller s_max, fewer repeats")
    args = parser.parse_args()

    s_max_outer = 12 if args.quick else 24
    s_max_inner = 4 if args.quick else 8
    s_max_interior = 4 if args.quick else 8
    repeats = 1 if args.quick else 3

    lam = Partition((7, 5, 0))
    workloads = [
        ("outer ray m^{3,4s}_{s(7,5,0)}", RaySpec(OUTER, 3, 4, lam), s_max_outer),
        ("inner ray m^{4s,3}_{s(7,5,0)}", RaySpec(INNER, 4, 3, lam), s_max_inner),
        # strictly interior ray: every weight cap is positive, so the DP tables
        # are genuinely two-dimensional -- the kernels' home turf
        ("interior ray m^{3,8s}_{s(11,9,4)}", RaySpec(OUTER, 3, 8, Partition((11, 9, 4))),
         s_max_interior),
    ]

    backends = ["python", "numpy"]
    if numba_available():
        backends.append("numba")
        # compile / load the JIT cache outside the timed region
        plethysm_multiplicity(3, 8, scale(Partition((11, 9, 4)), 1), backend="numba")
        plethysm_multiplicity(2, 2, Partition((2, 2)), backend="numba")
    else:
        print("numba not importable; comparing python and numpy only")
    print(f"default backend resolves to: {resolve_backend()}\n")

    for label, spec, s_max in workloads:
        print(f"{label}, s_max={s_max}")
        reference_values = None
        timings = {}
        for backend in backends:
            elapsed, values = time_backend(backend, spec, s_max, repeats)
            timings[backend] = elapsed
            if reference_values is None:
                reference_values = values
            elif values != reference_values:
                raise AssertionError(f"{backend} disagrees with {backends[0]}: {values}")
            print(f"  {backend:<7} {elapsed * 1000:9.1f} ms")
        base = timings["python"]
        for backend in backends[1:]:
            print(f"  {backend} speedup over python: {base / timings[backend]:6.1f}x")
        print(f"  values agree across backends: {reference_values}\n")


if __name__ == "__main__":
    main()
