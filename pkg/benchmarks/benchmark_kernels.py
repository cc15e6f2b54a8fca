#!/usr/bin/env python3
"""Benchmark the numba-jitted kernels against the pure-numpy fallbacks.

Usage:
    python benchmarks/benchmark_kernels.py
    python benchmarks/benchmark_kernels.py --points 16384 65536 --repeats 5
    python benchmarks/benchmark_kernels.py --output results.json

Both backends are imported explicitly, so this script works regardless of
the TRITRUNC_NO_NUMBA setting; when numba is unavailable only the numpy
column is reported.
"""

import argparse
import json
import time

import numpy as np

from tritrunc import _kernels


def _timeit(fn, args, repeats):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def _jit_impls():
    if not _kernels.NUMBA_ENABLED:
        try:
            return _kernels._build_numba_kernels()
        except ImportError:
            return None
    return (
        _kernels._trig_series_impl,
        _kernels._trig_moments_impl,
        _kernels._hilbert_window_impl,
        _kernels._min_ineq_impl,
    )


def build_cases(points, terms, rng):
    freqs = np.sort(rng.choice(np.arange(-8 * terms, 8 * terms + 1), size=terms, replace=False)).astype(np.int64)
    coeffs = (rng.standard_normal(terms) + 1j * rng.standard_normal(terms)).astype(np.complex128)
    ts = rng.uniform(-np.pi, np.pi, size=points)
    gvals = (rng.standard_normal(points) + 1j * rng.standard_normal(points)).astype(np.complex128)
    ns = np.arange(-32, 33, dtype=np.int64)
    half = points // 2
    return [
        ("trig_series_at", 0, (freqs, coeffs, ts)),
        ("trig_moments", 1, (ts, gvals, ns)),
        ("hilbert_window", 2, (freqs, coeffs, -half, half)),
        ("min_ineq_margins", 3, (min(2000, points),)),
    ]


def main():
    parser = argparse.ArgumentParser(description="Benchmark numba kernels vs numpy fallbacks")
    parser.add_argument("--points", type=int, nargs="+", default=[4096, 16384, 65536])
    parser.add_argument("--terms", type=int, default=64, help="symbol support size")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--output", default=None, help="JSON output path")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    jits = _jit_impls()
    numpys = (
        _kernels.trig_series_at_numpy,
        _kernels.trig_moments_numpy,
        _kernels.hilbert_window_numpy,
        _kernels.min_ineq_margins_numpy,
    )

    print(f"numba available: {jits is not None}")
    print(f"{'kernel':<18} {'points':>8} {'numpy (s)':>12} {'numba (s)':>12} {'speedup':>9}")
    print("-" * 63)

    records = []
    for points in args.points:
        cases = build_cases(points, args.terms, rng)
        if jits is not None:
            for _, idx, case_args in cases:
                jits[idx](*case_args)  # warm the JIT before timing
        for name, idx, case_args in cases:
            t_np = _timeit(numpys[idx], case_args, args.repeats)
            t_jit = _timeit(jits[idx], case_args, args.repeats) if jits is not None else None
            speedup = (t_np / t_jit) if t_jit else float("nan")
            jit_text = f"{t_jit:12.6f}" if t_jit is not None else f"{'n/a':>12}"
            print(f"{name:<18} {points:>8} {t_np:12.6f} {jit_text} {speedup:>8.1f}x")
            records.append(
                {
                    "kernel": name,
                    "points": points,
                    "terms": args.terms,
                    "numpy_s": t_np,
                    "numba_s": t_jit,
                    "speedup": speedup,
                }
            )

    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump({"numba_available": jits is not None, "results": records}, fh, indent=2)
        print(f"\nresults written to {args.output}")


if __name__ == "__main__":
    main()
