#!/usr/bin/env python3
"""Time the jitted kernels against the pure numpy/Python path.

Run with the default backend to get both columns in one process (the
uncompiled path is reached through each kernel's .py_func); under
PTSPECTRUM_NUMBA=0 only the numpy path exists and is timed alone.

Usage:
    python3 benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import time

import numpy as np

from ptspectrum import SystemConfig, build_pt_matrix
from ptspectrum import kernels


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_eigensolver(n):
    cfg = SystemConfig(n=n, omega=0.7, kappa=1.3, gamma=2.4)
    m = build_pt_matrix(cfg)

    def run(kernel):
        vals, _deflated, ok = kernel(m.copy(), 1e-12, 100 * n)
        assert ok
        return vals

    return run


def bench_rk4(n, steps):
    cfg = SystemConfig(n=n, omega=0.0, kappa=1.0, gamma=0.5)
    m = build_pt_matrix(cfg)
    y0 = np.ones(n, dtype=np.complex128) / np.sqrt(n)
    out = np.empty((steps + 1, n), dtype=np.complex128)

    def run(kernel):
        status = kernel(m, y0.copy(), 1e-3, steps, 1, out)
        assert status == -1

    return run


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    cases = [
        ("qr_eigvals n=16", kernels.qr_eigvals, bench_eigensolver(16)),
        ("qr_eigvals n=64", kernels.qr_eigvals, bench_eigensolver(64)),
        ("rk4 n=8 x 20000", kernels.rk4_record, bench_rk4(8, 20_000)),
        ("rk4 n=64 x 2000", kernels.rk4_record, bench_rk4(64, 2_000)),
    ]

    print(f"backend: {kernels.BACKEND}")
    if kernels.BACKEND == "numba":
        print(f"{'kernel':<18} {'jit (ms)':>10} {'numpy (ms)':>12} {'speedup':>8}")
        for name, kernel, run in cases:
            run(kernel)  # compile before timing
            t_jit = best_of(lambda: run(kernel), args.repeats)
            t_py = best_of(lambda: run(kernel.py_func), args.repeats)
            print(f"{name:<18} {t_jit * 1e3:>10.3f} {t_py * 1e3:>12.3f} {t_py / t_jit:>7.1f}x")
    else:
        print(f"{'kernel':<18} {'numpy (ms)':>12}")
        for name, kernel, run in cases:
            t_py = best_of(lambda: run(kernel), args.repeats)
            print(f"{name:<18} {t_py * 1e3:>12.3f}")


if __name__ == "__main__":
    main()
