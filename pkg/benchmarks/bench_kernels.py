"""Benchmark the compiled kernels against the pure-Python fallback.

Usage:
    python benchmarks/bench_kernels.py [--repeat 5] [--scale 1.0]

Times each kernel on a representative workload and prints a table with
the speedup of the compiled extension.  Falls back to reporting only the
Python numbers when the extension is not built.
"""

import argparse
import time

import numpy as np

from sphfun import _kernels_py

try:
    from sphfun import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(scale):
    rng = np.random.default_rng(2024)
    n_gamma = int(20000 * scale)
    zs = [complex(a, b) for a, b in zip(rng.uniform(0.6, 8, n_gamma),
                                        rng.uniform(-8, 8, n_gamma))]
    n_hyp = int(2000 * scale)
    hyp_args = [(complex(rng.uniform(0.2, 2), rng.uniform(-1, 1)),
                 complex(rng.uniform(0.2, 2), rng.uniform(-1, 1)),
                 complex(rng.uniform(2.2, 4), rng.uniform(-1, 1)),
                 rng.uniform(-0.85, 0.85)) for _ in range(n_hyp)]
    theta, w = np.polynomial.legendre.leggauss(200)
    theta = 0.5 * np.pi * (theta + 1.0)
    w = 0.5 * np.pi * w

    def gamma_grid(k):
        return lambda: [k.cgamma(z) for z in zs]

    def lgamma_grid(k):
        return lambda: [k.clgamma(z) for z in zs]

    def hyp_grid(k):
        return lambda: [k.hyp2f1_series(a, b, c, z, 1e-13, 100000)
                        for (a, b, c, z) in hyp_args]

    def recursion(k):
        return lambda: [k.hc_gamma_coeffs(m, m2, 0.9 - 0.4j, 60)
                        for (m, m2) in ((1, 0), (2, 0), (2, 1), (4, 3))
                        for _ in range(int(50 * scale))]

    def circle(k):
        return lambda: [k.poisson_circle_sum(0.76, 0.8 - 0.3j, j % 3, 4096)
                        for j in range(int(100 * scale))]

    def polar(k):
        return lambda: [k.poisson_polar_sum(theta, w, 0.76, 0.8 - 0.3j, 2)
                        for _ in range(int(200 * scale))]

    return [
        ("gamma scalar grid", gamma_grid),
        ("log-gamma scalar grid", lgamma_grid),
        ("2F1 series grid", hyp_grid),
        ("series recursion", recursion),
        ("circle quadrature sum", circle),
        ("polar quadrature sum", polar),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--scale", type=float, default=1.0)
    args = ap.parse_args()

    print(f"{'kernel':<24}{'python (s)':>12}{'cython (s)':>12}"
          f"{'speedup':>9}")
    for name, make in workloads(args.scale):
        t_py = timed(make(_kernels_py), args.repeat)
        if _kernels_cy is not None:
            t_cy = timed(make(_kernels_cy), args.repeat)
            print(f"{name:<24}{t_py:>12.4f}{t_cy:>12.4f}"
                  f"{t_py / t_cy:>8.1f}x")
        else:
            print(f"{name:<24}{t_py:>12.4f}{'n/a':>12}{'':>9}")
    if _kernels_cy is None:
        print("\ncompiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
