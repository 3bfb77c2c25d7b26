"""Benchmark: compiled Cython kernels vs the pure-NumPy fallback.

Times the hot right-hand-side and Hamiltonian evaluations for several
system sizes, plus one end-to-end integration driven through each
backend.  Run:

    python benchmarks/bench_kernels.py [--repeats 20000]
"""

import argparse
import math
import time

import numpy as np
from scipy.integrate import solve_ivp

from catvortex import _kernels_py

try:
    from catvortex import _kernels_cy
except ImportError:
    _kernels_cy = None


def random_state(n, seed=0):
    rng = np.random.default_rng(seed)
    v = rng.uniform(-1.0, 1.0, n)
    u = rng.uniform(-math.pi, math.pi, n)
    gamma = np.ones(n)
    return v, u, gamma


def time_call(fn, repeats):
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - t0) / repeats


def bench_kernels(repeats):
    backends = [("python", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("cython", _kernels_cy))

    print(f"{'kernel':<14}{'N':>5}" + "".join(f"{name + ' (us)':>16}" for name, _ in backends) + f"{'speedup':>10}")
    for n in (2, 10, 50):
        v, u, gamma = random_state(n)
        reps = max(repeats // n, 100)
        row = {}
        for name, mod in backends:
            dv, du = np.empty(n), np.empty(n)
            row[name] = time_call(lambda m=mod: m.rhs(v, u, gamma, 1.0, dv, du), reps)
        speedup = row["python"] / row["cython"] if "cython" in row else float("nan")
        print(
            f"{'rhs':<14}{n:>5}"
            + "".join(f"{row[name] * 1e6:>16.2f}" for name, _ in backends)
            + f"{speedup:>10.1f}"
        )
        for name, mod in backends:
            row[name] = time_call(lambda m=mod: m.hamiltonian(v, u, gamma, 1.0), reps)
        speedup = row["python"] / row["cython"] if "cython" in row else float("nan")
        print(
            f"{'hamiltonian':<14}{n:>5}"
            + "".join(f"{row[name] * 1e6:>16.2f}" for name, _ in backends)
            + f"{speedup:>10.1f}"
        )


def bench_integration():
    """One adaptive integration of a 10-vortex cluster through each backend."""
    n = 10
    rng = np.random.default_rng(17)
    u0 = rng.uniform(-0.12, 0.12, n)
    v0 = 0.7 + rng.uniform(-0.12, 0.12, n)
    gamma = np.ones(n)
    y0 = np.concatenate([v0, u0])

    backends = [("python", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("cython", _kernels_cy))

    print("\nend-to-end: 10-vortex cluster, t_final=5, DOP853 at 1e-12")
    times = {}
    for name, mod in backends:

        def f(t, y, m=mod):
            yd = np.empty_like(y)
            m.rhs(y[:n], y[n:], gamma, 1.0, yd[:n], yd[n:])
            return yd

        t0 = time.perf_counter()
        sol = solve_ivp(f, (0.0, 5.0), y0, method="DOP853", rtol=1e-12, atol=1e-12)
        times[name] = time.perf_counter() - t0
        print(f"  {name:<8} {times[name]:.2f} s  ({sol.nfev} rhs evaluations)")
    if "cython" in times:
        print(f"  speedup {times['python'] / times['cython']:.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=20000, help="kernel-call repeats at N=2")
    args = parser.parse_args()
    if _kernels_cy is None:
        print("compiled backend not available; timing the pure fallback only\n")
    bench_kernels(args.repeats)
    bench_integration()


if __name__ == "__main__":
    main()
