"""Benchmark the compiled fixed-point kernels against the pure-numpy fallback.

Times the two hot kernels (bilinear ball ascent and the lp->lq power-type
iteration) on representative workloads, checks that both backends agree to
1e-10, and reports the speedup.  Run with:

    python benchmarks/kernel_bench.py
"""

import time

import numpy as np

from entrobound import Weights, optimal_bound, random_unitary
from entrobound._kernels import _pure

try:
    from entrobound._kernels import _fast
except ImportError:
    _fast = None


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels():
    print(f"{'kernel':<10} {'d':>4} {'cols':>5} {'pure [ms]':>10} "
          f"{'fast [ms]':>10} {'speedup':>8} {'agree':>7}")
    rng = np.random.default_rng(0)
    for d in (2, 4, 8, 16, 36):
        u = np.array(random_unitary(d, seed=d).unitary)
        cols = 38
        w0 = rng.standard_normal((d, cols)) + 1j * rng.standard_normal((d, cols))
        repeats = 5

        for name, args, runner in [
            ("omega", (1.8, 1.9), lambda m, a=None: m.omega_ascent(u, 1.8, 1.9, w0)),
            ("pq", (1.5, 3.0), lambda m, a=None: m.pq_ascent(u, 1.5, 3.0, w0)),
        ]:
            t_pure = time_call(lambda: runner(_pure), repeats)
            if _fast is None:
                print(f"{name:<10} {d:>4} {cols:>5} {t_pure * 1e3:>10.3f} "
                      f"{'n/a':>10} {'n/a':>8} {'n/a':>7}")
                continue
            t_fast = time_call(lambda: runner(_fast), repeats)
            vals_p = np.asarray(runner(_pure)[0])
            vals_f = np.asarray(runner(_fast)[0])
            agree = bool(np.max(np.abs(vals_p - vals_f)) < 1e-10)
            print(f"{name:<10} {d:>4} {cols:>5} {t_pure * 1e3:>10.3f} "
                  f"{t_fast * 1e3:>10.3f} {t_pure / t_fast:>8.2f} {str(agree):>7}")


def bench_end_to_end():
    pair = random_unitary(4, seed=1)
    w = Weights(1.0, 0.7)

    import entrobound._kernels as kernels

    results = {}
    for backend, mod in [("pure", _pure)] + ([("compiled", _fast)] if _fast else []):
        kernels._impl = mod
        kernels.omega_ascent = mod.omega_ascent
        kernels.pq_ascent = mod.pq_ascent
        # norms.py binds the module, not the functions, so this swap is enough
        t0 = time.perf_counter()
        res = optimal_bound(pair, w, seed=2)
        results[backend] = (time.perf_counter() - t0, res.upper, res.lower)
    for backend, (t, upper, lower) in results.items():
        print(f"optimal_bound d=4 [{backend:>8}]: {t * 1e3:8.1f} ms  "
              f"bracket [{lower:.9f}, {upper:.9f}]")


if __name__ == "__main__":
    print("backend comparison: pure numpy vs compiled extension\n")
    bench_kernels()
    print()
    bench_end_to_end()
