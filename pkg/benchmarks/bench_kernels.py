"""Benchmark the compiled kernels against the pure-numpy fallback.

Runs each hot kernel on identical pre-drawn inputs under both backends,
checks agreement, and prints timings. Usage:

    python benchmarks/bench_kernels.py [--reps 20000] [--steps 1000]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from trendvar._kernels import BACKEND, get_backend


def _time(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_crw(backends, reps, steps, g):
    u0 = g.random(reps)
    us = g.random((reps, steps - 1))
    results = {}
    for name, mod in backends.items():
        out = np.empty(reps)
        dt = _time(mod.crw_terminal, 0.7, u0, us, out)
        results[name] = (dt, out.copy())
    return results


def bench_semiparam(backends, reps, steps, g):
    pool = g.lognormal(0, 0.5, 257)
    u0 = g.random(reps)
    us = g.random((reps, steps - 1))
    um = g.random((reps, steps))
    results = {}
    for name, mod in backends.items():
        out = np.empty(reps)
        dt = _time(mod.semiparam_terminal, 0.7, u0, us, um, pool, out)
        results[name] = (dt, out.copy())
    return results


def bench_renewal(backends, reps, width, g):
    mag_cat = g.lognormal(-6, 0.3, 400)
    tau_cat = g.exponential(1.0, 400)
    offsets = np.arange(0, 401, 100, dtype=np.int64)
    u_sign = g.random((reps, width))
    u_pick = g.random((reps, width))
    s0 = np.where(g.random(reps) < 0.5, 1, -1).astype(np.int8)
    horizon = 0.8 * width  # most replicates finish inside one block
    results = {}
    for name, mod in backends.items():
        t_el = np.zeros(reps)
        cum = np.zeros(reps)
        s_prev = s0.copy()
        done = np.zeros(reps, dtype=np.uint8)
        n_ev = np.zeros(reps, dtype=np.int64)
        t0 = time.perf_counter()
        mod.renewal_block(0.65, horizon, mag_cat, tau_cat, offsets,
                          u_sign, u_pick, t_el, cum, s_prev, done, n_ev)
        results[name] = (time.perf_counter() - t0, cum.copy())
    return results


def report(label, results, exact=True):
    fallback_dt = results["fallback"][0]
    for name, (dt, out) in results.items():
        speedup = fallback_dt / dt if dt > 0 else float("inf")
        print(f"  {label:<22} {name:<9} {dt * 1e3:9.2f} ms   x{speedup:5.2f}")
    if "compiled" in results:
        a, b = results["compiled"][1], results["fallback"][1]
        if exact:
            agree = np.array_equal(a, b)
            print(f"  {label:<22} agreement: {'bit-identical' if agree else 'MISMATCH'}")
        else:
            err = float(np.abs(a - b).max())
            print(f"  {label:<22} agreement: max |diff| = {err:.3e}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=20_000)
    parser.add_argument("--steps", type=int, default=1000)
    parser.add_argument("--width", type=int, default=64)
    args = parser.parse_args()

    backends = {"fallback": get_backend("fallback")}
    if BACKEND == "compiled":
        backends["compiled"] = get_backend("compiled")
    else:
        print("compiled backend not built; benchmarking fallback only")

    g = np.random.default_rng(0)
    print(f"active backend: {BACKEND}; reps={args.reps}, steps={args.steps}")
    report("crw_terminal", bench_crw(backends, args.reps, args.steps, g))
    report("semiparam_terminal",
           bench_semiparam(backends, args.reps, args.steps, g), exact=False)
    report("renewal_block", bench_renewal(backends, args.reps, args.width, g))


if __name__ == "__main__":
    main()
