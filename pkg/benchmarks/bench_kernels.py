"""Benchmark the compiled kernels against the pure-numpy fallback.

Run from the repository root after installing the package:

    python benchmarks/bench_kernels.py

Force the fallback everywhere in the package with BELLBOUNDS_PURE=1; this
script imports both implementations directly so a single run compares them.
"""

import math
import time

import numpy as np

from bellbounds.kernels import fallback

try:
    from bellbounds.kernels import _core
except ImportError:
    _core = None


def timed(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_eigh(impl, mats, repeat=5):
    def run():
        for H in mats:
            impl.eigh(H)

    return timed(run, repeat)


def bench_batch(impl, params, op, repeat=5):
    return timed(lambda: impl.batch_expectations(params, op), repeat)


def main():
    rng = np.random.default_rng(0)
    rows = []
    for n in (4, 8, 16):
        mats = []
        for _ in range(200):
            M = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            mats.append(M + M.conj().T)
        t_py = bench_eigh(fallback, mats)
        t_c = bench_eigh(_core, mats) if _core else float("nan")
        rows.append((f"eigh {n}x{n} (200 mats)", t_py, t_c))

    op = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    op = op + op.conj().T
    for nsamp in (10_000, 100_000):
        params = rng.normal(size=(nsamp, 16))
        t_py = bench_batch(fallback, params, op)
        t_c = bench_batch(_core, params, op) if _core else float("nan")
        rows.append((f"batch_expectations n={nsamp}", t_py, t_c))

    print(f"{'kernel':<32} {'python [s]':>12} {'compiled [s]':>13} {'speedup':>8}")
    for name, t_py, t_c in rows:
        speed = t_py / t_c if t_c == t_c and t_c > 0 else float("nan")
        print(f"{name:<32} {t_py:>12.4f} {t_c:>13.4f} {speed:>7.1f}x")
    if _core is None:
        print("note: compiled backend not built; only the fallback was timed")


if __name__ == "__main__":
    main()
