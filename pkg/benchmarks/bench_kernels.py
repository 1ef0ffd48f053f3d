#!/usr/bin/env python3
"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--reps 200]

Micro-benchmarks call both kernel modules directly.  The end-to-end timing
runs one simulation cell in a fresh interpreter per backend, since the
backend is fixed at import.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from hdbf import _kernels_py

try:
    from hdbf import _kernels
except ImportError:
    _kernels = None

CELL_SNIPPET = """
import time
from hdbf._backend import BACKEND
from hdbf.simulation import SimConfig, run_cell
cfg = SimConfig(p={p}, n1=30, n2=50, rho2=0.1, n_reps={reps}, seed=1)
t0 = time.perf_counter()
run_cell(cfg)
print(BACKEND, time.perf_counter() - t0)
"""


def micro_cases():
    rng = np.random.default_rng(0)
    xs = rng.uniform(0.0, 5.0, 10_000)
    return [
        ("beta_i(1.365, 85.88, 0.04) scalar", lambda k: k.beta_i(1.365, 85.88, 0.04, 0.96), 20_000),
        ("gamma_p(17, 15) scalar", lambda k: k.gamma_p(17.0, 15.0), 20_000),
        ("lbeta(3.5, 1200) scalar", lambda k: k.lbeta(3.5, 1200.0), 50_000),
        ("f_cdf_array 10k points", lambda k: k.f_cdf_array(xs, 34.0, 2590.0, True), 20),
        ("chi2_cdf_array 10k points", lambda k: k.chi2_cdf_array(xs * 10, 34.0, False), 20),
    ]


def best_of(fn, number, repeat):
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def run_micro(repeat):
    print(f"{'kernel':32s} {'python (us)':>12s} {'cython (us)':>12s} {'speedup':>8s}")
    for name, call, number in micro_cases():
        t_py = best_of(lambda: call(_kernels_py), number, repeat)
        if _kernels is None:
            print(f"{name:32s} {t_py * 1e6:12.2f} {'n/a':>12s} {'':>8s}")
            continue
        t_cy = best_of(lambda: call(_kernels), number, repeat)
        print(f"{name:32s} {t_py * 1e6:12.2f} {t_cy * 1e6:12.2f} {t_py / t_cy:7.1f}x")


def run_cell_timing(reps, p):
    print(f"\nend-to-end run_cell (p={p}, n=(30,50), {reps} reps)")
    for pure in ("1", "0"):
        env = dict(os.environ, HDBF_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", CELL_SNIPPET.format(p=p, reps=reps)],
                             env=env, capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        print(f"  {backend:8s} {float(secs):8.3f} s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--reps", type=int, default=200)
    ap.add_argument("--p", type=int, default=50)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback is timed")
    run_micro(args.repeat)
    run_cell_timing(args.reps, args.p)


if __name__ == "__main__":
    main()
