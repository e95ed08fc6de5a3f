#!/usr/bin/env python3
"""Benchmark the numba kernels against the numpy/Python fallback.

Runs each kernel flavor on identical inputs, reports wall times and the
speedup, and verifies that both flavors return bit-identical results.
Invoke from the repository root:

    python benchmarks/bench_kernels.py

The same comparison at the whole-command level is a matter of rerunning
any `pairscan` command with PAIRSCAN_NO_NUMBA=1.
"""

import time

import numpy as np

from pairscan import _kernels
from pairscan.sieve import enumerate_primes, primes_with_logs
from pairscan.correlations import pair_list


def timed(fn, *args, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def compare(name, args, check=np.array_equal):
    nb = _kernels.NUMBA[name]
    py = _kernels.FALLBACK[name]
    nb(*args)  # compile before timing
    t_nb, out_nb = timed(nb, *args)
    t_py, out_py = timed(py, *args)
    same = check(out_nb, out_py)
    print(
        f"{name:18s}  numba {t_nb * 1e3:9.2f} ms   fallback {t_py * 1e3:9.2f} ms   "
        f"speedup {t_py / t_nb:6.1f}x   identical: {same}"
    )
    if not same:
        raise SystemExit(f"flavor mismatch in {name}")


def main():
    if _kernels.NUMBA is None:
        raise SystemExit(
            "numba flavor unavailable (is PAIRSCAN_NO_NUMBA set?); nothing to compare"
        )
    print("kernel benchmark, desk-scale inputs\n")

    base = enumerate_primes(3163)  # base primes for a 1e7 sieve
    compare("mark_composites", (10**7 - 2**20, 2**20, base))

    primes, logs = primes_with_logs(10**6)
    compare("neumaier_sum", (logs,), check=lambda a, b: a == b)

    ns, prods = pair_list(10**6, 2)
    compare("bucket_sums", (ns, prods, 997))

    scales = np.ones(101, dtype=np.float64)
    active = np.ones(101, dtype=np.bool_)
    compare("step_drift_sups", (primes, logs, 101, 100, 10**6, scales, active))


if __name__ == "__main__":
    main()
