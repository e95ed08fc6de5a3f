"""Hot numeric kernels, in two interchangeable flavors.

The numba flavor compiles the inner loops with @njit; the fallback flavor
uses numpy strided assignment for sieve marking and plain Python loops for
the inherently sequential compensated sums. Both flavors apply the same
IEEE operations in the same order, so their outputs are bit-identical
(test_kernels.py checks this).

Selection happens at import time: numba is used when importable unless the
environment variable PAIRSCAN_NO_NUMBA is set to 1/true/yes. Both flavors
stay importable through the FALLBACK and NUMBA dicts for the equivalence
tests and benchmarks/bench_kernels.py.

All summation kernels use Neumaier (Kahan-Babuska) compensation and a
fixed ascending traversal order, which keeps results independent of
segmentation and worker count.
"""

from __future__ import annotations

import os

import numpy as np

ENV_FLAG = "PAIRSCAN_NO_NUMBA"


def _numba_disabled() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in ("1", "true", "yes")


# ---------------------------------------------------------------------------
# Fallback flavor
# ---------------------------------------------------------------------------

def _mark_composites_np(lo: int, size: int, base_primes: np.ndarray) -> np.ndarray:
    """Flag positions of [lo, lo+size) holding a multiple m >= p*p of a base prime."""
    comp = np.zeros(size, dtype=np.bool_)
    hi = lo + size - 1
    for p in base_primes.tolist():
        if p * p > hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start <= hi:
            comp[start - lo :: p] = True
    return comp


def _neumaier_sum_py(values: np.ndarray) -> float:
    """Compensated sum of values in index order."""
    s = 0.0
    c = 0.0
    for v in values.tolist():
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c


def _bucket_sums_py(ns: np.ndarray, values: np.ndarray, q: int) -> np.ndarray:
    """Per-residue compensated sums of values, bucketed by ns[i] mod q."""
    s = [0.0] * q
    c = [0.0] * q
    vals = values.tolist()
    for i, n in enumerate(ns.tolist()):
        r = n % q
        v = vals[i]
        t = s[r] + v
        if abs(s[r]) >= abs(v):
            c[r] += (s[r] - t) + v
        else:
            c[r] += (v - t) + s[r]
        s[r] = t
    return np.array([s[r] + c[r] for r in range(q)], dtype=np.float64)


def _step_drift_sups_py(
    points: np.ndarray,
    weights: np.ndarray,
    q: int,
    phi_q: int,
    x: int,
    scales: np.ndarray,
    active: np.ndarray,
) -> np.ndarray:
    """Per-class sup over y in [2, x] of |step_sum(y) - scales[r]*y/phi_q|.

    points must be ascending; class r = point mod q accumulates weight at
    each of its points. The sup of the piecewise-linear drift is attained
    just before a jump, at a jump, or at the endpoint y = x, so those are
    the only candidates evaluated. The left limit at a jump located at the
    domain edge y = 2 lies outside [2, x] and is skipped.
    """
    s = [0.0] * q
    c = [0.0] * q
    best = [0.0] * q
    sc = scales.tolist()
    act = active.tolist()
    wts = weights.tolist()
    for i, p in enumerate(points.tolist()):
        r = p % q
        if not act[r]:
            continue
        if p > 2:
            cand = abs((s[r] + c[r]) - (sc[r] * p) / phi_q)
            if cand > best[r]:
                best[r] = cand
        v = wts[i]
        t = s[r] + v
        if abs(s[r]) >= abs(v):
            c[r] += (s[r] - t) + v
        else:
            c[r] += (v - t) + s[r]
        s[r] = t
        cand = abs((s[r] + c[r]) - (sc[r] * p) / phi_q)
        if cand > best[r]:
            best[r] = cand
    for r in range(q):
        if act[r]:
            cand = abs((s[r] + c[r]) - (sc[r] * x) / phi_q)
            if cand > best[r]:
                best[r] = cand
    return np.array(best, dtype=np.float64)


FALLBACK = {
    "mark_composites": _mark_composites_np,
    "neumaier_sum": _neumaier_sum_py,
    "bucket_sums": _bucket_sums_py,
    "step_drift_sups": _step_drift_sups_py,
}


# ---------------------------------------------------------------------------
# Numba flavor
# ---------------------------------------------------------------------------

def _build_numba():
    from numba import njit

    @njit(cache=True, nogil=True)
    def mark_composites(lo, size, base_primes):
        comp = np.zeros(size, dtype=np.bool_)
        hi = lo + size - 1
        for i in range(base_primes.size):
            p = base_primes[i]
            if p * p > hi:
                break
            start = p * p
            first = ((lo + p - 1) // p) * p
            if first > start:
                start = first
            for m in range(start - lo, size, p):
                comp[m] = True
        return comp

    @njit(cache=True, nogil=True)
    def neumaier_sum(values):
        s = 0.0
        c = 0.0
        for i in range(values.size):
            v = values[i]
            t = s + v
            if abs(s) >= abs(v):
                c += (s - t) + v
            else:
                c += (v - t) + s
            s = t
        return s + c

    @njit(cache=True, nogil=True)
    def bucket_sums(ns, values, q):
        s = np.zeros(q, dtype=np.float64)
        c = np.zeros(q, dtype=np.float64)
        for i in range(ns.size):
            r = ns[i] % q
            v = values[i]
            t = s[r] + v
            if abs(s[r]) >= abs(v):
                c[r] += (s[r] - t) + v
            else:
                c[r] += (v - t) + s[r]
            s[r] = t
        return s + c

    @njit(cache=True, nogil=True)
    def step_drift_sups(points, weights, q, phi_q, x, scales, active):
        s = np.zeros(q, dtype=np.float64)
        c = np.zeros(q, dtype=np.float64)
        best = np.zeros(q, dtype=np.float64)
        for i in range(points.size):
            p = points[i]
            r = p % q
            if not active[r]:
                continue
            if p > 2:
                cand = abs((s[r] + c[r]) - (scales[r] * p) / phi_q)
                if cand > best[r]:
                    best[r] = cand
            v = weights[i]
            t = s[r] + v
            if abs(s[r]) >= abs(v):
                c[r] += (s[r] - t) + v
            else:
                c[r] += (v - t) + s[r]
            s[r] = t
            cand = abs((s[r] + c[r]) - (scales[r] * p) / phi_q)
            if cand > best[r]:
                best[r] = cand
        for r in range(q):
            if active[r]:
                cand = abs((s[r] + c[r]) - (scales[r] * x) / phi_q)
                if cand > best[r]:
                    best[r] = cand
        return best

    return {
        "mark_composites": mark_composites,
        "neumaier_sum": neumaier_sum,
        "bucket_sums": bucket_sums,
        "step_drift_sups": step_drift_sups,
    }


NUMBA = None
if not _numba_disabled():
    try:
        NUMBA = _build_numba()
    except ImportError:
        NUMBA = None

USING_NUMBA = NUMBA is not None
_ACTIVE = NUMBA if USING_NUMBA else FALLBACK

mark_composites = _ACTIVE["mark_composites"]
neumaier_sum = _ACTIVE["neumaier_sum"]
bucket_sums = _ACTIVE["bucket_sums"]
step_drift_sups = _ACTIVE["step_drift_sups"]
