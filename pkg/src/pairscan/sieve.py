"""Segmented sieving for primes and von Mangoldt weights.

Provides:
- enumerate_primes: all primes up to a limit (odd-only Eratosthenes)
- lambda_range: von Mangoldt values Lambda(n) over an arbitrary window
- chebyshev_theta_progression: sum of log p over primes in a residue class

Lambda(n) is log p when n = p^k (prime p, k >= 1) and 0 otherwise, natural
log in float64. The sieve marks, for each base prime p <= sqrt(hi), every
multiple m >= p*p inside the window; unmarked entries >= 2 are prime. The
powers of each base prime then receive log p, with the log computed once
per base prime so that Lambda(p^k) is bit-identical to Lambda(p).

All outputs are immutable numpy arrays; segments are independent work
units, so results do not depend on segment_size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ResourceLimitError

DEFAULT_SEGMENT_SIZE = 1 << 20
PRIME_LIMIT_CAP = 1 << 40


@dataclass(frozen=True)
class SieveConfig:
    """Sieve sizing: the largest n needed, the working-block length, and
    the base-prime bound actually used (must cover floor(sqrt(limit)))."""

    limit: int
    segment_size: int = DEFAULT_SEGMENT_SIZE
    base_prime_bound: int = 0

    def __post_init__(self):
        if self.limit < 2:
            raise ValueError("limit must be >= 2")
        if self.segment_size < 1:
            raise ValueError("segment_size must be >= 1")
        if self.base_prime_bound == 0:
            object.__setattr__(self, "base_prime_bound", math.isqrt(self.limit))
        if self.base_prime_bound < math.isqrt(self.limit):
            raise ValueError("base_prime_bound below floor(sqrt(limit))")


@dataclass(frozen=True)
class LambdaTable:
    """Contiguous block of Lambda values for n = start .. start+len-1.

    values[i] > 0 exactly when start+i is a prime power p^k, in which case
    values[i] = log p; is_prime[i] flags the k = 1 case.
    """

    start: int
    values: np.ndarray
    is_prime: np.ndarray

    @property
    def end(self) -> int:
        return self.start + len(self.values) - 1

    def get(self, n: int) -> float:
        """Lambda(n); zero for n <= 0, error outside the covered window."""
        if n <= 0:
            return 0.0
        if n < self.start or n > self.end:
            raise IndexError(f"n={n} outside table window [{self.start}, {self.end}]")
        return float(self.values[n - self.start])


def enumerate_primes(limit: int, *, cap: int = PRIME_LIMIT_CAP) -> np.ndarray:
    """All primes <= limit, ascending, as an immutable int64 array."""
    if limit > cap:
        raise ResourceLimitError(f"prime limit {limit} exceeds cap {cap}")
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    # odd-only storage: index i holds 2i+1
    half = (limit - 1) // 2 + 1
    flags = np.ones(half, dtype=np.bool_)
    flags[0] = False  # 1
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[(p - 1) // 2]:
            flags[(p * p - 1) // 2 :: p] = False
    odds = 2 * np.flatnonzero(flags).astype(np.int64) + 1
    primes = np.concatenate([np.array([2], dtype=np.int64), odds])
    primes.setflags(write=False)
    return primes


def primes_with_logs(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Primes <= limit together with their natural logs (float64)."""
    primes = enumerate_primes(limit)
    logs = np.log(primes.astype(np.float64))
    logs.setflags(write=False)
    return primes, logs


def lambda_range(
    lo: int,
    hi: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> LambdaTable:
    """von Mangoldt values over [lo, hi], sieved in independent segments.

    Output is bit-identical for any segment_size: every entry depends only
    on its own integer value and the shared base-prime logs.
    """
    if lo < 1:
        raise ValueError("lo must be >= 1")
    if hi < lo:
        raise ValueError(f"range error: hi={hi} < lo={lo}")
    if hi > PRIME_LIMIT_CAP:
        raise ResourceLimitError(f"sieve limit {hi} exceeds cap {PRIME_LIMIT_CAP}")
    config = SieveConfig(limit=max(hi, 2), segment_size=segment_size)

    base_primes = enumerate_primes(config.base_prime_bound)
    base_logs = np.log(base_primes.astype(np.float64))

    total = hi - lo + 1
    values = np.zeros(total, dtype=np.float64)
    is_prime = np.zeros(total, dtype=np.bool_)

    for seg_lo in range(lo, hi + 1, segment_size):
        seg_hi = min(seg_lo + segment_size - 1, hi)
        size = seg_hi - seg_lo + 1
        composite = _kernels.mark_composites(seg_lo, size, base_primes)
        unmarked = ~composite
        if seg_lo == 1:
            unmarked[0] = False
        idx = np.flatnonzero(unmarked)
        if idx.size:
            off = seg_lo - lo
            values[off + idx] = np.log((seg_lo + idx).astype(np.float64))
            is_prime[off + idx] = True
        # prime powers p^k of base primes inside this segment
        for j, p in enumerate(base_primes.tolist()):
            if p > seg_hi:
                break
            pk = p
            while pk < seg_lo:
                pk *= p
            while pk <= seg_hi:
                values[pk - lo] = base_logs[j]
                is_prime[pk - lo] = pk == p
                pk *= p

    values.setflags(write=False)
    is_prime.setflags(write=False)
    return LambdaTable(start=lo, values=values, is_prime=is_prime)


def chebyshev_theta_progression(x: float, q: int, a: int) -> float:
    """Sum of log p over primes p <= x with p congruent to a mod q.

    x may be any positive real; the sum only changes at integers, so it is
    evaluated at floor(x). a is reduced mod q.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    limit = math.floor(x)
    if limit < 2:
        return 0.0
    primes, logs = primes_with_logs(limit)
    return float(_kernels.bucket_sums(primes, logs, q)[a % q])
