"""Exact multiplicative arithmetic functions and the pair singular series.

Everything here is exact integer arithmetic except the singular series,
which is a truncated Euler product carrying a rigorous tail bound: the
omitted log-mass over primes p > P is at most sum_{m>P} 2/(m-1)^2 <=
2/(P-1), so the truncated value is within a factor exp(2/(P-1)) of the
full product and tail_bound = exp(2/(P-1)) - 1 bounds the relative error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import ResourceLimitError
from .sieve import enumerate_primes

FACTORIZE_CAP = 1 << 50
DEFAULT_TRUNCATION_PRIME = 10**6

_trial_cache: dict = {"bound": 0, "primes": np.empty(0, dtype=np.int64)}


def _trial_primes(bound: int) -> np.ndarray:
    """Shared ascending base-prime list, grown on demand and reused."""
    if bound > _trial_cache["bound"]:
        b = max(bound, 1024)
        _trial_cache["primes"] = enumerate_primes(b)
        _trial_cache["bound"] = b
    return _trial_cache["primes"]


@dataclass(frozen=True)
class Factorization:
    """Prime-exponent decomposition of n; n = 1 has an empty factor list."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = 1
        prod = 1
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise ValueError("factors must be strictly increasing primes with exponents >= 1")
            prev = p
            prod *= p**e
        if prod != self.n or self.n < 1:
            raise ValueError(f"factor product {prod} does not equal n={self.n}")


@dataclass(frozen=True)
class SingularSeriesValue:
    """Truncated pair singular series for shift h.

    value is exactly 0 for odd h (tail_bound 0); for even h it is the
    product over primes <= truncation_prime, and tail_bound bounds the
    relative error of the truncation.
    """

    h: int
    value: float
    truncation_prime: int
    tail_bound: float


def factorize(n: int, *, cap: int = FACTORIZE_CAP) -> Factorization:
    """Factor n by trial division over the shared base-prime list."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise ResourceLimitError(f"factorization cap exceeded: {n} > {cap}")
    factors = []
    m = n
    for p in _trial_primes(math.isqrt(n)).tolist():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def euler_phi(f: Factorization) -> int:
    """Euler totient, exact."""
    result = 1
    for p, e in f.factors:
        result *= p ** (e - 1) * (p - 1)
    return result


def moebius(f: Factorization) -> int:
    """Moebius function: 0 on squarefull input, else (-1)^(#prime factors)."""
    for _, e in f.factors:
        if e >= 2:
            return 0
    return -1 if len(f.factors) % 2 else 1


def _phi2_from(f: Factorization, h: int) -> int:
    h_red = h % f.n
    result = 1
    for p, e in f.factors:
        if h_red % p == 0:
            result *= p ** (e - 1) * (p - 1)
        else:
            result *= p ** (e - 1) * (p - 2)
    return result


def phi2(q: int, h: int) -> int:
    """Count residues a mod q with gcd(a, q) = gcd(a + h, q) = 1, exact.

    Multiplicative in q: a prime power p^a contributes p^(a-1)*(p-1) when
    p divides h and p^(a-1)*(p-2) otherwise. The sign of h is irrelevant
    because only h mod q matters.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if h == 0:
        raise ValueError("h must be nonzero")
    return _phi2_from(factorize(q), h)


@lru_cache(maxsize=32)
def _even_series_base(truncation_prime: int) -> float:
    """2 * prod_{2 < p <= P} (1 - 1/(p-1)^2), multiplied in ascending p order."""
    odd = enumerate_primes(truncation_prime)[1:].astype(np.float64)
    d = odd - 1.0
    factors = 1.0 - 1.0 / (d * d)
    return math.prod(factors.tolist(), start=2.0)


def singular_series(
    h: int, truncation_prime: int = DEFAULT_TRUNCATION_PRIME
) -> SingularSeriesValue:
    """Hardy-Littlewood pair constant for gap h, truncated at a prime bound.

    Odd h gives exactly 0. Even h gives the base product times the factor
    (p-1)/(p-2) for each odd prime p dividing h, so the h = 6 value is
    exactly twice the h = 2 value.
    """
    if h == 0:
        raise ValueError("h must be nonzero")
    if truncation_prime < 3:
        raise ValueError("truncation prime must be >= 3")
    if h % 2 != 0:
        return SingularSeriesValue(h, 0.0, truncation_prime, 0.0)
    value = _even_series_base(truncation_prime)
    for p, _ in factorize(abs(h)).factors:
        if p > 2:
            value *= (p - 1.0) / (p - 2.0)
    tail_bound = math.exp(2.0 / (truncation_prime - 1)) - 1.0
    return SingularSeriesValue(h, value, truncation_prime, tail_bound)


def partial_sum_phi2_over_phi(Q: int, h: int) -> float:
    """Partial sum over q <= Q of phi2(q, h)/phi(q).

    A growth probe only: each term is an exact integer ratio taken in
    double width, accumulated with compensated summation in ascending q.
    No convergence claim is attached to the result.
    """
    if Q < 1:
        raise ValueError("Q must be >= 1")
    if h == 0:
        raise ValueError("h must be nonzero")
    terms = np.empty(Q, dtype=np.float64)
    for q in range(1, Q + 1):
        f = factorize(q)
        terms[q - 1] = _phi2_from(f, h) / euler_phi(f)
    return float(_kernels.neumaier_sum(terms))
