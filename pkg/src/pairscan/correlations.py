"""Shifted correlations of the von Mangoldt function and their error terms.

The central object is the sparse pair list for a shift h: the ascending
positions n <= x where Lambda(n) * Lambda(n+h) is nonzero, with the
products. Every per-modulus quantity buckets this one list by n mod q, so
the modulus scan costs O(moduli * pair count) instead of O(moduli * x).

Error terms measured here:
- E(y; q) behind eh_error_sup: theta(y; q, a) - y/phi(q), maximized
  jointly over coprime a and real y in [2, x] (the two maxima commute).
- E2(x; q, a, h) behind geh2_error and residue_error_profile: the
  restricted correlation sum minus its expected main term
  S(h) * x / phi(q), the main term present only when both a and a+h are
  coprime to q.

All bucket sums use compensated summation with a fixed ascending merge
order, so results are identical no matter how work is scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .multiplicative import (
    DEFAULT_TRUNCATION_PRIME,
    euler_phi,
    factorize,
    singular_series,
)
from .sieve import DEFAULT_SEGMENT_SIZE, lambda_range, primes_with_logs


@dataclass(frozen=True)
class PairCorrelation:
    """Weighted pair count Psi_h(x) = sum_{n<=x} Lambda(n) Lambda(n+h)."""

    x: int
    h: int
    value: float


@dataclass(frozen=True)
class ResidueErrorProfile:
    """Per-residue errors E2(x; q, a, h) for the phi(q) residues coprime to q.

    main_term_unit is S(h) * x / phi(q); residues where a+h shares a factor
    with q have indicator 0, so their stored error is the raw restricted
    sum. With sup_over_y=True each entry instead holds
    max_{2<=y<=x} |E2(y; q, a, h)| (a nonnegative magnitude).
    """

    x: int
    q: int
    h: int
    main_term_unit: float
    errors: dict[int, float]
    max_abs_error: float
    truncation_prime: int
    sup_over_y: bool = False


@dataclass(frozen=True)
class DecompositionCheck:
    """Result of the residue-class decomposition identity check."""

    passed: bool
    lhs: float
    rhs: float
    residual: float
    contributing_residues: int


def pair_list(
    x: int, h: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> tuple[np.ndarray, np.ndarray]:
    """Ascending n <= x with Lambda(n)*Lambda(n+h) != 0, and the products.

    Lambda(m) counts as 0 for m <= 0, which silently truncates negative
    shifts near the left edge.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    if h == 0:
        raise ValueError("h must be nonzero")
    table = lambda_range(1, x + max(h, 0), segment_size=segment_size)
    v = table.values
    a = v[0:x]
    if h > 0:
        b = v[h : x + h]
    else:
        b = np.zeros(x, dtype=np.float64)
        if x > -h:
            b[-h:] = v[0 : x + h]
    prod = a * b
    idx = np.flatnonzero(prod)
    return (idx + 1).astype(np.int64), prod[idx]


def psi(x: int, h: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE) -> PairCorrelation:
    """Correlation sum over n <= x of Lambda(n) Lambda(n+h)."""
    _, prods = pair_list(x, h, segment_size=segment_size)
    return PairCorrelation(x, h, float(_kernels.neumaier_sum(prods)))


def _class_sums(
    x: int, h: int, q: int, pairs: tuple[np.ndarray, np.ndarray] | None = None
) -> np.ndarray:
    if q < 1:
        raise ValueError("q must be >= 1")
    ns, prods = pairs if pairs is not None else pair_list(x, h)
    return _kernels.bucket_sums(ns, prods, q)


def psi_progression(
    x: int,
    h: int,
    q: int,
    a: int,
    *,
    pairs: tuple[np.ndarray, np.ndarray] | None = None,
) -> float:
    """Correlation sum restricted to n congruent to a mod q."""
    return float(_class_sums(x, h, q, pairs)[a % q])


def geh2_error(
    x: int,
    q: int,
    a: int,
    h: int,
    *,
    truncation_prime: int = DEFAULT_TRUNCATION_PRIME,
    pairs: tuple[np.ndarray, np.ndarray] | None = None,
) -> float:
    """E2(x; q, a, h): restricted correlation minus its main term.

    Requires gcd(a, q) = 1. The main term S(h) * x / phi(q) is dropped
    when a+h shares a factor with q (the indicator case).
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if math.gcd(a, q) != 1:
        raise ValueError(f"residue a={a} not coprime to q={q}")
    restricted = psi_progression(x, h, q, a, pairs=pairs)
    s_h = singular_series(h, truncation_prime).value
    phi_q = euler_phi(factorize(q))
    if math.gcd(a + h, q) == 1:
        return restricted - s_h * x / phi_q
    return restricted


def residue_error_profile(
    x: int,
    q: int,
    h: int,
    *,
    truncation_prime: int = DEFAULT_TRUNCATION_PRIME,
    sup_over_y: bool = False,
    pairs: tuple[np.ndarray, np.ndarray] | None = None,
) -> ResidueErrorProfile:
    """Errors E2(x; q, a, h) for every residue a in 1..q coprime to q.

    max_abs_error is the inner maximum max_{(a,q)=1} |E2|. The default
    evaluates E2 at y = x only; sup_over_y=True instead records, per
    residue, the sup of |E2(y)| over y in [2, x] (jumps of the restricted
    sum happen at pair positions, so the sup is attained at a one-sided
    jump value or at the endpoint).
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    s_h = singular_series(h, truncation_prime).value
    phi_q = euler_phi(factorize(q))
    main_unit = s_h * x / phi_q
    ns, prods = pairs if pairs is not None else pair_list(x, h)

    errors: dict[int, float] = {}
    if not sup_over_y:
        sums = _kernels.bucket_sums(ns, prods, q)
        for a in range(1, q + 1):
            if math.gcd(a, q) != 1:
                continue
            if math.gcd(a + h, q) == 1:
                errors[a] = float(sums[a % q]) - main_unit
            else:
                errors[a] = float(sums[a % q])
    else:
        scales = np.zeros(q, dtype=np.float64)
        active = np.zeros(q, dtype=np.bool_)
        for a in range(1, q + 1):
            if math.gcd(a, q) != 1:
                continue
            active[a % q] = True
            if math.gcd(a + h, q) == 1:
                scales[a % q] = s_h
        sups = _kernels.step_drift_sups(ns, prods, q, phi_q, x, scales, active)
        for a in range(1, q + 1):
            if math.gcd(a, q) == 1:
                errors[a] = float(sups[a % q])

    max_abs = max(abs(e) for e in errors.values())
    return ResidueErrorProfile(
        x=x,
        q=q,
        h=h,
        main_term_unit=main_unit,
        errors=errors,
        max_abs_error=max_abs,
        truncation_prime=truncation_prime,
        sup_over_y=sup_over_y,
    )


def eh_error_sup(
    x: int,
    q: int,
    *,
    primes_logs: tuple[np.ndarray, np.ndarray] | None = None,
) -> float:
    """sup over real y in [2, x] of max_{(a,q)=1} |theta(y; q, a) - y/phi(q)|.

    theta(.; q, a) is a step function jumping at primes in the class and
    y/phi(q) is increasing, so the sup is attained immediately before a
    jump, at a jump, or at y = x; one pass over the primes checks all of
    these exactly.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if x < 2:
        return 0.0
    primes, logs = primes_logs if primes_logs is not None else primes_with_logs(x)
    phi_q = euler_phi(factorize(q))
    scales = np.zeros(q, dtype=np.float64)
    active = np.zeros(q, dtype=np.bool_)
    for a in range(1, q + 1):
        if math.gcd(a, q) == 1:
            active[a % q] = True
            scales[a % q] = 1.0
    sups = _kernels.step_drift_sups(primes, logs, q, phi_q, x, scales, active)
    return float(np.max(sups[active]))


def residue_decomposition_check(
    x: int,
    q: int,
    h: int,
    *,
    pairs: tuple[np.ndarray, np.ndarray] | None = None,
) -> DecompositionCheck:
    """Check that summing restricted correlations over the residues with
    gcd(a, q) = gcd(a+h, q) = 1 reproduces the correlation restricted to
    gcd(n(n+h), q) = 1, computed by an independent direct scan."""
    if q < 1:
        raise ValueError("q must be >= 1")
    ns, prods = pairs if pairs is not None else pair_list(x, h)

    sums = _kernels.bucket_sums(ns, prods, q)
    contributors = [
        a
        for a in range(1, q + 1)
        if math.gcd(a, q) == 1 and math.gcd(a + h, q) == 1
    ]
    lhs = float(
        _kernels.neumaier_sum(np.array([sums[a % q] for a in contributors], dtype=np.float64))
    )

    keep = (np.gcd(ns, q) == 1) & (np.gcd(ns + h, q) == 1)
    rhs = float(_kernels.neumaier_sum(prods[keep]))

    residual = lhs - rhs
    passed = abs(residual) <= 1e-9 * (1.0 + lhs)
    return DecompositionCheck(
        passed=passed,
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        contributing_residues=len(contributors),
    )
