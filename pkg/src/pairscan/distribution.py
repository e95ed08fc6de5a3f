"""Averaged error sums over moduli, grid scans, and decay-exponent fits.

The two averages:
- eh_sum(x, theta):   sum over q <= floor(x^theta) of the joint sup error
                      for primes in progressions (see eh_error_sup)
- geh2_sum(x, theta, h): same modulus range, summing the per-modulus
                      maximum of |E2(x; q, a, h)| over coprime residues

Whether either stays small as x grows (for all decay exponents A) is not
decidable from finite data; scans therefore report normalized series
S(x) * (log x)^A / x and a fitted log-power decay without pass/fail
semantics.

Moduli are independent tasks scheduled largest-first for balance; the
reduction always runs in ascending q with compensated summation, so
results are byte-identical for any worker count.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath
import numpy as np

from . import _kernels
from .correlations import eh_error_sup, pair_list, psi, residue_error_profile
from .errors import ResourceLimitError
from .multiplicative import DEFAULT_TRUNCATION_PRIME, singular_series
from .sieve import DEFAULT_SEGMENT_SIZE, PRIME_LIMIT_CAP, primes_with_logs

DEFAULT_MODULUS_CAP = 10**6

MODES = ("eh", "geh2")


def default_threads() -> int:
    return os.cpu_count() or 1


def floor_power(x: int, theta: float) -> int:
    """Largest integer q with q <= x^theta, resolved exactly at boundaries.

    When theta is (to within 1e-12) a fraction with denominator <= 64 the
    comparison q^den <= x^num is done in exact integer arithmetic;
    otherwise a 50-digit evaluation of x^theta is floored.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    if theta <= 0:
        raise ValueError("theta must be positive")
    fr = Fraction(theta).limit_denominator(64)
    if fr > 0 and abs(float(fr) - theta) <= 1e-12:
        num, den = fr.numerator, fr.denominator
        target = x**num
        q = int(x**theta)
        while (q + 1) ** den <= target:
            q += 1
        while q > 1 and q**den > target:
            q -= 1
        return q
    with mpmath.workdps(50):
        return int(mpmath.floor(mpmath.power(x, theta)))


def _per_modulus(fn: Callable[[int], float], qs: Sequence[int], threads: int) -> list[float]:
    """Evaluate fn over moduli, submitting largest-first, returning in input order."""
    if threads <= 1 or len(qs) <= 1:
        return [fn(q) for q in qs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {q: pool.submit(fn, q) for q in sorted(qs, reverse=True)}
        return [futures[q].result() for q in qs]


def eh_sum(
    x: int,
    theta: float,
    *,
    threads: int = 1,
    modulus_cap: int = DEFAULT_MODULUS_CAP,
    _primes_logs: tuple[np.ndarray, np.ndarray] | None = None,
) -> float:
    """Sum over q <= floor(x^theta) of the sup error for primes in progressions."""
    if x < 2:
        raise ValueError("x must be >= 2")
    q_bound = floor_power(x, theta)
    if q_bound > modulus_cap:
        raise ResourceLimitError(f"modulus bound {q_bound} exceeds cap {modulus_cap}")
    primes_logs = _primes_logs if _primes_logs is not None else primes_with_logs(x)
    qs = list(range(1, q_bound + 1))
    sups = _per_modulus(
        lambda q: eh_error_sup(x, q, primes_logs=primes_logs), qs, threads
    )
    return float(_kernels.neumaier_sum(np.array(sups, dtype=np.float64)))


def _max_error_series(
    x: int,
    h: int,
    qs: Sequence[int],
    *,
    threads: int,
    truncation_prime: int,
    sup_over_y: bool,
    pairs: tuple[np.ndarray, np.ndarray] | None = None,
) -> list[float]:
    pairs = pairs if pairs is not None else pair_list(x, h)

    def one(q: int) -> float:
        return residue_error_profile(
            x,
            q,
            h,
            truncation_prime=truncation_prime,
            sup_over_y=sup_over_y,
            pairs=pairs,
        ).max_abs_error

    return _per_modulus(one, qs, threads)


def geh2_sum(
    x: int,
    theta: float,
    h: int,
    *,
    threads: int = 1,
    truncation_prime: int = DEFAULT_TRUNCATION_PRIME,
    sup_over_y: bool = False,
    modulus_cap: int = DEFAULT_MODULUS_CAP,
    _pairs: tuple[np.ndarray, np.ndarray] | None = None,
) -> float:
    """Sum over q <= floor(x^theta) of max_{(a,q)=1} |E2(x; q, a, h)|."""
    if x < 2:
        raise ValueError("x must be >= 2")
    if not 0 < theta < 2:
        raise ValueError("theta must lie in (0, 2)")
    q_bound = floor_power(x, theta)
    if q_bound > modulus_cap:
        raise ResourceLimitError(f"modulus bound {q_bound} exceeds cap {modulus_cap}")
    series = _max_error_series(
        x,
        h,
        list(range(1, q_bound + 1)),
        threads=threads,
        truncation_prime=truncation_prime,
        sup_over_y=sup_over_y,
        pairs=_pairs,
    )
    return float(_kernels.neumaier_sum(np.array(series, dtype=np.float64)))


def tail_sum(
    x: int,
    theta: float,
    h: int,
    q_max: int,
    *,
    threads: int = 1,
    truncation_prime: int = DEFAULT_TRUNCATION_PRIME,
    sup_over_y: bool = False,
    modulus_cap: int = DEFAULT_MODULUS_CAP,
) -> float:
    """Sum of per-modulus maximum errors over floor(x^theta) < q <= q_max."""
    q_bound = floor_power(x, theta)
    if q_max <= q_bound:
        raise ValueError(f"q_max={q_max} must exceed floor(x^theta)={q_bound}")
    if q_max > modulus_cap:
        raise ResourceLimitError(f"q_max {q_max} exceeds cap {modulus_cap}")
    series = _max_error_series(
        x,
        h,
        list(range(q_bound + 1, q_max + 1)),
        threads=threads,
        truncation_prime=truncation_prime,
        sup_over_y=sup_over_y,
    )
    return float(_kernels.neumaier_sum(np.array(series, dtype=np.float64)))


def hl_ratio(
    x: int, h: int, *, truncation_prime: int = DEFAULT_TRUNCATION_PRIME
) -> float:
    """Psi_h(x) / (S(h) * x), the pair-count to predicted-main-term ratio."""
    if h == 0 or h % 2 != 0:
        raise ValueError("h must be even and nonzero (odd h has zero main term)")
    if x < 2:
        raise ValueError("x must be >= 2")
    s_h = singular_series(h, truncation_prime).value
    return psi(x, h).value / (s_h * x)


@dataclass(frozen=True)
class FitResult:
    """Least-squares fit of S = C * x / (log x)^A."""

    c: float
    a_fit: float
    residual_norm: float


def fit_log_power(points: Sequence[tuple[float, float]]) -> FitResult:
    """Fit log S = log C + log x - A * log log x by least squares.

    Needs at least 3 points with S > 0 and x > 1; raises on a degenerate
    design (all x equal).
    """
    if len(points) < 3:
        raise ValueError("need at least 3 points to fit")
    xs = np.array([p[0] for p in points], dtype=np.float64)
    ss = np.array([p[1] for p in points], dtype=np.float64)
    if np.any(ss <= 0):
        raise ValueError("all S values must be positive")
    if np.any(xs <= 1):
        raise ValueError("all x values must exceed 1")
    u = np.log(np.log(xs))
    z = np.log(ss) - np.log(xs)
    design = np.column_stack([np.ones_like(u), u])
    coef, _, rank, _ = np.linalg.lstsq(design, z, rcond=None)
    if rank < 2:
        raise ValueError("degenerate design matrix: x values must not all coincide")
    resid = design @ coef - z
    return FitResult(
        c=float(math.exp(coef[0])),
        a_fit=float(-coef[1]),
        residual_norm=float(np.sqrt(np.sum(resid * resid))),
    )


@dataclass(frozen=True)
class ScanConfig:
    """Grid scan request: geometric x grid, modulus exponent theta, shift h,
    normalization exponents, and which averaged sums to measure."""

    x_start: int
    x_ratio: float
    x_count: int
    theta: float
    h: int
    a_list: tuple[float, ...] = (1.0,)
    mode: str = "both"

    def __post_init__(self):
        if self.mode not in ("eh", "geh2", "both"):
            raise ValueError(f"mode must be eh, geh2, or both, not {self.mode!r}")
        if not 0 < self.theta < 2:
            raise ValueError("theta must lie in (0, 2)")
        if self.h == 0:
            raise ValueError("h must be nonzero")
        if self.x_count < 1:
            raise ValueError("x_count must be >= 1")
        if self.x_start < 2:
            raise ValueError("x_start must be >= 2")
        if any(a <= 0 for a in self.a_list):
            raise ValueError("normalization exponents must be positive")
        object.__setattr__(self, "a_list", tuple(float(a) for a in self.a_list))
        grid = self.grid
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("x grid must be strictly increasing")

    @property
    def grid(self) -> tuple[int, ...]:
        return tuple(
            int(round(self.x_start * self.x_ratio**k)) for k in range(self.x_count)
        )

    @property
    def modes(self) -> tuple[str, ...]:
        return MODES if self.mode == "both" else (self.mode,)


@dataclass(frozen=True)
class ScanReport:
    """Raw and normalized averaged error sums over a ScanConfig grid.

    normalized[mode][A] holds raw * (log x)^A / x per grid point; fits are
    present per mode when the grid has at least 3 points and all sums are
    positive.
    """

    config: ScanConfig
    xs: tuple[int, ...]
    sums: dict[str, tuple[float, ...]]
    normalized: dict[str, dict[float, tuple[float, ...]]]
    fits: dict[str, FitResult | None]
    truncation_prime: int
    wall_time_s: float
    threads: int = 1
    metadata: dict = field(default_factory=dict)


def normalized_sum(raw: float, x: int, a: float) -> float:
    """raw * (log x)^A / x, the conjectured decay normalization."""
    return raw * math.log(x) ** a / x


def run_scan(
    config: ScanConfig,
    *,
    threads: int = 1,
    truncation_prime: int = DEFAULT_TRUNCATION_PRIME,
    modulus_cap: int = DEFAULT_MODULUS_CAP,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> ScanReport:
    """Measure the configured averaged error sums over the x grid.

    Shared tables (primes, pair list) are built once at the largest x and
    sliced per grid point; estimated over-cap configurations are refused
    up front rather than truncated.
    """
    xs = config.grid
    x_max = xs[-1]
    q_max = floor_power(x_max, config.theta)
    if q_max > modulus_cap:
        raise ResourceLimitError(
            f"modulus bound {q_max} at x={x_max} exceeds cap {modulus_cap}"
        )
    metadata: dict = {}
    oversized = [x for x in xs if floor_power(x, config.theta) > x]
    if oversized:
        metadata["moduli_exceed_x"] = (
            "modulus bound exceeds x at grid points "
            + " ".join(str(x) for x in oversized)
            + "; moduli beyond x contribute at most one pair position each"
        )
    sieve_limit = x_max + max(config.h, 0)
    if sieve_limit > PRIME_LIMIT_CAP:
        raise ResourceLimitError(f"sieve limit {sieve_limit} exceeds cap {PRIME_LIMIT_CAP}")

    t0 = time.perf_counter()
    sums: dict[str, list[float]] = {m: [] for m in config.modes}

    if "eh" in config.modes:
        primes, logs = primes_with_logs(x_max)
        for x in xs:
            cut = int(np.searchsorted(primes, x, side="right"))
            sums["eh"].append(
                eh_sum(
                    x,
                    config.theta,
                    threads=threads,
                    modulus_cap=modulus_cap,
                    _primes_logs=(primes[:cut], logs[:cut]),
                )
            )
    if "geh2" in config.modes:
        ns, prods = pair_list(x_max, config.h, segment_size=segment_size)
        for x in xs:
            cut = int(np.searchsorted(ns, x, side="right"))
            sums["geh2"].append(
                geh2_sum(
                    x,
                    config.theta,
                    config.h,
                    threads=threads,
                    truncation_prime=truncation_prime,
                    modulus_cap=modulus_cap,
                    _pairs=(ns[:cut], prods[:cut]),
                )
            )

    normalized = {
        mode: {
            a: tuple(normalized_sum(s, x, a) for x, s in zip(xs, series))
            for a in config.a_list
        }
        for mode, series in ((m, sums[m]) for m in config.modes)
    }
    fits: dict[str, FitResult | None] = {}
    for mode in config.modes:
        series = sums[mode]
        if len(xs) >= 3 and all(s > 0 for s in series):
            fits[mode] = fit_log_power(list(zip((float(x) for x in xs), series)))
        else:
            fits[mode] = None

    wall = time.perf_counter() - t0
    return ScanReport(
        config=config,
        xs=xs,
        sums={m: tuple(v) for m, v in sums.items()},
        normalized=normalized,
        fits=fits,
        truncation_prime=truncation_prime,
        wall_time_s=wall,
        threads=threads,
        metadata=metadata,
    )
