"""Prime pair correlations, progression error terms, and averaged error scans.

Library layout:
- sieve: segmented prime / von Mangoldt sieving and theta in progressions
- multiplicative: exact phi, mu, phi2 and the truncated pair singular series
- correlations: shifted correlation sums, per-residue error terms, sup errors
- distribution: averaged error sums over moduli, grid scans, log-power fits
- cli: the `pairscan` command

Hot kernels are numba-compiled when numba is available; setting
PAIRSCAN_NO_NUMBA=1 selects the pure numpy/Python fallback, which produces
bit-identical results.
"""

from ._kernels import USING_NUMBA
from .correlations import (
    DecompositionCheck,
    PairCorrelation,
    ResidueErrorProfile,
    eh_error_sup,
    geh2_error,
    pair_list,
    psi,
    psi_progression,
    residue_decomposition_check,
    residue_error_profile,
)
from .distribution import (
    FitResult,
    ScanConfig,
    ScanReport,
    eh_sum,
    fit_log_power,
    floor_power,
    geh2_sum,
    hl_ratio,
    run_scan,
    tail_sum,
)
from .errors import ResourceLimitError
from .multiplicative import (
    Factorization,
    SingularSeriesValue,
    euler_phi,
    factorize,
    moebius,
    partial_sum_phi2_over_phi,
    phi2,
    singular_series,
)
from .sieve import (
    LambdaTable,
    SieveConfig,
    chebyshev_theta_progression,
    enumerate_primes,
    lambda_range,
    primes_with_logs,
)

__version__ = "0.1.0"

__all__ = [
    "USING_NUMBA",
    "DecompositionCheck",
    "PairCorrelation",
    "ResidueErrorProfile",
    "eh_error_sup",
    "geh2_error",
    "pair_list",
    "psi",
    "psi_progression",
    "residue_decomposition_check",
    "residue_error_profile",
    "FitResult",
    "ScanConfig",
    "ScanReport",
    "eh_sum",
    "fit_log_power",
    "floor_power",
    "geh2_sum",
    "hl_ratio",
    "run_scan",
    "tail_sum",
    "ResourceLimitError",
    "Factorization",
    "SingularSeriesValue",
    "euler_phi",
    "factorize",
    "moebius",
    "partial_sum_phi2_over_phi",
    "phi2",
    "singular_series",
    "LambdaTable",
    "SieveConfig",
    "chebyshev_theta_progression",
    "enumerate_primes",
    "lambda_range",
    "primes_with_logs",
    "__version__",
]
