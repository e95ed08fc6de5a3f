import numpy as np
import pytest

import oracles


@pytest.fixture(scope="session")
def trial_table_1e5():
    """Trial-division Lambda table for [1, 100002], shared across tests."""
    return oracles.trial_lambda_window(1, 100002)


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Touch every kernel once so JIT compilation never lands inside a
    timed acceptance criterion."""
    from pairscan import _kernels

    primes = np.array([2, 3, 5], dtype=np.int64)
    _kernels.mark_composites(1, 16, primes)
    vals = np.array([1.0, 2.0, 3.0], dtype=np.float64)
    _kernels.neumaier_sum(vals)
    _kernels.bucket_sums(primes, vals, 3)
    _kernels.step_drift_sups(
        primes,
        vals,
        3,
        2,
        10,
        np.ones(3, dtype=np.float64),
        np.ones(3, dtype=np.bool_),
    )
