"""Bit-identity of the numba and fallback kernel flavors."""

import os
import subprocess
import sys

import numpy as np
import pytest

from pairscan import _kernels

needs_numba = pytest.mark.skipif(
    _kernels.NUMBA is None, reason="numba flavor not available"
)


def _random_pairs(rng, count, n_max):
    ns = np.sort(rng.choice(np.arange(2, n_max, dtype=np.int64), size=count, replace=False))
    prods = rng.uniform(0.1, 200.0, size=count)
    return ns, prods


@needs_numba
def test_mark_composites_identical():
    base = np.array([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31], dtype=np.int64)
    for lo, size in ((1, 1000), (997, 1), (10**6, 4096), (2, 7)):
        a = _kernels.FALLBACK["mark_composites"](lo, size, base)
        b = _kernels.NUMBA["mark_composites"](lo, size, base)
        assert np.array_equal(a, b)


@needs_numba
def test_neumaier_sum_identical():
    rng = np.random.default_rng(7)
    for size in (0, 1, 2, 1000, 65537):
        vals = rng.uniform(-1e6, 1e6, size=size)
        assert _kernels.FALLBACK["neumaier_sum"](vals) == _kernels.NUMBA["neumaier_sum"](vals)


@needs_numba
def test_bucket_sums_identical():
    rng = np.random.default_rng(11)
    ns, prods = _random_pairs(rng, 5000, 10**6)
    for q in (1, 2, 3, 12, 97, 1000):
        a = _kernels.FALLBACK["bucket_sums"](ns, prods, q)
        b = _kernels.NUMBA["bucket_sums"](ns, prods, q)
        assert np.array_equal(a, b)


@needs_numba
def test_step_drift_sups_identical():
    rng = np.random.default_rng(13)
    points, weights = _random_pairs(rng, 3000, 10**5)
    for q in (1, 4, 30, 101):
        scales = rng.uniform(0.0, 2.0, size=q)
        active = rng.uniform(size=q) < 0.7
        active[0] = True
        a = _kernels.FALLBACK["step_drift_sups"](points, weights, q, max(q - 1, 1), 10**5, scales, active)
        b = _kernels.NUMBA["step_drift_sups"](points, weights, q, max(q - 1, 1), 10**5, scales, active)
        assert np.array_equal(a, b)


def test_env_flag_disables_numba():
    env = dict(os.environ, PAIRSCAN_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from pairscan import _kernels; print(_kernels.USING_NUMBA)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "False"
