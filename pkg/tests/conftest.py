import numpy as np
import pytest

from topodist import CriticalSeries, Domain, TimeSeries, extract_critical_series


def ts(values, domain=Domain.INTERVAL):
    return TimeSeries(np.asarray(values, dtype=float), domain)


def crit(values, domain=Domain.INTERVAL):
    """Critical series straight from a list of alternating heights."""
    values = np.asarray(values, dtype=float)
    n = len(values)
    if domain is Domain.INTERVAL:
        kinds = np.where(np.arange(n) % 2 == 0, -1, 1)
    else:
        kinds = np.where(values < np.roll(values, -1), -1, 1)
    return CriticalSeries(values, kinds, np.arange(n), domain)


def random_interval_criticals(rng, max_raw=12):
    raw = rng.uniform(-1.0, 1.0, int(rng.integers(1, max_raw + 1)))
    return extract_critical_series(ts(raw))


def random_circle_criticals(rng, max_raw=12):
    while True:
        raw = rng.uniform(-1.0, 1.0, int(rng.integers(2, max_raw + 1)))
        cs = extract_critical_series(ts(raw, Domain.CIRCLE))
        if not cs.is_degenerate:
            return cs


@pytest.fixture
def rng():
    return np.random.default_rng(20240)
