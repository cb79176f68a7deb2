"""Time-series containers and critical-point extraction.

A series lives on an interval or on a circle.  Its critical points are the
strict local extrema of the piecewise-linear interpolation, taken after
collapsing plateaus (maximal runs of equal consecutive values); interval
endpoints count as critical only when they are local minima.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

MIN = -1
MAX = 1


class Domain(enum.Enum):
    INTERVAL = "interval"
    CIRCLE = "circle"


def _frozen_array(values, dtype):
    out = np.array(values, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Raw sampled values, ordered; only the order carries meaning.

    Parameters
    ----------
    values : array-like of float
        Sample heights.  At least one sample on an interval, at least two
        on a circle.
    domain : Domain
        Interval (a path) or circle (last sample wraps to the first).
    """

    values: np.ndarray
    domain: Domain = Domain.INTERVAL

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("series values must be one-dimensional")
        if values.size == 0:
            raise ValueError("series must contain at least one sample")
        if self.domain is Domain.CIRCLE and values.size < 2:
            raise ValueError("a circular series needs at least two samples")
        if not np.isfinite(values).all():
            raise ValueError("series values must be finite")
        object.__setattr__(self, "values", _frozen_array(values, np.float64))

    def __len__(self):
        return self.values.size


@dataclass(frozen=True, eq=False)
class CriticalSeries:
    """Critical values of a series with min/max indicators.

    ``kinds`` holds −1 for a local min and +1 for a local max, strictly
    alternating (across the wrap for circular series).  ``origin_indices``
    point back at the first sample of each critical plateau in the source.
    An interval critical series has odd length and is min-bounded; a
    circular one has even length, or length zero for a constant series
    (the degenerate case).
    """

    values: np.ndarray
    kinds: np.ndarray
    origin_indices: np.ndarray
    domain: Domain = Domain.INTERVAL

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        kinds = np.asarray(self.kinds, dtype=np.int8)
        origin = np.asarray(self.origin_indices, dtype=np.int64)
        if values.ndim != 1 or kinds.shape != values.shape or origin.shape != values.shape:
            raise ValueError("values, kinds and origin_indices must be 1-D and equally long")
        if not np.isfinite(values).all():
            raise ValueError("critical values must be finite")
        if not np.isin(kinds, (MIN, MAX)).all():
            raise ValueError("kinds must be -1 (min) or +1 (max)")
        n = values.size
        if self.domain is Domain.INTERVAL:
            if n % 2 == 0:
                raise ValueError("an interval critical series has odd length")
            if kinds[0] != MIN or kinds[-1] != MIN:
                raise ValueError("an interval critical series starts and ends with a min")
            deltas = np.diff(values)
            signs = kinds[1:]
        else:
            if n % 2 != 0:
                raise ValueError("a circular critical series has even length")
            if n == 0:
                object.__setattr__(self, "values", _frozen_array(values, np.float64))
                object.__setattr__(self, "kinds", _frozen_array(kinds, np.int8))
                object.__setattr__(self, "origin_indices", _frozen_array(origin, np.int64))
                return
            deltas = np.roll(values, -1) - values
            signs = np.roll(kinds, -1)
        if np.any(kinds[1:] == kinds[:-1]) or (
            self.domain is Domain.CIRCLE and n > 1 and kinds[0] == kinds[-1]
        ):
            raise ValueError("kinds must strictly alternate")
        # Each min sits strictly below its neighbors, each max strictly above,
        # so every consecutive step must move in the direction of its target kind.
        if not np.all(deltas * signs > 0):
            raise ValueError("values are inconsistent with kinds")
        object.__setattr__(self, "values", _frozen_array(values, np.float64))
        object.__setattr__(self, "kinds", _frozen_array(kinds, np.int8))
        object.__setattr__(self, "origin_indices", _frozen_array(origin, np.int64))

    def __len__(self):
        return self.values.size

    @property
    def is_degenerate(self) -> bool:
        """True for the empty critical series of a constant circular input."""
        return self.values.size == 0


def _collapse_plateaus(values):
    """Keep the first sample of every run of equal consecutive values."""
    keep = np.empty(values.size, dtype=bool)
    keep[0] = True
    keep[1:] = np.diff(values) != 0
    idx = np.flatnonzero(keep)
    return values[idx], idx


def extract_critical_series(ts: TimeSeries) -> CriticalSeries:
    """Extract the ordered critical points of a series.

    Plateaus are collapsed to their first sample before classification.
    Interval endpoints are critical only when they are local minima; a
    constant interval series yields its single global min, a constant
    circular series yields the empty (degenerate) critical series.

    Returns
    -------
    CriticalSeries
        Critical values, alternating min/max kinds, and the source index
        of each critical plateau's first sample.
    """
    v, idx = _collapse_plateaus(ts.values)
    if ts.domain is Domain.INTERVAL:
        return _interval_criticals(v, idx)
    return _circle_criticals(v, idx)


def _interval_criticals(v, idx):
    n = v.size
    if n == 1:
        return CriticalSeries(v, np.array([MIN], dtype=np.int8), idx, Domain.INTERVAL)
    kinds = np.zeros(n, dtype=np.int8)
    if n > 2:
        mid, left, right = v[1:-1], v[:-2], v[2:]
        kinds[1:-1] = np.where(
            (mid < left) & (mid < right),
            MIN,
            np.where((mid > left) & (mid > right), MAX, 0),
        )
    if v[0] < v[1]:
        kinds[0] = MIN
    if v[-1] < v[-2]:
        kinds[-1] = MIN
    sel = kinds != 0
    return CriticalSeries(v[sel], kinds[sel], idx[sel], Domain.INTERVAL)


def _circle_criticals(v, idx):
    if v.size > 1 and v[0] == v[-1]:
        # The run wrapping past the end starts at the tail's first sample.
        v, idx = v[1:], idx[1:]
    if v.size == 1:
        empty = np.empty(0)
        return CriticalSeries(empty, empty, empty, Domain.CIRCLE)
    left, right = np.roll(v, 1), np.roll(v, -1)
    kinds = np.where(
        (v < left) & (v < right), MIN, np.where((v > left) & (v > right), MAX, 0)
    ).astype(np.int8)
    sel = kinds != 0
    return CriticalSeries(v[sel], kinds[sel], idx[sel], Domain.CIRCLE)


def rotate(cs: CriticalSeries, k: int) -> CriticalSeries:
    """Circularly shift a circular critical series left by ``k`` points."""
    if cs.domain is not Domain.CIRCLE:
        raise ValueError("rotation is defined for circular critical series only")
    if k == 0:
        return cs
    if not 0 <= k < len(cs):
        raise ValueError(f"rotation offset {k} outside [0, {len(cs)})")
    return CriticalSeries(
        np.roll(cs.values, -k),
        np.roll(cs.kinds, -k),
        np.roll(cs.origin_indices, -k),
        Domain.CIRCLE,
    )


def zero_padded_l1(a: CriticalSeries, b: CriticalSeries) -> float:
    """Index-wise L1 distance between critical values, zero-padding the shorter."""
    if a.domain is not Domain.INTERVAL or b.domain is not Domain.INTERVAL:
        raise ValueError("zero-padded L1 is defined for interval critical series")
    n = max(len(a), len(b))
    va = np.zeros(n)
    vb = np.zeros(n)
    va[: len(a)] = a.values
    vb[: len(b)] = b.values
    return float(np.abs(va - vb).sum())
