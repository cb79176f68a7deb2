"""Dynamic time warping baselines (linear, critical-point, circular).

Kept for comparison: DTW is not a metric on raw or critical series (the
regression tests pin down concrete triangle-inequality violations), which
is the gap the edit distance in :mod:`topodist.dope` closes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .series import Domain, TimeSeries, extract_critical_series


@dataclass(frozen=True)
class WarpingPath:
    """Monotone sequence of index pairs from (0, 0) to (M-1, N-1)."""

    steps: tuple[tuple[int, int], ...]


def _path_cost(x, y, steps) -> float:
    return math.fsum(abs(x[i] - y[j]) for i, j in steps)


def dtw(x: TimeSeries, y: TimeSeries) -> tuple[float, WarpingPath]:
    """Dynamic time warping distance and one optimal warping path.

    Backtracking ties prefer the diagonal, then (i-1, j), then (i, j-1).
    The reported value is the compensated sum of the returned path's step
    costs, so recomputing the path cost reproduces it exactly.
    """
    if x.domain is not Domain.INTERVAL or y.domain is not Domain.INTERVAL:
        raise ValueError("dtw runs on interval series; use cdtw for circular ones")
    vx, vy = x.values, y.values
    d = kernels.dtw_fill(vx, vy)
    i, j = len(vx) - 1, len(vy) - 1
    steps = [(i, j)]
    while i > 0 or j > 0:
        here = d[i, j]
        cost = abs(vx[i] - vy[j])
        if i > 0 and j > 0 and here == cost + d[i - 1, j - 1]:
            i -= 1
            j -= 1
        elif i > 0 and here == cost + d[i - 1, j]:
            i -= 1
        elif j > 0 and here == cost + d[i, j - 1]:
            j -= 1
        else:  # pragma: no cover - the fill guarantees one branch holds
            raise AssertionError("inconsistent dynamic-programming table")
        steps.append((i, j))
    steps.reverse()
    return _path_cost(vx, vy, steps), WarpingPath(tuple(steps))


def dtw_critical(x: TimeSeries, y: TimeSeries) -> tuple[float, WarpingPath]:
    """DTW between the critical-value sequences of two interval series."""
    xc = extract_critical_series(x)
    yc = extract_critical_series(y)
    return dtw(TimeSeries(xc.values), TimeSeries(yc.values))


def cdtw(x: TimeSeries, y: TimeSeries) -> tuple[float, int]:
    """Circular DTW: minimum linear DTW over rotations of the second series.

    Returns the minimal cost and the rotation of ``y`` achieving it (the
    smallest such rotation on ties).
    """
    if x.domain is not Domain.CIRCLE or y.domain is not Domain.CIRCLE:
        raise ValueError("cdtw requires circular series")
    flat_x = TimeSeries(x.values)
    best_cost, best_rot = math.inf, 0
    for r in range(len(y)):
        cost, _ = dtw(flat_x, TimeSeries(np.roll(y.values, -r)))
        if cost < best_cost:
            best_cost, best_rot = cost, r
    return best_cost, best_rot
