"""Order-preserving edit distance between critical-point series.

``dope`` aligns two critical series by matching critical points of equal
kind in order and deleting whatever remains in adjacent pairs; the cost is
the sum of matched height differences plus the height gap of every deleted
pair.  ``cdope`` extends the distance to circular series by minimizing
over rotations of both inputs (a two-pass reduction; the full rotation
grid is kept as a test oracle).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .series import CriticalSeries, Domain, rotate


@dataclass(frozen=True)
class Alignment:
    """An order-preserving matching plus adjacent-pair deletions.

    Indices are 0-based positions into the two critical series.  Every
    position appears exactly once, either in ``matched`` or inside one
    deleted ``(k, k+1)`` pair; matched positions carry equal kinds and
    strictly increase in both coordinates.
    """

    matched: tuple[tuple[int, int], ...]
    deleted_x: tuple[tuple[int, int], ...]
    deleted_y: tuple[tuple[int, int], ...]
    cost: float


class Step(enum.IntEnum):
    """Backpointer tags for the dynamic-programming table."""

    BOUNDARY = 0
    MATCH = 1
    DELETE_X = 2
    DELETE_Y = 3


@dataclass(frozen=True, eq=False)
class DpTable:
    """Full cost table and backpointers, exposed for inspection and tests."""

    costs: np.ndarray
    backpointers: np.ndarray


def _check_pair(xc: CriticalSeries, yc: CriticalSeries):
    if xc.domain is not yc.domain:
        raise ValueError("critical series live on different domains")
    if (len(xc) - len(yc)) % 2 != 0:
        raise ValueError("critical-point counts differ by an odd number")


def _canonical_cost(vx, vy, matched, deleted_x, deleted_y) -> float:
    terms = [abs(vx[i] - vy[j]) for i, j in matched]
    terms += [abs(vx[k] - vx[k + 1]) for k, _ in deleted_x]
    terms += [abs(vy[k] - vy[k + 1]) for k, _ in deleted_y]
    return math.fsum(terms)


def alignment_cost(xc: CriticalSeries, yc: CriticalSeries, alignment: Alignment) -> float:
    """Recompute an alignment's cost from its matched and deleted pairs."""
    return _canonical_cost(
        xc.values, yc.values, alignment.matched, alignment.deleted_x, alignment.deleted_y
    )


def _backtrack(d, xc, yc) -> Alignment:
    vx, kx = xc.values, xc.kinds
    vy, ky = yc.values, yc.kinds
    i, j = len(vx), len(vy)
    matched, del_x, del_y = [], [], []
    while i > 0 or j > 0:
        if i == 0:
            del_y.append((j - 2, j - 1))
            j -= 2
            continue
        if j == 0:
            del_x.append((i - 2, i - 1))
            i -= 2
            continue
        here = d[i, j]
        # Recomputing each candidate with the fill's own expressions makes the
        # float comparisons exact; ties resolve Match, DeleteX, DeleteY.
        if kx[i - 1] == ky[j - 1] and d[i - 1, j - 1] + abs(vx[i - 1] - vy[j - 1]) == here:
            matched.append((i - 1, j - 1))
            i -= 1
            j -= 1
        elif i >= 2 and d[i - 2, j] + abs(vx[i - 1] - vx[i - 2]) == here:
            del_x.append((i - 2, i - 1))
            i -= 2
        elif j >= 2 and d[i, j - 2] + abs(vy[j - 1] - vy[j - 2]) == here:
            del_y.append((j - 2, j - 1))
            j -= 2
        else:  # pragma: no cover - the fill guarantees one branch holds
            raise AssertionError("inconsistent dynamic-programming table")
    matched.reverse()
    del_x.reverse()
    del_y.reverse()
    cost = _canonical_cost(vx, vy, matched, del_x, del_y)
    return Alignment(tuple(matched), tuple(del_x), tuple(del_y), cost)


def dope(xc: CriticalSeries, yc: CriticalSeries) -> tuple[float, Alignment]:
    """Minimum alignment cost between two critical series.

    Returns the exact minimum and one optimal alignment recovered by
    backtracking (deterministic tie-break: match, then delete from x,
    then delete from y).  The reported cost is recomputed from the
    recovered alignment with compensated summation, so it equals
    :func:`alignment_cost` of the result bit for bit.

    Raises
    ------
    ValueError
        If the domains differ or the lengths differ by an odd number.
    """
    _check_pair(xc, yc)
    d = kernels.dope_fill(xc.values, xc.kinds, yc.values, yc.kinds)
    if not np.isfinite(d[-1, -1]):  # pragma: no cover - unreachable for valid inputs
        raise ValueError("inputs admit no alignment")
    alignment = _backtrack(d, xc, yc)
    return alignment.cost, alignment


def dope_table(xc: CriticalSeries, yc: CriticalSeries) -> DpTable:
    """Cost table plus backpointers for the alignment DP.

    ``costs[i][j]`` is the cheapest alignment of the first ``i`` points of
    x with the first ``j`` of y (infinite where no alignment exists);
    backpointers use the same tie-break order as :func:`dope`.
    """
    _check_pair(xc, yc)
    m, n = len(xc), len(yc)
    d = kernels.dope_fill(xc.values, xc.kinds, yc.values, yc.kinds)
    bp = np.full(d.shape, Step.BOUNDARY, dtype=np.uint8)
    if m and n:
        vx, vy = xc.values, yc.values
        interior = d[1:, 1:]
        match = np.where(
            xc.kinds[:, None] == yc.kinds[None, :],
            d[:-1, :-1] + np.abs(vx[:, None] - vy[None, :]),
            np.inf,
        )
        del_x = np.full((m, n), np.inf)
        del_x[1:, :] = d[: m - 1, 1:] + np.abs(np.diff(vx))[:, None]
        del_y = np.full((m, n), np.inf)
        del_y[:, 1:] = d[1:, : n - 1] + np.abs(np.diff(vy))[None, :]
        finite = np.isfinite(interior)
        bp[1:, 1:] = np.select(
            [finite & (match == interior), finite & (del_x == interior), finite & (del_y == interior)],
            [Step.MATCH, Step.DELETE_X, Step.DELETE_Y],
            default=Step.BOUNDARY,
        )
    return DpTable(d, bp)


_BRUTE_FORCE_LIMIT = 9


def _pair_tilings(start, n):
    """Split positions start..n-1 into retained singletons and adjacent pairs."""
    if start == n:
        yield (), ()
        return
    for kept, deleted in _pair_tilings(start + 1, n):
        yield (start,) + kept, deleted
    if start + 1 < n:
        for kept, deleted in _pair_tilings(start + 2, n):
            yield kept, ((start, start + 1),) + deleted


def dope_brute_force(xc: CriticalSeries, yc: CriticalSeries) -> float:
    """Exact minimum alignment cost by enumerating every alignment.

    Test oracle: every way of partitioning each series into retained
    points and deleted adjacent pairs is enumerated, and retained points
    are matched in order when their kinds agree elementwise.  Limited to
    nine critical points per series.
    """
    _check_pair(xc, yc)
    if len(xc) > _BRUTE_FORCE_LIMIT or len(yc) > _BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute force is limited to {_BRUTE_FORCE_LIMIT} critical points per series"
        )
    vx, kx = xc.values, xc.kinds
    vy, ky = yc.values, yc.kinds
    y_tilings = list(_pair_tilings(0, len(yc)))
    best = math.inf
    for kept_x, del_x in _pair_tilings(0, len(xc)):
        for kept_y, del_y in y_tilings:
            if len(kept_x) != len(kept_y):
                continue
            if any(kx[i] != ky[j] for i, j in zip(kept_x, kept_y)):
                continue
            cost = _canonical_cost(vx, vy, zip(kept_x, kept_y), del_x, del_y)
            if cost < best:
                best = cost
    return best


def cdope(xc: CriticalSeries, yc: CriticalSeries) -> tuple[float, Alignment, tuple[int, int]]:
    """Minimum dope cost over circular rotations of both series.

    Only two rotations of x need to be tried against every rotation of y:
    an optimal circular alignment either keeps x's wrap-around pair intact
    (some rotation of y aligns with x as cut) or deletes it (the once-
    rotated x makes that pair adjacent at the end).  Returns the cost, the
    alignment between the chosen rotations, and the ``(i, j)`` rotation
    offsets (lexicographically smallest on ties).
    """
    if xc.domain is not Domain.CIRCLE or yc.domain is not Domain.CIRCLE:
        raise ValueError("cdope requires circular critical series")
    if xc.is_degenerate or yc.is_degenerate:
        raise ValueError("degenerate circular series has no critical points")
    best = None
    for i in (0, 1):
        xr = rotate(xc, i)
        for j in range(len(yc)):
            cost, alignment = dope(xr, rotate(yc, j))
            if best is None or cost < best[0]:
                best = (cost, alignment, (i, j))
    return best


def cdope_brute_force(xc: CriticalSeries, yc: CriticalSeries) -> float:
    """Minimum dope cost over the full rotation grid (test oracle)."""
    if xc.domain is not Domain.CIRCLE or yc.domain is not Domain.CIRCLE:
        raise ValueError("cdope requires circular critical series")
    if xc.is_degenerate or yc.is_degenerate:
        raise ValueError("degenerate circular series has no critical points")
    return min(
        dope(rotate(xc, i), rotate(yc, j))[0]
        for i in range(len(xc))
        for j in range(len(yc))
    )
