"""Pure-numpy dynamic-programming table fills (fallback backend).

Every dependency of a cell in the edit-distance table lies two
anti-diagonals back, and in the warping table one or two back, so both
fills vectorize along anti-diagonals.  The compiled backend in ``_dp``
computes bit-identical tables and is preferred when importable.
"""

import numpy as np

BACKEND_NAME = "pure"


def dope_fill(vx, kx, vy, ky):
    """Fill the (m+1)x(n+1) alignment-cost table.

    Row/column 0 hold the cost of deleting a full prefix as adjacent
    pairs (infinite for odd prefixes); an interior cell is the cheapest of
    matching the two current points (equal kinds only), deleting the last
    two points of x, or deleting the last two points of y.
    """
    m, n = len(vx), len(vy)
    d = np.full((m + 1, n + 1), np.inf)
    d[0, 0] = 0.0
    if m:
        d[2::2, 0] = np.cumsum(vx * kx)[1::2]
    if n:
        d[0, 2::2] = np.cumsum(vy * ky)[1::2]
    if m == 0 or n == 0:
        return d
    gx = np.abs(np.diff(vx))
    gy = np.abs(np.diff(vy))
    same_kind = kx[:, None] == ky[None, :]
    match_cost = np.abs(vx[:, None] - vy[None, :])
    for s in range(2, m + n + 1):
        i = np.arange(max(1, s - n), min(m, s - 1) + 1)
        if i.size == 0:
            continue
        j = s - i
        best = np.where(
            same_kind[i - 1, j - 1], d[i - 1, j - 1] + match_cost[i - 1, j - 1], np.inf
        )
        cand = np.full(i.size, np.inf)
        two = i >= 2
        cand[two] = d[i[two] - 2, j[two]] + gx[i[two] - 2]
        np.minimum(best, cand, out=best)
        cand.fill(np.inf)
        two = j >= 2
        cand[two] = d[i[two], j[two] - 2] + gy[j[two] - 2]
        np.minimum(best, cand, out=best)
        d[i, j] = best
    return d


def dtw_fill(x, y):
    """Fill the m x n accumulated-cost table for dynamic time warping."""
    m, n = len(x), len(y)
    d = np.empty((m, n))
    d[0, :] = np.cumsum(np.abs(x[0] - y))
    d[:, 0] = np.cumsum(np.abs(x - y[0]))
    for s in range(2, m + n - 1):
        i = np.arange(max(1, s - n + 1), min(m - 1, s - 1) + 1)
        if i.size == 0:
            continue
        j = s - i
        best = np.minimum(d[i - 1, j - 1], np.minimum(d[i - 1, j], d[i, j - 1]))
        d[i, j] = np.abs(x[i] - y[j]) + best
    return d
