"""Wasserstein and bottleneck distances between persistence diagrams.

Points are compared with the max-coordinate (L-infinity) metric; each
point may instead be matched to the diagonal at cost persistence/2.
Essential classes pair with each other under the same ground metric
(infinite deaths compare equal, leaving |b1 - b2| on the interval), and
when both deaths are finite -- the circular case -- the pair of essential
classes may instead retire to the diagonal like any other points.  That
freedom is what keeps the 1-Wasserstein distance below the edit distance
when an alignment deletes every critical point of a circular series.
Finite p solves an exact assignment on the diagonal-augmented square cost
matrix; p = infinity is the bottleneck value found by binary search over
candidate edge costs with perfect-matching feasibility tests.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .mergetree import PersistenceDiagram


@dataclass(frozen=True)
class DiagramMatching:
    """How each finite point was used: matched across, or sent to the diagonal."""

    matched: tuple[tuple[int, int], ...]
    to_diagonal_1: tuple[int, ...]
    to_diagonal_2: tuple[int, ...]
    cost: float


def _check_pair(d1: PersistenceDiagram, d2: PersistenceDiagram):
    if d1.domain is not d2.domain:
        raise ValueError("diagrams live on different domains")
    if (d1.essential is None) != (d2.essential is None):
        raise ValueError("one diagram has an essential class and the other does not")


def _essential_edges(d1, d2, p) -> list[float]:
    """Edge costs contributed by the essential classes under exponent ``p``.

    Either one edge (the two essentials matched to each other) or, when
    both deaths are finite, possibly two (each retired to the diagonal),
    whichever is cheaper under ``p``.
    """
    if d1.essential is None:
        return []
    (b1, e1), (b2, e2) = d1.essential, d2.essential
    if math.isinf(e1) and math.isinf(e2):
        return [abs(b1 - b2)]
    match = max(abs(b1 - b2), abs(e1 - e2))
    retire = [(e1 - b1) / 2.0, (e2 - b2) / 2.0]
    if math.isinf(p):
        return [match] if match <= max(retire) else retire
    if match**p <= retire[0] ** p + retire[1] ** p:
        return [match]
    return retire


def _cross_costs(p1, p2):
    if len(p1) == 0 or len(p2) == 0:
        return np.zeros((len(p1), len(p2)))
    return np.abs(p1[:, None, :] - p2[None, :, :]).max(axis=2)


def _diagonal_costs(pts):
    return (pts[:, 1] - pts[:, 0]) / 2.0


def matching_cost(
    d1: PersistenceDiagram, d2: PersistenceDiagram, matching: DiagramMatching, p
) -> float:
    """Recompute a matching's cost under exponent ``p`` (inf = bottleneck)."""
    _check_pair(d1, d2)
    cross = _cross_costs(d1.pairs, d2.pairs)
    diag1, diag2 = _diagonal_costs(d1.pairs), _diagonal_costs(d2.pairs)
    edges = [cross[i, j] for i, j in matching.matched]
    edges += [diag1[i] for i in matching.to_diagonal_1]
    edges += [diag2[j] for j in matching.to_diagonal_2]
    edges += _essential_edges(d1, d2, p)
    if not edges:
        return 0.0
    if math.isinf(p):
        return float(max(edges))
    return float(math.fsum(e**p for e in edges) ** (1.0 / p))


def wasserstein(
    d1: PersistenceDiagram, d2: PersistenceDiagram, p=1.0
) -> tuple[float, DiagramMatching]:
    """p-Wasserstein (or bottleneck for p = inf) distance between diagrams.

    Returns the distance and the optimal matching realizing it; the
    reported value equals :func:`matching_cost` of that matching exactly.
    """
    _check_pair(d1, d2)
    if not (p == math.inf or p > 0):
        raise ValueError("p must be positive or infinity")
    if math.isinf(p):
        matched, td1, td2 = _bottleneck_assignment(d1.pairs, d2.pairs)
    else:
        matched, td1, td2 = _assignment(d1.pairs, d2.pairs, p)
    matching = DiagramMatching(matched, td1, td2, 0.0)
    value = matching_cost(d1, d2, matching, p)
    matching = DiagramMatching(matched, td1, td2, value)
    return value, matching


def _assignment(p1, p2, p):
    n1, n2 = len(p1), len(p2)
    if n1 + n2 == 0:
        return (), (), ()
    # Augmented square matrix: extra columns are diagonal slots for d1's
    # points (constant cost per row), extra rows diagonal slots for d2's.
    cost = np.zeros((n1 + n2, n1 + n2))
    cost[:n1, :n2] = _cross_costs(p1, p2)
    cost[:n1, n2:] = _diagonal_costs(p1)[:, None]
    cost[n1:, :n2] = _diagonal_costs(p2)[None, :]
    rows, cols = linear_sum_assignment(cost**p)
    return _collect(rows, cols, n1, n2)


def _collect(rows, cols, n1, n2):
    matched, td1, td2 = [], [], []
    for r, c in zip(rows, cols):
        if r < n1 and c < n2:
            matched.append((int(r), int(c)))
        elif r < n1:
            td1.append(int(r))
        elif c < n2:
            td2.append(int(c))
    return tuple(matched), tuple(td1), tuple(td2)


def _bottleneck_assignment(p1, p2):
    n1, n2 = len(p1), len(p2)
    if n1 + n2 == 0:
        return (), (), ()
    cross = _cross_costs(p1, p2)
    diag1, diag2 = _diagonal_costs(p1), _diagonal_costs(p2)
    candidates = np.unique(np.concatenate([cross.ravel(), diag1, diag2, [0.0]]))

    # Rows 0..n1-1 are d1's points, rows n1.. are d2's diagonal slots;
    # columns 0..n2-1 are d2's points, columns n2.. are d1's slots.
    slot_rows = n1 + np.arange(n2)
    slot_cols = n2 + np.arange(n1)

    def matching_at(threshold):
        r, c = np.nonzero(cross <= threshold)
        ok1 = np.nonzero(diag1 <= threshold)[0]
        ok2 = np.nonzero(diag2 <= threshold)[0]
        rows = np.concatenate([
            r,
            np.repeat(ok1, n1),
            np.tile(slot_rows, len(ok2)),
            np.repeat(slot_rows, n1),
        ])
        cols = np.concatenate([
            c,
            np.tile(slot_cols, len(ok1)),
            np.repeat(ok2, n2),
            np.tile(slot_cols, n2),
        ])
        graph = csr_matrix(
            (np.ones(len(rows), dtype=np.int8), (rows, cols)),
            shape=(n1 + n2, n1 + n2),
        )
        match = maximum_bipartite_matching(graph, perm_type="column")
        return match if (match >= 0).all() else None

    lo, hi = 0, len(candidates) - 1
    feasible_hi = matching_at(candidates[hi])
    assert feasible_hi is not None  # everything is allowed at the max cost
    while lo < hi:
        mid = (lo + hi) // 2
        match = matching_at(candidates[mid])
        if match is not None:
            hi = mid
            feasible_hi = match
        else:
            lo = mid + 1
    return _collect(np.arange(n1 + n2), feasible_hi, n1, n2)


_BRUTE_FORCE_LIMIT = 6


def brute_force_wasserstein(d1: PersistenceDiagram, d2: PersistenceDiagram, p=1.0) -> float:
    """Exact distance by enumerating every partial bijection (test oracle)."""
    _check_pair(d1, d2)
    n1, n2 = len(d1), len(d2)
    if n1 > _BRUTE_FORCE_LIMIT or n2 > _BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force is limited to {_BRUTE_FORCE_LIMIT} points per diagram")
    cross = _cross_costs(d1.pairs, d2.pairs)
    diag1, diag2 = _diagonal_costs(d1.pairs), _diagonal_costs(d2.pairs)

    # enumerate the essential routes alongside the finite-point bijections
    if d1.essential is None:
        ess_routes = [[]]
    else:
        (b1, e1), (b2, e2) = d1.essential, d2.essential
        if math.isinf(e1) and math.isinf(e2):
            ess_routes = [[abs(b1 - b2)]]
        else:
            ess_routes = [
                [max(abs(b1 - b2), abs(e1 - e2))],
                [(e1 - b1) / 2.0, (e2 - b2) / 2.0],
            ]

    def aggregate(edges):
        best_route = math.inf
        for route in ess_routes:
            all_edges = edges + route
            if not all_edges:
                value = 0.0
            elif math.isinf(p):
                value = float(max(all_edges))
            else:
                value = float(math.fsum(e**p for e in all_edges) ** (1.0 / p))
            best_route = min(best_route, value)
        return best_route

    best = math.inf
    for k in range(min(n1, n2) + 1):
        for keep1 in itertools.combinations(range(n1), k):
            rest1 = [diag1[i] for i in range(n1) if i not in keep1]
            for keep2 in itertools.combinations(range(n2), k):
                rest2 = [diag2[j] for j in range(n2) if j not in keep2]
                for perm in itertools.permutations(keep2):
                    edges = [cross[i, j] for i, j in zip(keep1, perm)]
                    value = aggregate(edges + rest1 + rest2)
                    if value < best:
                        best = value
    return best
