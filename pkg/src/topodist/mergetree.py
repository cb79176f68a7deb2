"""Merge trees and sublevelset persistence for critical-point series.

The merge tree of an interval critical series has one leaf per min and one
internal node per max; lower maxes merge before higher ones, so the tree
is the unique one whose inorder traversal reproduces the critical series.
Sublevelset diagrams come from the elder rule; circular series are cut at
their global max, which contributes the essential class instead of a pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .series import MAX, MIN, CriticalSeries, Domain


@dataclass(frozen=True, eq=False)
class MergeTreeNode:
    """A leaf (min) or binary internal node (max) of a merge tree."""

    height: float
    kind: int  # MIN for leaves, MAX for internal nodes
    origin_index: int
    children: tuple  # () for leaves, (left, right) for internal nodes


@dataclass(frozen=True, eq=False)
class MergeTree:
    """Merge tree with nodes listed in inorder (= critical-series order)."""

    root: MergeTreeNode
    nodes: tuple[MergeTreeNode, ...]

    def inorder_values(self) -> np.ndarray:
        """Heights along an inorder traversal of the tree."""
        return np.array([node.height for node in self.nodes])


def _inorder(root: MergeTreeNode) -> list[MergeTreeNode]:
    out: list[MergeTreeNode] = []
    stack: list[MergeTreeNode] = []
    node = root
    while stack or node is not None:
        while node is not None:
            stack.append(node)
            node = node.children[0] if node.children else None
        node = stack.pop()
        out.append(node)
        node = node.children[1] if node.children else None
    return out


def build_merge_tree(cs: CriticalSeries) -> MergeTree:
    """Build the merge tree of an interval critical series.

    Maxes act as binary operators between the min leaves, binding tighter
    the lower they are (they merge first); among equal maxes the earliest
    ends up shallowest.  Built with an operator stack, so deep trees from
    monotone series need no recursion.
    """
    if cs.domain is not Domain.INTERVAL:
        raise ValueError("merge trees are built from interval critical series; cut circular series first")
    v, o = cs.values, cs.origin_indices
    operands = [MergeTreeNode(float(v[0]), MIN, int(o[0]), ())]
    pending: list[tuple[float, int]] = []  # (height, origin index) of open maxes

    def reduce_top():
        height, origin = pending.pop()
        right = operands.pop()
        left = operands.pop()
        operands.append(MergeTreeNode(height, MAX, origin, (left, right)))

    for t in range(1, len(v), 2):
        while pending and pending[-1][0] < v[t]:
            reduce_top()
        pending.append((float(v[t]), int(o[t])))
        operands.append(MergeTreeNode(float(v[t + 1]), MIN, int(o[t + 1]), ()))
    while pending:
        reduce_top()
    root = operands.pop()
    return MergeTree(root, tuple(_inorder(root)))


@dataclass(frozen=True, eq=False)
class PersistenceDiagram:
    """Finite (birth, death) pairs plus one essential class.

    ``pairs`` is a float array of shape (k, 2), canonically sorted by
    (birth, death).  ``essential`` is (global min, +inf) on an interval,
    (global min, global max) on a circle, or None for bare test diagrams.
    """

    pairs: np.ndarray
    essential: tuple[float, float] | None = None
    domain: Domain = Domain.INTERVAL

    def __post_init__(self):
        pairs = np.asarray(self.pairs, dtype=np.float64).reshape(-1, 2)
        if not np.isfinite(pairs).all():
            raise ValueError("finite pairs must be finite")
        if np.any(pairs[:, 0] > pairs[:, 1]):
            raise ValueError("birth exceeds death")
        pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
        pairs.setflags(write=False)
        object.__setattr__(self, "pairs", pairs)
        if self.essential is not None:
            birth, death = self.essential
            if not (math.isfinite(birth) and birth <= death):
                raise ValueError("invalid essential class")
            object.__setattr__(self, "essential", (float(birth), float(death)))

    def __len__(self):
        return self.pairs.shape[0]


def _elder_pairs(v: np.ndarray) -> list[tuple[float, float]]:
    """Elder-rule pairs of an alternating min-bounded value sequence.

    Maxes are processed lowest first (ties by position); each merges its
    two neighboring components and kills the younger neighbor min (higher
    birth; on equal births the later-indexed one).  Neighbor bookkeeping
    is a doubly linked list over the surviving positions.
    """
    n = v.size
    if n == 1:
        return []
    nxt = np.arange(1, n + 1)
    prv = np.arange(-1, n - 1)
    max_positions = sorted(range(1, n, 2), key=lambda p: (v[p], p))
    pairs = []
    for pos in max_positions:
        left, right = prv[pos], nxt[pos]
        if v[left] > v[right]:
            dead, alive = left, right
        else:  # equal births: the earlier (left) min survives
            dead, alive = right, left
        pairs.append((float(v[dead]), float(v[pos])))
        lo = prv[dead] if dead < pos else prv[pos]
        hi = nxt[pos] if dead < pos else nxt[dead]
        if lo >= 0:
            nxt[lo] = hi
        if hi <= n - 1:
            prv[hi] = lo
    return pairs


def sublevelset_diagram(cs: CriticalSeries) -> PersistenceDiagram:
    """Sublevelset persistence diagram of a critical series.

    Interval: elder-rule pairs plus the essential class (global min, +inf).
    Circle: cut at the first occurrence of the global max and unroll; the
    cut sequence's elder pairs are the finite pairs and the essential class
    is (global min, global max).
    """
    if cs.domain is Domain.CIRCLE:
        if cs.is_degenerate:
            raise ValueError("degenerate circular series has no diagram")
        v = cs.values
        g = int(np.argmax(v))
        cut = np.concatenate([v[g + 1 :], v[:g]])
        return PersistenceDiagram(
            np.array(_elder_pairs(cut)).reshape(-1, 2),
            (float(v.min()), float(v[g])),
            Domain.CIRCLE,
        )
    v = cs.values
    return PersistenceDiagram(
        np.array(_elder_pairs(v)).reshape(-1, 2),
        (float(v.min()), math.inf),
        Domain.INTERVAL,
    )
