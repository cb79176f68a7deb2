"""Leave-one-out ranking evaluation over pluggable distance functions.

Each item queries the rest of the dataset, ranked by ascending distance
(ties by original index).  Per-query mean rank (MR) and average precision
(AP) are aggregated by unweighted means; precision-recall curves are
pooled across queries at every observed recall level with linear
interpolation.
"""

from __future__ import annotations

import functools
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .baselines import cdtw as _cdtw
from .baselines import dtw as _dtw
from .baselines import dtw_critical as _dtw_critical
from .dope import cdope as _cdope
from .dope import dope as _dope
from .matching import wasserstein
from .mergetree import sublevelset_diagram
from .series import TimeSeries, extract_critical_series


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Labeled series for retrieval evaluation.

    ``items`` is a sequence of ``(label, series)`` pairs.  Labels whose
    class has a single member cannot be queried (they still serve as
    distractors); at least one label must occur twice.
    """

    items: tuple

    def __post_init__(self):
        items = tuple((label, series) for label, series in self.items)
        if len(items) < 2:
            raise ValueError("dataset needs at least two items")
        labels = [label for label, _ in items]
        if len(set(labels)) < 2:
            raise ValueError("dataset needs at least two distinct labels")
        counts = {}
        for label in labels:
            counts[label] = counts.get(label, 0) + 1
        if max(counts.values()) < 2:
            raise ValueError("no label occurs twice; nothing can be evaluated")
        object.__setattr__(self, "items", items)

    def __len__(self):
        return len(self.items)

    @property
    def labels(self):
        return tuple(label for label, _ in self.items)

    @property
    def series(self):
        return tuple(series for _, series in self.items)


@dataclass(frozen=True)
class QueryResult:
    query_index: int
    MR: float
    AP: float


@dataclass(frozen=True, eq=False)
class RankingReport:
    per_query: tuple[QueryResult, ...]
    aggregate_MR: float
    aggregate_MAP: float
    pr_curve: tuple[tuple[float, float], ...]


class PairwiseMetricError(RuntimeError):
    """A distance computation failed; carries the offending pair."""

    def __init__(self, i, j, detail):
        super().__init__(f"distance computation failed for pair ({i}, {j}): {detail}")
        self.pair = (i, j)

    def __reduce__(self):
        i, j = self.pair
        detail = self.args[0].split(": ", 1)[1]
        return (PairwiseMetricError, (i, j, detail))


def _pair_distance(metric, task):
    i, j, a, b = task
    try:
        return i, j, float(metric(a, b)), None
    except Exception as exc:  # re-raised with indices by the caller
        return i, j, math.nan, f"{type(exc).__name__}: {exc}"


def pairwise_distances(series, metric, jobs: int | None = None) -> np.ndarray:
    """Symmetric pairwise distance matrix with a zero diagonal.

    The upper triangle is computed (in parallel across ``jobs`` worker
    processes when given) and mirrored, so the matrix is symmetric by
    construction and identical regardless of scheduling.
    """
    series = tuple(series)
    n = len(series)
    tasks = [(i, j, series[i], series[j]) for i in range(n) for j in range(i + 1, n)]
    worker = functools.partial(_pair_distance, metric)
    if jobs is not None and jobs > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (8 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, tasks, chunksize=chunk))
    else:
        results = [worker(task) for task in tasks]
    out = np.zeros((n, n))
    for i, j, value, err in results:
        if err is not None:
            raise PairwiseMetricError(i, j, err)
        out[i, j] = out[j, i] = value
    return out


def distance_matrix(ds: LabeledDataset, metric, jobs: int | None = None) -> np.ndarray:
    """Pairwise distances between a labeled dataset's series."""
    return pairwise_distances(ds.series, metric, jobs=jobs)


def mean_rank(ranked_labels, query_label) -> float:
    """Mean 1-based rank of the items sharing the query's label."""
    ranks = [k + 1 for k, label in enumerate(ranked_labels) if label == query_label]
    if not ranks:
        raise ValueError("no relevant items for the query label")
    return math.fsum(ranks) / len(ranks)


def average_precision(ranked_labels, query_label) -> float:
    """Mean precision at the positions where relevant items appear."""
    hits = 0
    precisions = []
    for k, label in enumerate(ranked_labels):
        if label == query_label:
            hits += 1
            precisions.append(hits / (k + 1))
    if not precisions:
        raise ValueError("no relevant items for the query label")
    return math.fsum(precisions) / len(precisions)


def evaluate(ds: LabeledDataset, metric, jobs: int | None = None) -> RankingReport:
    """Leave-one-out ranking report for a dataset under a metric.

    Queries whose label occurs only once are skipped with a warning.  The
    report is deterministic bit for bit: ranking ties break by original
    index, and aggregation order is fixed.
    """
    distances = distance_matrix(ds, metric, jobs=jobs)
    return report_from_matrix(ds, distances)


def report_from_matrix(ds: LabeledDataset, distances: np.ndarray) -> RankingReport:
    """Assemble the ranking report from a precomputed distance matrix."""
    n = len(ds)
    labels = ds.labels
    per_query = []
    recall_levels = []
    curves = []
    for q in range(n):
        others = sorted((i for i in range(n) if i != q), key=lambda i: (distances[q, i], i))
        ranked = [labels[i] for i in others]
        relevant = sum(1 for label in ranked if label == labels[q])
        if relevant == 0:
            warnings.warn(
                f"label {labels[q]!r} occurs once; query {q} skipped", stacklevel=2
            )
            continue
        per_query.append(
            QueryResult(q, mean_rank(ranked, labels[q]), average_precision(ranked, labels[q]))
        )
        hit_positions = np.array([k + 1 for k, lab in enumerate(ranked) if lab == labels[q]])
        precisions = np.arange(1, relevant + 1) / hit_positions
        recalls = np.arange(1, relevant + 1) / relevant
        recall_levels.append(recalls)
        curves.append((recalls, precisions))
    if not per_query:
        raise ValueError("no evaluable queries in the dataset")
    levels = np.unique(np.concatenate(recall_levels))
    pooled = np.mean([np.interp(levels, r, p) for r, p in curves], axis=0)
    return RankingReport(
        per_query=tuple(per_query),
        aggregate_MR=math.fsum(r.MR for r in per_query) / len(per_query),
        aggregate_MAP=math.fsum(r.AP for r in per_query) / len(per_query),
        pr_curve=tuple((float(r), float(p)) for r, p in zip(levels, pooled)),
    )


# ---------------------------------------------------------------------------
# Metric adapters (module-level so they pickle into worker processes).

def _metric_dope(x, y):
    return _dope(extract_critical_series(x), extract_critical_series(y))[0]


def _metric_cdope(x, y):
    return _cdope(extract_critical_series(x), extract_critical_series(y))[0]


def _metric_dtw(x, y):
    return _dtw(x, y)[0]


def _metric_dtw_critical(x, y):
    return _dtw_critical(x, y)[0]


def _metric_cdtw(x, y):
    return _cdtw(x, y)[0]


def _metric_wasserstein(x, y, p):
    d1 = sublevelset_diagram(extract_critical_series(x))
    d2 = sublevelset_diagram(extract_critical_series(y))
    return wasserstein(d1, d2, p)[0]


METHODS = ("dope", "cdope", "dtw", "dtw-crit", "cdtw", "wasserstein", "bottleneck")
CIRCULAR_METHODS = ("cdope", "cdtw")


def series_metric(method: str, p: float = 1.0):
    """Distance function between raw series for a named method."""
    if method == "dope":
        return _metric_dope
    if method == "cdope":
        return _metric_cdope
    if method == "dtw":
        return _metric_dtw
    if method == "dtw-crit":
        return _metric_dtw_critical
    if method == "cdtw":
        return _metric_cdtw
    if method == "wasserstein":
        return functools.partial(_metric_wasserstein, p=p)
    if method == "bottleneck":
        return functools.partial(_metric_wasserstein, p=math.inf)
    raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
