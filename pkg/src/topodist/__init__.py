"""Topology-driven distances between time series.

Time series are compared through their critical points: an
order-preserving edit distance over min/max sequences (with a circular
variant), sublevelset persistence diagrams with Wasserstein and
bottleneck matching, dynamic-time-warping baselines, a silhouette
curvature pipeline, and a leave-one-out ranking evaluation harness.
"""

from ._backend import BACKEND
from .baselines import WarpingPath, cdtw, dtw, dtw_critical
from .dope import (
    Alignment,
    DpTable,
    alignment_cost,
    cdope,
    cdope_brute_force,
    dope,
    dope_brute_force,
    dope_table,
)
from .evaluate import (
    LabeledDataset,
    PairwiseMetricError,
    QueryResult,
    RankingReport,
    average_precision,
    distance_matrix,
    evaluate,
    mean_rank,
    pairwise_distances,
    series_metric,
)
from .matching import DiagramMatching, brute_force_wasserstein, matching_cost, wasserstein
from .mergetree import (
    MergeTree,
    MergeTreeNode,
    PersistenceDiagram,
    build_merge_tree,
    sublevelset_diagram,
)
from .series import (
    MAX,
    MIN,
    CriticalSeries,
    Domain,
    TimeSeries,
    extract_critical_series,
    rotate,
    zero_padded_l1,
)
from .shape import Contour, extract_contour, signed_curvature
from .synth import make_warped_dataset

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "BACKEND",
    "Contour",
    "CriticalSeries",
    "DiagramMatching",
    "Domain",
    "DpTable",
    "LabeledDataset",
    "MAX",
    "MIN",
    "MergeTree",
    "MergeTreeNode",
    "PairwiseMetricError",
    "PersistenceDiagram",
    "QueryResult",
    "RankingReport",
    "TimeSeries",
    "WarpingPath",
    "alignment_cost",
    "average_precision",
    "brute_force_wasserstein",
    "build_merge_tree",
    "cdope",
    "cdope_brute_force",
    "cdtw",
    "distance_matrix",
    "dope",
    "dope_brute_force",
    "dope_table",
    "dtw",
    "dtw_critical",
    "evaluate",
    "extract_contour",
    "extract_critical_series",
    "make_warped_dataset",
    "matching_cost",
    "mean_rank",
    "pairwise_distances",
    "rotate",
    "series_metric",
    "signed_curvature",
    "sublevelset_diagram",
    "wasserstein",
    "zero_padded_l1",
    "__version__",
]
