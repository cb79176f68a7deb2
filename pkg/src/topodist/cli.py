"""Command-line surface tying extraction, distances, and evaluation together.

Exit codes: 0 on success, 2 for usage/input errors, 1 for internal errors.
All output is deterministic; floats are printed with 12 significant digits.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys
from pathlib import Path

from . import io as formats
from .dope import cdope, dope
from .evaluate import (
    PairwiseMetricError,
    LabeledDataset,
    METHODS,
    evaluate,
    pairwise_distances,
    series_metric,
)
from .series import Domain, TimeSeries, extract_critical_series, rotate
from .shape import DEFAULT_SAMPLES, DEFAULT_SIGMA, extract_contour, signed_curvature

INTERVAL_ONLY = ("dope", "dtw", "dtw-crit")
CIRCLE_ONLY = ("cdope", "cdtw")


class InputError(Exception):
    """Bad input or flags; reported on stderr with exit code 2."""


def _default_jobs() -> int:
    env = os.environ.get("TOPODIST_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"TOPODIST_JOBS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _domain(args) -> Domain:
    return Domain.CIRCLE if getattr(args, "domain", "interval") == "circle" else Domain.INTERVAL


def _check_method_domain(method: str, domain: Domain) -> None:
    if method in INTERVAL_ONLY and domain is not Domain.INTERVAL:
        raise InputError(f"method {method} works on interval series; pass --domain interval")
    if method in CIRCLE_ONLY and domain is not Domain.CIRCLE:
        raise InputError(f"method {method} works on circular series; pass --domain circle")


def _load_inputs(paths, domain: Domain):
    """Series from each path, with ids ``stem`` or ``stem:row``."""
    ids, series = [], []
    for path in paths:
        try:
            rows = formats.read_series_file(path)
        except ValueError as exc:
            raise InputError(f"{path}: {exc}") from None
        stem = Path(path).stem
        for k, values in enumerate(rows):
            ids.append(stem if len(rows) == 1 else f"{stem}:{k}")
            series.append(TimeSeries(values, domain))
    return ids, series


def _single_series(path, domain: Domain) -> TimeSeries:
    try:
        rows = formats.read_series_file(path)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    if len(rows) != 1:
        raise InputError(f"{path}: expected exactly one series, found {len(rows)}")
    return TimeSeries(rows[0], domain)


@contextlib.contextmanager
def _out_handle(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as handle:
            yield handle


def cmd_extract(args) -> int:
    series = _single_series(args.input, _domain(args))
    cs = extract_critical_series(series)
    with _out_handle(args.out) as handle:
        formats.write_critical_csv(handle, cs)
    return 0


def cmd_dist(args) -> int:
    domain = _domain(args)
    _check_method_domain(args.method, domain)
    if args.p <= 0:
        raise InputError("--p must be positive")
    ids, series = _load_inputs(args.inputs, domain)
    metric = series_metric(args.method, args.p)
    if args.matrix is not None:
        jobs = args.jobs or _default_jobs()
        matrix = pairwise_distances(series, metric, jobs=jobs)
        with _out_handle(args.matrix) as handle:
            formats.write_matrix_csv(handle, ids, matrix)
        return 0
    if len(series) != 2:
        raise InputError(f"expected exactly two series for a distance, found {len(series)}")
    print(formats.fmt(metric(series[0], series[1])))
    return 0


def cmd_match(args) -> int:
    domain = Domain.CIRCLE if args.method == "cdope" else Domain.INTERVAL
    xc = extract_critical_series(_single_series(args.x, domain))
    yc = extract_critical_series(_single_series(args.y, domain))
    if args.method == "cdope":
        _, alignment, shifts = cdope(xc, yc)
        xc, yc = rotate(xc, shifts[0]), rotate(yc, shifts[1])
        payload = formats.alignment_to_dict("cdope", alignment, xc, yc, shifts=shifts)
    else:
        _, alignment = dope(xc, yc)
        payload = formats.alignment_to_dict("dope", alignment, xc, yc)
    formats.dump_json(sys.stdout, payload)
    return 0


def cmd_eval(args) -> int:
    domain = _domain(args)
    _check_method_domain(args.method, domain)
    if args.p <= 0:
        raise InputError("--p must be positive")
    try:
        rows = formats.read_ucr_tsv(args.dataset)
    except ValueError as exc:
        raise InputError(f"{args.dataset}: {exc}") from None
    try:
        ds = LabeledDataset(tuple((label, TimeSeries(v, domain)) for label, v in rows))
    except ValueError as exc:
        raise InputError(f"{args.dataset}: {exc}") from None
    metric = series_metric(args.method, args.p)
    jobs = args.jobs or _default_jobs()
    report = evaluate(ds, metric, jobs=jobs)
    with _out_handle(args.report) as handle:
        formats.dump_json(handle, formats.report_to_dict(report))
    pr_path = args.pr_out
    if pr_path is None:
        base = args.report
        if base is None or base == "-":
            return 0
        if base.endswith(".json"):
            base = base[: -len(".json")]
        pr_path = base + ".pr.csv"
    with _out_handle(pr_path) as handle:
        formats.write_pr_csv(handle, report.pr_curve)
    return 0


def cmd_shape(args) -> int:
    if args.topk is not None and args.topk < 1:
        raise InputError("--topk must be at least 1")
    ids, curvatures = [], []
    for path in args.images:
        try:
            image = formats.read_image(path)
            contour = extract_contour(image)
            curv = signed_curvature(contour, sigma=args.sigma, n_samples=args.samples)
        except ValueError as exc:
            raise InputError(f"{path}: {exc}") from None
        ids.append(Path(path).stem)
        curvatures.append(curv)
        out_dir = Path(args.out_dir) if args.out_dir else Path(path).parent
        with open(out_dir / (Path(path).stem + ".curv.csv"), "w", encoding="utf-8") as handle:
            formats.write_series_csv(handle, curv.values)
    if args.topk is None or len(curvatures) < 2:
        return 0
    metric = series_metric("cdope")
    query, rest = curvatures[0], curvatures[1:]
    ranked = sorted(
        ((metric(query, c), k + 1) for k, c in enumerate(rest)),
        key=lambda pair: (pair[0], pair[1]),
    )
    for rank, (value, k) in enumerate(ranked[: args.topk], start=1):
        print(f"{rank}\t{ids[k]}\t{formats.fmt(value)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topodist",
        description="Order-preserving edit distances between critical points of time series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract the critical-point series of one series")
    p.add_argument("input", help="series file (one comma-separated series per line)")
    p.add_argument("--domain", choices=("interval", "circle"), default="interval")
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("dist", help="distance between two series, or a pairwise matrix")
    p.add_argument("inputs", nargs="+", help="series files")
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("--p", type=float, default=1.0, help="Wasserstein order (default 1)")
    p.add_argument("--domain", choices=("interval", "circle"), default="interval")
    p.add_argument("--matrix", metavar="PATH", help="write the full pairwise matrix as CSV")
    p.add_argument("--jobs", type=int, help="worker processes for --matrix")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("match", help="export the optimal alignment between two series as JSON")
    p.add_argument("x", help="first series file")
    p.add_argument("y", help="second series file")
    p.add_argument("--method", choices=("dope", "cdope"), default="dope")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("eval", help="leave-one-out ranking evaluation of a labeled dataset")
    p.add_argument("dataset", help="UCR-style TSV: label<TAB>v1<TAB>v2...")
    p.add_argument("report", nargs="?", help="JSON report path (default: stdout)")
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--domain", choices=("interval", "circle"), default="interval")
    p.add_argument("--jobs", type=int, help="worker processes for the distance matrix")
    p.add_argument("--pr-out", help="precision-recall CSV path (default: <report>.pr.csv)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("shape", help="curvature series of silhouettes; optional retrieval")
    p.add_argument("images", nargs="+", help="PGM or 0/1-grid images; first is the query")
    p.add_argument("--sigma", type=float, default=DEFAULT_SIGMA)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--topk", type=int, help="print the top-k neighbours of the first image")
    p.add_argument("--out-dir", help="directory for curvature CSVs (default: beside inputs)")
    p.set_defaults(func=cmd_shape)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PairwiseMetricError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
