"""File formats: series CSV, UCR-style TSV, PGM/grid images, exports.

All floating-point output is fixed at 12 significant digits so that
identical inputs produce byte-identical files.  Parse errors carry
1-based line numbers.
"""

from __future__ import annotations

import itertools
import json
import math

import numpy as np

from .dope import Alignment
from .evaluate import RankingReport
from .series import CriticalSeries


def fmt(value: float) -> str:
    """Render a float with 12 significant digits."""
    return "%.12g" % float(value)


def round12(value: float) -> float:
    """Round a float to 12 significant digits (for JSON payloads)."""
    value = float(value)
    if not math.isfinite(value):
        return value
    return float(fmt(value))


# ---------------------------------------------------------------------------
# Series files: one series per line, comma-separated values.

def parse_series_line(line: str, lineno: int) -> np.ndarray:
    try:
        return np.array([float(tok) for tok in line.split(",")])
    except ValueError:
        raise ValueError(f"line {lineno}: expected comma-separated numbers") from None


def read_series_file(path) -> list[np.ndarray]:
    """All series in a file, one comma-separated series per line."""
    out = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            out.append(parse_series_line(line, lineno))
    if not out:
        raise ValueError("no series found")
    return out


# ---------------------------------------------------------------------------
# UCR-style TSV: label<TAB>v1<TAB>v2...; ragged rows allowed.

def read_ucr_tsv(path) -> list[tuple[str, np.ndarray]]:
    items = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) < 2:
                raise ValueError(f"line {lineno}: expected label<TAB>values")
            try:
                values = np.array([float(tok) for tok in fields[1:]])
            except ValueError:
                raise ValueError(f"line {lineno}: non-numeric value") from None
            items.append((fields[0].strip(), values))
    if not items:
        raise ValueError("no rows found")
    return items


def write_ucr_tsv(path, items) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for label, values in items:
            handle.write("\t".join([str(label)] + [fmt(v) for v in np.asarray(values)]) + "\n")


# ---------------------------------------------------------------------------
# Images: PGM (P2/P5) or plain 0/1 grids, as floats in [0, 1].

def _pgm_tokens(data: bytes):
    pos = 0
    while pos < len(data):
        ch = data[pos:pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            eol = data.find(b"\n", pos)
            pos = len(data) if eol < 0 else eol + 1
        else:
            end = pos
            while end < len(data) and not data[end:end + 1].isspace():
                end += 1
            yield data[pos:end], end
            pos = end


def read_pgm(path) -> np.ndarray:
    with open(path, "rb") as handle:
        data = handle.read()
    tokens = _pgm_tokens(data)
    try:
        magic = next(tokens)[0]
        width = int(next(tokens)[0])
        height = int(next(tokens)[0])
        maxval, header_end = next(tokens)
        maxval = int(maxval)
    except (StopIteration, ValueError):
        raise ValueError("malformed PGM header") from None
    if magic not in (b"P2", b"P5"):
        raise ValueError(f"unsupported PGM magic {magic!r}")
    if width <= 0 or height <= 0 or maxval <= 0:
        raise ValueError("invalid PGM dimensions")
    if magic == b"P5":
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        raster = data[header_end + 1:]
        expected = width * height * dtype.itemsize
        if len(raster) < expected:
            raise ValueError("truncated PGM raster")
        pixels = np.frombuffer(raster[:expected], dtype=dtype)
    else:
        try:
            pixels = np.array(
                [int(tok) for tok, _ in itertools.islice(tokens, width * height)]
            )
        except ValueError:
            raise ValueError("non-numeric PGM sample") from None
        if pixels.size < width * height:
            raise ValueError("truncated PGM raster")
    return pixels.reshape(height, width).astype(float) / maxval


def read_grid(path) -> np.ndarray:
    """A text grid of 0/1 pixels, optionally space- or comma-separated."""
    rows = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip().replace(",", " ")
            if not line:
                continue
            tokens = line.split() if " " in line else list(line)
            if not all(tok in ("0", "1") for tok in tokens):
                raise ValueError(f"line {lineno}: grid rows must contain only 0 and 1")
            rows.append([int(tok) for tok in tokens])
    if not rows:
        raise ValueError("empty grid")
    width = len(rows[0])
    for k, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"line {k + 1}: ragged grid row")
    return np.array(rows, dtype=float)


def read_image(path) -> np.ndarray:
    path = str(path)
    with open(path, "rb") as handle:
        head = handle.read(2)
    if path.lower().endswith(".pgm") or head in (b"P2", b"P5"):
        return read_pgm(path)
    return read_grid(path)


# ---------------------------------------------------------------------------
# Outputs.

def write_critical_csv(handle, cs: CriticalSeries) -> None:
    handle.write("value,kind,origin_index\n")
    for value, kind, origin in zip(cs.values, cs.kinds, cs.origin_indices):
        handle.write(f"{fmt(value)},{int(kind)},{int(origin)}\n")


def write_series_csv(handle, values) -> None:
    handle.write(",".join(fmt(v) for v in np.asarray(values)) + "\n")


def write_matrix_csv(handle, ids, matrix: np.ndarray) -> None:
    handle.write(",".join([""] + list(ids)) + "\n")
    for name, row in zip(ids, matrix):
        handle.write(",".join([name] + [fmt(v) for v in row]) + "\n")


def write_pr_csv(handle, pr_curve) -> None:
    handle.write("recall,precision\n")
    for recall, precision in pr_curve:
        handle.write(f"{fmt(recall)},{fmt(precision)}\n")


def report_to_dict(report: RankingReport) -> dict:
    return {
        "aggregate_MR": round12(report.aggregate_MR),
        "aggregate_MAP": round12(report.aggregate_MAP),
        "per_query": [
            {"query_index": q.query_index, "MR": round12(q.MR), "AP": round12(q.AP)}
            for q in report.per_query
        ],
        "pr_curve": [[round12(r), round12(p)] for r, p in report.pr_curve],
    }


def alignment_to_dict(method: str, alignment: Alignment, xc: CriticalSeries,
                      yc: CriticalSeries, shifts=None) -> dict:
    """JSON-ready export of an alignment (versioned, ``"schema": 1``).

    For rotated alignments, ``xc``/``yc`` must be the rotated series the
    indices refer to; origin indices then still point into the raw input.
    """
    out = {
        "schema": 1,
        "method": method,
        "cost": round12(alignment.cost),
        "matches": [
            {
                "x_critical_index": i,
                "y_critical_index": j,
                "x_origin_index": int(xc.origin_indices[i]),
                "y_origin_index": int(yc.origin_indices[j]),
            }
            for i, j in alignment.matched
        ],
        "deleted_x": [list(pair) for pair in alignment.deleted_x],
        "deleted_y": [list(pair) for pair in alignment.deleted_y],
    }
    if shifts is not None:
        out["shifts"] = list(shifts)
    return out


def dump_json(handle, payload: dict) -> None:
    json.dump(payload, handle, indent=2, sort_keys=False)
    handle.write("\n")
