"""Compiled and pure DP kernels must be interchangeable."""

import os
import subprocess
import sys

import numpy as np
import pytest

import topodist
from topodist import _dp_py

try:
    from topodist import _dp
except ImportError:
    _dp = None

needs_compiled = pytest.mark.skipif(_dp is None, reason="compiled extension not built")


def test_backend_name_is_reported():
    assert topodist.BACKEND in ("pure", "compiled")


@needs_compiled
def test_dope_fill_tables_are_bit_identical():
    rng = np.random.default_rng(99)
    for _ in range(100):
        nx = int(rng.integers(1, 13)) | 1
        ny = int(rng.integers(1, 13)) | 1
        vx = rng.uniform(-1, 1, nx) + np.where(np.arange(nx) % 2 == 0, -2.0, 2.0)
        vy = rng.uniform(-1, 1, ny) + np.where(np.arange(ny) % 2 == 0, -2.0, 2.0)
        kx = np.where(np.arange(nx) % 2 == 0, -1, 1).astype(np.int8)
        ky = np.where(np.arange(ny) % 2 == 0, -1, 1).astype(np.int8)
        a = _dp.dope_fill(vx, kx, vy, ky)
        b = _dp_py.dope_fill(vx, kx, vy, ky)
        np.testing.assert_array_equal(np.asarray(a), np.asarray(b))


@needs_compiled
def test_dtw_fill_tables_are_bit_identical():
    rng = np.random.default_rng(41)
    for _ in range(100):
        x = rng.normal(size=rng.integers(1, 30))
        y = rng.normal(size=rng.integers(1, 30))
        a = _dp.dtw_fill(x, y)
        b = _dp_py.dtw_fill(x, y)
        np.testing.assert_array_equal(np.asarray(a), np.asarray(b))


def _backend_in_subprocess(env_value):
    env = dict(os.environ)
    if env_value is None:
        env.pop("TOPODIST_BACKEND", None)
    else:
        env["TOPODIST_BACKEND"] = env_value
    return subprocess.run(
        [sys.executable, "-c", "import topodist; print(topodist.BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
    )


def test_env_var_forces_pure():
    proc = _backend_in_subprocess("pure")
    assert proc.returncode == 0
    assert proc.stdout.strip() == "pure"


@needs_compiled
def test_env_var_forces_compiled():
    proc = _backend_in_subprocess("compiled")
    assert proc.returncode == 0
    assert proc.stdout.strip() == "compiled"


def test_env_var_rejects_unknown():
    proc = _backend_in_subprocess("turbo")
    assert proc.returncode != 0
    assert "TOPODIST_BACKEND" in proc.stderr


@needs_compiled
def test_distances_identical_across_backends(tmp_path):
    rng = np.random.default_rng(7)
    rows = "\n".join(
        ",".join(str(v) for v in rng.normal(size=rng.integers(5, 40))) for _ in range(4)
    )
    data = tmp_path / "series.csv"
    data.write_text(rows + "\n")
    script = (
        "from topodist import TimeSeries, dope, dtw, extract_critical_series\n"
        "from topodist.io import read_series_file, fmt\n"
        f"rows = read_series_file({str(data)!r})\n"
        "out = []\n"
        "for i in range(len(rows)):\n"
        "    for j in range(i + 1, len(rows)):\n"
        "        xc = extract_critical_series(TimeSeries(rows[i]))\n"
        "        yc = extract_critical_series(TimeSeries(rows[j]))\n"
        "        out.append(fmt(dope(xc, yc)[0]))\n"
        "        out.append(fmt(dtw(TimeSeries(rows[i]), TimeSeries(rows[j]))[0]))\n"
        "print(';'.join(out))\n"
    )
    results = {}
    for backend in ("pure", "compiled"):
        env = dict(os.environ, TOPODIST_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, "-c", script], capture_output=True, text=True, env=env
        )
        assert proc.returncode == 0, proc.stderr
        results[backend] = proc.stdout
    assert results["pure"] == results["compiled"]
