"""Time the compiled DP kernels against the pure-numpy fallback.

Fills the same alignment and warping tables with both backends, checks
that the results agree bit for bit, and reports the best wall-clock time
per fill at a range of input sizes.

Run from the repository root::

    python benchmarks/bench_backends.py
    python benchmarks/bench_backends.py --sizes 200 800 --repeats 5
"""

import argparse
import time

import numpy as np

from topodist import _dp_py

try:
    from topodist import _dp
except ImportError:
    _dp = None


def alternating_series(rng, n):
    """Random critical values/kinds with guaranteed min/max alternation."""
    values = rng.uniform(-1, 1, n) + np.where(np.arange(n) % 2 == 0, -2.0, 2.0)
    kinds = np.where(np.arange(n) % 2 == 0, -1, 1).astype(np.int8)
    return values, kinds


def best_time(fn, args, repeats):
    """Best-of-``repeats`` wall-clock seconds for ``fn(*args)``."""
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes",
        type=int,
        nargs="+",
        default=[100, 400, 1600],
        help="series lengths to benchmark (tables are size x size)",
    )
    parser.add_argument(
        "--repeats", type=int, default=3, help="timing repeats; best is kept"
    )
    parser.add_argument("--seed", type=int, default=0, help="input generator seed")
    args = parser.parse_args(argv)

    if _dp is None:
        parser.exit(1, "compiled extension not built; nothing to compare\n")

    rng = np.random.default_rng(args.seed)
    header = f"{'kernel':<10}{'n':>7}{'pure (s)':>12}{'compiled (s)':>14}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n in args.sizes:
        vx, kx = alternating_series(rng, n)
        vy, ky = alternating_series(rng, n)
        x, y = rng.normal(size=n), rng.normal(size=n)
        for kernel, fill_args in (
            ("dope_fill", (vx, kx, vy, ky)),
            ("dtw_fill", (x, y)),
        ):
            compiled_fn = getattr(_dp, kernel)
            pure_fn = getattr(_dp_py, kernel)
            np.testing.assert_array_equal(
                np.asarray(compiled_fn(*fill_args)), pure_fn(*fill_args)
            )
            t_pure = best_time(pure_fn, fill_args, args.repeats)
            t_comp = best_time(compiled_fn, fill_args, args.repeats)
            print(
                f"{kernel:<10}{n:>7}{t_pure:>12.4f}{t_comp:>14.4f}"
                f"{t_pure / t_comp:>8.1f}x"
            )


if __name__ == "__main__":
    main()
