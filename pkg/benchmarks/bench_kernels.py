"""Compare the compiled and pure-Python kernels on the two hot loops.

Run with ``python3 benchmarks/bench_kernels.py [--grid 50,100,200] [--reps 3]``.
Prints one CSV row per (kernel, backend, n) with mean seconds and the
speedup of the compiled kernel.
"""
import argparse
import time

import numpy as np

from mvindep import _kernels_py
from mvindep.core import column_mean_center, euclidean_distances
from mvindep.stats import neighbor_ranks

try:
    from mvindep import _kernels as _compiled
except ImportError:
    _compiled = None


def _inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, 2))
    y = x[:, :1] ** 2 + rng.normal(size=(n, 1))
    dx, dy = euclidean_distances(x).values, euclidean_distances(y).values
    hhg_args = (dx, dy, np.argsort(dx, axis=1, kind="stable"), np.argsort(dy, axis=1, kind="stable"))
    mgc_args = (column_mean_center(dx), column_mean_center(dy), neighbor_ranks(dx), neighbor_ranks(dy))
    return {"hhg_statistic": hhg_args, "mgc_local_map": mgc_args}


def _time(func, args, reps):
    func(*args)
    times = []
    for _ in range(reps):
        start = time.perf_counter()
        func(*args)
        times.append(time.perf_counter() - start)
    return float(np.mean(times))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--grid", default="50,100,200")
    parser.add_argument("--reps", type=int, default=3)
    args = parser.parse_args(argv)
    grid = [int(v) for v in args.grid.split(",")]

    print("kernel,backend,n,seconds,speedup")
    for n in grid:
        for kernel, kargs in _inputs(n).items():
            slow = _time(getattr(_kernels_py, kernel), kargs, args.reps)
            print(f"{kernel},python,{n},{slow:.6f},1.0")
            if _compiled is None:
                continue
            fast = _time(getattr(_compiled, kernel), kargs, args.reps)
            print(f"{kernel},compiled,{n},{fast:.6f},{slow / fast:.1f}")


if __name__ == "__main__":
    main()
