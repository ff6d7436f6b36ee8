"""Permutation p-values for any statistic, and the k-sample reduction."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np
from joblib import Parallel, delayed

from .core import as_data_matrix
from .errors import DimensionError, InvalidData, SizeError
from .stats import Statistic, StatValue, _Rows, get_statistic

# Exhaustive enumeration is capped at 7! = 5040 relabelings.
MAX_EXACT_N = 7


@dataclass(frozen=True)
class TestResult:
    statistic: float
    p_value: float
    n_permutations: int
    seed: int
    statistic_name: str
    scale: tuple[int, int] | None = None

    __test__ = False  # keep pytest from collecting this class


class _CallableStatistic(Statistic):
    """Adapter so plain ``f(x, y)`` callables run through the same engine."""

    def __init__(self, func, name=None, signed=False):
        self.func = func
        self.name = name or getattr(func, "__name__", "custom")
        self.signed = signed

    def prepare(self, x):
        return _Rows(x)

    def evaluate(self, px, py):
        value = self.func(px.values, py.values)
        return value if isinstance(value, StatValue) else StatValue(float(value))


StatisticLike = Union[str, Statistic, Callable]


def resolve_statistic(stat: StatisticLike) -> Statistic:
    if isinstance(stat, Statistic):
        return stat
    if isinstance(stat, str):
        return get_statistic(stat)
    if callable(stat):
        return _CallableStatistic(stat)
    raise TypeError(f"expected a statistic name, Statistic or callable, got {type(stat).__name__}")


def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    """Generator for one replicate; independent of how replicates are scheduled."""
    return np.random.default_rng(np.random.SeedSequence([seed, replicate]))


def _null_values(statistic, px, py, n, seed, start, stop):
    out = np.empty(stop - start)
    for r in range(start, stop):
        perm = replicate_rng(seed, r).permutation(n)
        out[r - start] = statistic.evaluate(px, statistic.permute(py, perm)).value
    return out


def _chunks(total, parts):
    bounds = np.linspace(1, total + 1, parts + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def null_distribution(statistic, px, py, n, n_permutations, seed, workers=1) -> np.ndarray:
    """Statistic values for replicates ``1..n_permutations``, in replicate order."""
    if workers == 1 or n_permutations < 2:
        return _null_values(statistic, px, py, n, seed, 1, n_permutations + 1)
    n_jobs = workers if workers > 0 else Parallel(n_jobs=workers).n_jobs
    parts = Parallel(n_jobs=n_jobs)(
        delayed(_null_values)(statistic, px, py, n, seed, a, b)
        for a, b in _chunks(n_permutations, max(1, n_jobs))
    )
    return np.concatenate(parts)


def permutation_test(
    stat: StatisticLike,
    x,
    y,
    n_permutations: int = 1000,
    seed: int = 0,
    workers: int = 1,
    exact: bool = False,
) -> TestResult:
    """Test independence of ``x`` and ``y`` by relabeling the rows of ``y``.

    Parameters
    ----------
    stat : str, Statistic or callable
        Registered statistic name, a :class:`~mvindep.stats.Statistic`, or
        any ``f(x, y) -> float``.
    n_permutations : int
        Number of random relabelings. Ignored when ``exact`` is set.
    seed : int
        Non-negative seed. Replicate ``r`` draws its permutation from
        ``SeedSequence([seed, r])``, so the result does not depend on
        ``workers``.
    workers : int
        Parallel workers for the replicates (joblib semantics, -1 = all cores).
    exact : bool
        Enumerate all ``n!`` relabelings (``n <= 7``) and return the exact
        permutation p-value.

    Returns
    -------
    TestResult
        ``p = (1 + #{t_r >= t_0}) / (1 + n_permutations)``. Signed statistics
        are compared by absolute value.
    """
    statistic = resolve_statistic(stat)
    x, y = statistic.check_pair(x, y)
    if int(seed) != seed or seed < 0:
        raise InvalidData(f"seed must be a non-negative integer, got {seed}")
    n = x.shape[0]
    px, py = statistic.prepare(x), statistic.prepare(y)
    observed = statistic.evaluate(px, py)
    fold = np.abs if statistic.signed else (lambda v: v)

    if exact:
        if n > MAX_EXACT_N:
            raise SizeError(f"exact mode enumerates n! permutations and needs n <= {MAX_EXACT_N}, got {n}")
        null = np.array(
            [
                statistic.evaluate(px, statistic.permute(py, np.array(perm))).value
                for perm in itertools.permutations(range(n))
            ]
        )
        count = int(np.count_nonzero(fold(null) >= fold(observed.value)))
        total = math.factorial(n)
        p_value = count / total
    else:
        if int(n_permutations) != n_permutations or n_permutations < 1:
            raise InvalidData(f"n_permutations must be a positive integer, got {n_permutations}")
        null = null_distribution(statistic, px, py, n, n_permutations, seed, workers)
        count = int(np.count_nonzero(fold(null) >= fold(observed.value)))
        total = int(n_permutations)
        p_value = (1 + count) / (1 + total)

    return TestResult(
        statistic=observed.value,
        p_value=p_value,
        n_permutations=total,
        seed=int(seed),
        statistic_name=statistic.name,
        scale=observed.scale,
    )


def ksample_transform(samples: Sequence) -> tuple[np.ndarray, np.ndarray]:
    """Stack ``k`` samples into ``x`` and a one-hot group-label matrix ``y``.

    Any independence test on ``(x, y)`` is then a test that the ``k`` samples
    share one distribution.
    """
    mats = [as_data_matrix(s, f"sample {i}", min_rows=1) for i, s in enumerate(samples)]
    if len(mats) < 2:
        raise SizeError(f"need at least 2 samples, got {len(mats)}")
    widths = {m.shape[1] for m in mats}
    if len(widths) != 1:
        raise DimensionError(f"samples have different column counts: {sorted(widths)}")
    x = np.concatenate(mats, axis=0)
    labels = np.repeat(np.arange(len(mats)), [m.shape[0] for m in mats])
    y = np.eye(len(mats))[labels]
    return x, y


def ksample_test(samples: Sequence, stat: StatisticLike = "dcorr", **kwargs) -> TestResult:
    """k-sample test through :func:`ksample_transform` and :func:`permutation_test`."""
    x, y = ksample_transform(samples)
    return permutation_test(stat, x, y, **kwargs)
