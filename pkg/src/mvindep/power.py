"""Monte Carlo power curves and wall-time scaling runs."""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed

from .errors import InvalidData
from .inference import StatisticLike, permutation_test, resolve_statistic
from .simulations import SimulationSpec, simulate

DEFAULT_REPLICATES = 500
DEFAULT_POWER_PERMUTATIONS = 200
DEFAULT_ALPHA = 0.05
# Dimension sweeps hold n here; sample-size sweeps hold p = 1.
DIMENSION_AXIS_N = 100


class Axis(enum.Enum):
    SAMPLE_SIZE = "sample_size"
    DIMENSION = "dimension"


@dataclass(frozen=True)
class PowerCurve:
    statistic_name: str
    sim_kind: str
    axis: Axis
    grid: list[int]
    power: list[float]
    alpha: float
    replicates: int
    n_permutations: int
    seed: int
    kappa: float = 1.0
    rejections: list[int] = field(default_factory=list)

    @property
    def stderr(self) -> list[float]:
        """Binomial standard error of each power estimate."""
        return [float(np.sqrt(p * (1 - p) / self.replicates)) for p in self.power]

    def rows(self):
        return list(zip(self.grid, self.power, self.stderr))


def replicate_seeds(seed: int, grid_index: int, replicate: int) -> tuple[int, int]:
    """(simulation seed, permutation seed) for one trial."""
    sim_seed, perm_seed = np.random.SeedSequence([seed, grid_index, replicate]).generate_state(2)
    return int(sim_seed), int(perm_seed)


def _rejections(statistic, kind, n, p, kappa, alpha, n_permutations, seed, grid_index, reps):
    count = 0
    for r in reps:
        sim_seed, perm_seed = replicate_seeds(seed, grid_index, r)
        pair = simulate(SimulationSpec(kind, n, p, kappa, sim_seed))
        result = permutation_test(statistic, pair.x, pair.y, n_permutations, perm_seed)
        count += result.p_value <= alpha
    return count


def estimate_power(
    statistic: StatisticLike,
    sim_kind: str,
    axis: Axis | str = Axis.SAMPLE_SIZE,
    grid=(10, 50, 100),
    alpha: float = DEFAULT_ALPHA,
    replicates: int = DEFAULT_REPLICATES,
    n_permutations: int = DEFAULT_POWER_PERMUTATIONS,
    seed: int = 0,
    kappa: float = 1.0,
    workers: int = 1,
) -> PowerCurve:
    """Rejection rate of a permutation test over a grid of ``n`` or ``p``.

    Each grid point runs ``replicates`` independent simulate-then-test
    trials; trial ``r`` at grid index ``g`` is seeded from ``(seed, g, r)``
    so the curve is the same for any ``workers``.
    """
    axis = Axis(axis)
    grid = [int(g) for g in grid]
    if not 0 < alpha < 1:
        raise InvalidData(f"alpha must be in (0, 1), got {alpha}")
    if replicates < 1:
        raise InvalidData(f"replicates must be >= 1, got {replicates}")
    if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidData(f"grid must be non-empty and strictly increasing, got {grid}")
    stat = resolve_statistic(statistic)
    SimulationSpec(sim_kind, 3, 1)  # fail fast on an unknown kind

    n_jobs = workers if workers > 0 else Parallel(n_jobs=workers).n_jobs
    rejections = []
    for g, value in enumerate(grid):
        n, p = (value, 1) if axis is Axis.SAMPLE_SIZE else (DIMENSION_AXIS_N, value)
        args = (stat, sim_kind, n, p, kappa, alpha, n_permutations, seed, g)
        if n_jobs == 1:
            rejections.append(_rejections(*args, range(replicates)))
        else:
            chunks = np.array_split(np.arange(replicates), n_jobs)
            counts = Parallel(n_jobs=n_jobs)(
                delayed(_rejections)(*args, chunk.tolist()) for chunk in chunks if chunk.size
            )
            rejections.append(int(sum(counts)))

    return PowerCurve(
        statistic_name=stat.name,
        sim_kind=SimulationSpec(sim_kind, 3, 1).kind.value,
        axis=axis,
        grid=grid,
        power=[c / replicates for c in rejections],
        alpha=alpha,
        replicates=replicates,
        n_permutations=n_permutations,
        seed=seed,
        kappa=kappa,
        rejections=[int(c) for c in rejections],
    )


def wall_time_bench(
    statistic: StatisticLike,
    grid=(100,),
    repetitions: int = 3,
    include_pvalue: bool = False,
    n_permutations: int = 1000,
    seed: int = 0,
) -> list[tuple[int, float]]:
    """Mean seconds per evaluation on a noisy univariate linear sample.

    With ``include_pvalue`` each repetition times a full permutation test
    instead of the bare statistic.
    """
    grid = [int(g) for g in grid]
    if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidData(f"grid must be non-empty and strictly increasing, got {grid}")
    if repetitions < 1:
        raise InvalidData(f"repetitions must be >= 1, got {repetitions}")
    stat = resolve_statistic(statistic)
    table = []
    for n in grid:
        pair = simulate(SimulationSpec("linear", n, 1, 1.0, seed))
        if include_pvalue:
            run = lambda: permutation_test(stat, pair.x, pair.y, n_permutations, seed)  # noqa: E731
        else:
            run = lambda: stat(pair.x, pair.y)  # noqa: E731
        run()  # warm-up: first-call allocations and imports
        times = []
        for _ in range(repetitions):
            start = time.perf_counter()
            run()
            times.append(time.perf_counter() - start)
        table.append((n, float(np.mean(times))))
    return table


def loglog_slope(table) -> float:
    """Least-squares slope of log(seconds) against log(n)."""
    n, seconds = np.array(table, dtype=float).T
    return float(np.polyfit(np.log(n), np.log(seconds), 1)[0])
