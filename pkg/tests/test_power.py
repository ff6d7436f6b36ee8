import numpy as np
import pytest

from mvindep.errors import InvalidData, SpecError
from mvindep.power import Axis, estimate_power, loglog_slope, wall_time_bench


def test_constant_statistic_never_rejects():
    curve = estimate_power(lambda x, y: 1.0, "linear", grid=[10, 20], replicates=20, n_permutations=20)
    assert curve.power == [0.0, 0.0]
    assert curve.stderr == [0.0, 0.0]


def test_linear_power_grows():
    curve = estimate_power("dcorr", "linear", "sample_size", [10, 50, 100], replicates=100, n_permutations=100, seed=3)
    assert curve.axis is Axis.SAMPLE_SIZE
    assert curve.power[0] <= curve.power[1] <= curve.power[2]
    assert curve.power[2] > 0.9


def test_power_reproducible_and_worker_invariant():
    kw = dict(grid=[20, 30], replicates=12, n_permutations=30, seed=8)
    a = estimate_power("hsic", "quadratic", **kw)
    b = estimate_power("hsic", "quadratic", **kw)
    c = estimate_power("hsic", "quadratic", workers=2, **kw)
    assert a == b == c


def test_dimension_axis():
    curve = estimate_power("dcorr", "joint_normal", "dimension", [1, 2], replicates=5, n_permutations=10)
    assert curve.grid == [1, 2] and len(curve.power) == 2


def test_power_validation():
    with pytest.raises(InvalidData):
        estimate_power("dcorr", "linear", grid=[50, 10])
    with pytest.raises(InvalidData):
        estimate_power("dcorr", "linear", alpha=1.5)
    with pytest.raises(SpecError):
        estimate_power("dcorr", "nosuch")
    with pytest.raises(ValueError):
        estimate_power("dcorr", "linear", axis="sideways")


def test_bench_single_row():
    table = wall_time_bench("dcorr", [100], repetitions=2)
    assert len(table) == 1 and table[0][0] == 100 and table[0][1] > 0


def test_bench_with_pvalue():
    table = wall_time_bench("pearson", [30, 60], repetitions=1, include_pvalue=True, n_permutations=20)
    assert [n for n, _ in table] == [30, 60]


def test_loglog_slope():
    table = [(n, 3e-9 * n**2) for n in (100, 200, 400)]
    assert loglog_slope(table) == pytest.approx(2.0)
