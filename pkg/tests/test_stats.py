import numpy as np
import pytest

import oracles
from mvindep import stats
from mvindep.errors import DegenerateBandwidth, DimensionError, SizeError, SpecError, ZeroVariance
from mvindep.stats import STATISTICS

UNIVARIATE = {"pearson", "kendall", "spearman"}


def pair(rng, n=12, p=2, q=3, name=None):
    if name in UNIVARIATE:
        p = q = 1
    x = rng.normal(size=(n, p))
    y = x[:, :1] ** 2 + 0.5 * rng.normal(size=(n, q))
    return x, y


# --- Pearson / Spearman / Kendall -------------------------------------------


def test_pearson_exact_lines():
    assert stats.pearson([1, 2, 3], [2, 4, 6]).value == pytest.approx(1.0, abs=1e-15)
    assert stats.pearson([1, 2, 3], [3, 2, 1]).value == pytest.approx(-1.0, abs=1e-15)


def test_pearson_hand_value():
    # centered x = (-1.5, -.5, .5, 1.5), y = (-1.75, .25, -.75, 2.25)
    assert stats.pearson([1, 2, 3, 4], [1, 3, 2, 5]).value == pytest.approx(5.5 / np.sqrt(5 * 8.75), abs=1e-15)


def test_pearson_errors():
    with pytest.raises(ZeroVariance):
        stats.pearson([1, 1, 1], [1, 2, 3])
    with pytest.raises(DimensionError):
        stats.pearson(np.ones((4, 2)), [1, 2, 3, 4])


def test_kendall_extremes():
    assert stats.kendall([1, 2, 3], [1, 2, 3]).value == 1.0
    assert stats.kendall([1, 2, 3], [3, 2, 1]).value == -1.0


def test_kendall_with_ties():
    # pairs: 4 concordant, 0 discordant, one tie in each variable -> 4 / sqrt(5 * 5)
    assert stats.kendall([1, 2, 2, 3], [1, 2, 3, 3]).value == pytest.approx(0.8, abs=1e-15)
    assert oracles.kendall([1, 2, 2, 3], [1, 2, 3, 3]) == pytest.approx(0.8, abs=1e-15)


def test_kendall_all_tied():
    with pytest.raises(ZeroVariance):
        stats.kendall([2, 2, 2], [1, 2, 3])


def test_spearman_examples(rng):
    x = rng.normal(size=10)
    assert stats.spearman(x, np.exp(x)).value == pytest.approx(1.0, abs=1e-14)
    assert stats.spearman([1, 2, 3], [9, 4, 1]).value == pytest.approx(-1.0, abs=1e-15)
    # rank differences (1, 1, 1, 1, 0): 1 - 6 * 4 / (5 * 24)
    assert stats.spearman([1, 2, 3, 4, 5], [2, 1, 4, 3, 5]).value == pytest.approx(0.8, abs=1e-14)


def test_spearman_ties_use_average_ranks():
    x, y = [1, 2, 2, 3, 5], [3, 1, 4, 4, 2]
    assert stats.spearman(x, y).value == pytest.approx(oracles.spearman(x, y), abs=1e-14)


# --- RV / CCA ----------------------------------------------------------------


def test_rv_is_squared_pearson(rng):
    x, y = rng.normal(size=(15, 1)), rng.normal(size=(15, 1))
    assert stats.rv(x, y).value == pytest.approx(stats.pearson(x, y).value ** 2, abs=1e-12)


def test_rv_self_and_oracle(rng):
    x = rng.normal(size=(10, 2))
    y = rng.normal(size=(10, 3))
    assert stats.rv(x, x).value == pytest.approx(1.0, abs=1e-14)
    assert stats.rv(x, y).value == pytest.approx(oracles.rv(x, y), abs=1e-12)


def test_cca_univariate(rng):
    x = rng.normal(size=(20, 1))
    y = -0.3 * x + rng.normal(size=(20, 1))
    assert stats.cca(x, y).value == pytest.approx(abs(stats.pearson(x, y).value), abs=1e-10)


def test_cca_exact_linear_map(rng):
    x = rng.normal(size=(30, 3))
    a = np.array([[1.0, 2.0, 0.0], [0.0, 1.0, -1.0], [0.5, 0.0, 3.0]])
    assert stats.cca(x, x @ a).value == pytest.approx(1.0, abs=1e-8)


def test_cca_matches_direct_maximization(rng):
    x = rng.normal(size=(20, 2))
    y = x @ np.array([[0.3, -0.2], [0.1, 0.4]]) + rng.normal(size=(20, 2))
    value = stats.cca(x, y).value
    assert value == pytest.approx(oracles.cca_power_iteration(x, y), abs=1e-6)
    # the dense grid can only undershoot the maximum
    grid = oracles.cca_grid_2d(x, y)
    assert grid <= value + 1e-12
    assert value - grid < 1e-4


def test_cca_constant_column():
    from mvindep.errors import NumericalError

    with pytest.raises(NumericalError):
        stats.cca(np.ones((6, 1)), np.arange(6.0))


# --- Mantel / Dcorr / HSIC ---------------------------------------------------


def test_mantel_self_and_oracle(rng):
    x, y = rng.normal(size=(8, 2)), rng.normal(size=(8, 2))
    assert stats.mantel(x, x).value == pytest.approx(1.0, abs=1e-14)
    assert stats.mantel(x, y).value == pytest.approx(oracles.mantel(x, y), abs=1e-12)


def test_mantel_depends_only_on_distances(rng):
    x = rng.normal(size=(8, 2))
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert stats.mantel(x, x @ rot + 3.0).value == pytest.approx(1.0, abs=1e-12)


def test_mantel_constant():
    with pytest.raises(ZeroVariance):
        stats.mantel(np.ones((5, 1)), np.arange(5.0))


def test_dcorr_self_affine_and_oracle(rng):
    x = rng.normal(size=(10, 3))
    y = rng.normal(size=(10, 2))
    assert stats.dcorr(x, x).value == pytest.approx(1.0, abs=1e-14)
    u = rng.normal(size=10)
    assert stats.dcorr(u, -2.5 * u + 4).value == pytest.approx(1.0, abs=1e-10)
    assert stats.dcov(x, y).value == pytest.approx(oracles.dcov(x, y), abs=1e-12)
    assert stats.dcorr(x, y).value == pytest.approx(oracles.dcorr(x, y), rel=1e-10)


def test_udcorr_oracle_and_sign(rng):
    x, y = rng.normal(size=(9, 2)), rng.normal(size=(9, 1))
    assert stats.dcorr(x, y, unbiased=True).value == pytest.approx(oracles.udcorr(x, y), rel=1e-10)
    values = [stats.dcorr(rng.normal(size=8), rng.normal(size=8), unbiased=True).value for _ in range(40)]
    assert min(values) < 0  # unbiased form is not clipped at zero


def test_udcorr_needs_four():
    with pytest.raises(SizeError):
        stats.dcorr([1, 2, 3], [3, 1, 2], unbiased=True)


def test_hsic_self_and_oracle(rng):
    x, y = rng.normal(size=(9, 2)), rng.normal(size=(9, 2))
    assert stats.hsic(x, x).value == pytest.approx(1.0, abs=1e-14)
    assert stats.hsic(x, y).value == pytest.approx(oracles.hsic(x, y), rel=1e-10)
    assert stats.hsic(x, y, unbiased=True).value == pytest.approx(oracles.uhsic(x, y), rel=1e-10)


def test_hsic_trace_equals_entrywise_sum(rng):
    from mvindep.core import double_center, gaussian_kernel

    x, y = rng.normal(size=(11, 2)), rng.normal(size=(11, 1))
    kx, ky = gaussian_kernel(x).values, gaussian_kernel(y).values
    entrywise = np.sum(double_center(kx) * double_center(ky)) / 11**2
    assert stats.hsic(x, y, normalize=False).value == pytest.approx(oracles.hsic_trace(kx, ky), abs=1e-12)
    assert entrywise == pytest.approx(oracles.hsic_trace(kx, ky), abs=1e-12)


def test_hsic_biased_nonnegative():
    for seed in range(50):
        r = np.random.default_rng(seed)
        assert stats.hsic(r.normal(size=(10, 2)), r.normal(size=(10, 1)), normalize=False).value >= 0


def test_hsic_constant_data():
    with pytest.raises(DegenerateBandwidth):
        stats.hsic(np.ones((5, 1)), np.arange(5.0))


# --- HHG ---------------------------------------------------------------------


def test_hhg_three_points_is_zero(rng):
    assert stats.hhg(rng.normal(size=(3, 2)), rng.normal(size=(3, 1))).value == 0.0


def test_hhg_hand_built_n5():
    x = np.array([[0.0], [1.0], [3.0], [4.5], [7.0]])
    y = np.array([[2.0], [0.0], [1.0], [5.0], [4.0]])
    assert stats.hhg(x, y).value == pytest.approx(oracles.hhg(x, y), rel=1e-12)


def test_hhg_ties_fall_in_le_cell():
    x = np.array([0.0, 1.0, 2.0, 3.0, 4.0, 5.0])
    y = np.array([0.0, 1.0, 0.0, 1.0, 0.0, 1.0])
    assert stats.hhg(x, y).value == pytest.approx(oracles.hhg(x, y), rel=1e-12)


def test_hhg_detects_linear_dependence():
    wins = 0
    for seed in range(100):
        r = np.random.default_rng(seed)
        x = r.normal(size=20)
        y = x + 0.3 * r.normal(size=20)
        wins += stats.hhg(x, y).value > stats.hhg(x, r.permutation(y)).value
    assert wins >= 95


# --- MGC ---------------------------------------------------------------------


def test_mgc_global_scale_equals_column_centered_correlation(rng):
    from mvindep.core import column_mean_center, euclidean_distances

    x, y = rng.normal(size=(12, 2)), rng.normal(size=(12, 1))
    local = stats.mgc(x, y).local_map
    cx = column_mean_center(euclidean_distances(x).values)
    cy = column_mean_center(euclidean_distances(y).values)
    expected = np.sum(cx * cy) / np.sqrt(np.sum(cx * cx) * np.sum(cy * cy))
    assert local[-1, -1] == pytest.approx(expected, abs=1e-10)


def test_mgc_self(rng):
    x = rng.normal(size=(15, 2))
    result = stats.mgc(x, x)
    assert result.value == pytest.approx(1.0, abs=1e-12)
    k, l = result.scale
    assert 1 <= k <= 15 and 1 <= l <= 15


def test_mgc_linear_matches_exhaustive_map():
    r = np.random.default_rng(3)
    x = r.uniform(-1, 1, size=10)
    y = x + 0.1 * r.normal(size=10)
    result = stats.mgc(x, y)
    np.testing.assert_allclose(result.local_map, oracles.local_map(x, y), atol=1e-10)
    value, scale = oracles.mgc(x, y)
    assert result.value == pytest.approx(value, abs=1e-10)
    assert result.scale == scale


def test_mgc_first_row_is_zero(rng):
    # k = 1 keeps only the zeroed diagonal, so the self-normalizer vanishes
    local = stats.mgc(rng.normal(size=8), rng.normal(size=8)).local_map
    assert np.all(local[0] == 0) and np.all(local[:, 0] == 0)


def test_smoothing_falls_back_to_global_scale():
    local = np.full((6, 6), -0.5)
    local[-1, -1] = 0.1
    assert stats.smooth_local_map(local) == (0.1, (6, 6))


# --- invariants over every statistic -----------------------------------------


@pytest.mark.parametrize("name", list(STATISTICS))
def test_matches_oracle(name, rng):
    direct = {
        "pearson": oracles.pearson,
        "spearman": oracles.spearman,
        "kendall": oracles.kendall,
        "rv": oracles.rv,
        "cca": oracles.cca_power_iteration,
        "mantel": oracles.mantel,
        "hhg": oracles.hhg,
        "hsic": oracles.hsic,
        "dcorr": oracles.dcorr,
        "udcorr": oracles.udcorr,
        "mgc": lambda a, b: oracles.mgc(a, b)[0],
    }[name]
    x, y = pair(rng, n=9, name=name)
    tol = 1e-6 if name == "cca" else 1e-10
    assert STATISTICS[name](x, y).value == pytest.approx(direct(x, y), rel=tol, abs=1e-12)


@pytest.mark.parametrize("name", list(STATISTICS))
def test_symmetry(name):
    for seed in range(20):
        x, y = pair(np.random.default_rng(seed), n=10, name=name)
        a, b = STATISTICS[name](x, y).value, STATISTICS[name](y, x).value
        assert a == pytest.approx(b, abs=1e-10 * max(1.0, abs(a)))


@pytest.mark.parametrize("name", list(STATISTICS))
def test_row_permutation_invariance(name, rng):
    x, y = pair(rng, n=11, name=name)
    perm = rng.permutation(11)
    a, b = STATISTICS[name](x, y).value, STATISTICS[name](x[perm], y[perm]).value
    assert a == pytest.approx(b, abs=1e-10 * max(1.0, abs(a)))


@pytest.mark.parametrize("name", ["mantel", "hhg", "hsic", "dcorr", "udcorr", "mgc", "rv", "cca"])
def test_translation_invariance(name, rng):
    x, y = pair(rng, n=11, name=name)
    a = STATISTICS[name](x, y).value
    b = STATISTICS[name](x + rng.normal(size=(1, x.shape[1])) * 10, y).value
    assert a == pytest.approx(b, abs=1e-9 * max(1.0, abs(a)))


def test_scale_relations(rng):
    x, y = rng.normal(size=15), rng.normal(size=15)
    for c in (0.01, 3.0, 1e4):
        assert stats.pearson(c * x, y).value == pytest.approx(stats.pearson(x, y).value, abs=1e-10)
        assert stats.dcorr(c * x, y).value == pytest.approx(stats.dcorr(x, y).value, abs=1e-10)


def test_kendall_tau_b_equals_tau_a_without_ties(rng):
    x, y = rng.normal(size=12), rng.normal(size=12)
    kendall = stats.Kendall()
    px, py = kendall.prepare(x), kendall.prepare(y)
    n0 = 12 * 11 / 2
    tau_a = np.sum(px.values * py.values) / 2 / n0
    assert kendall.evaluate(px, py).value == pytest.approx(tau_a, abs=1e-15)


@pytest.mark.parametrize("name", list(STATISTICS))
def test_prepared_permutation_matches_recomputation(name, rng):
    x, y = pair(rng, n=10, name=name)
    s = STATISTICS[name]
    px, py = s.prepare(x), s.prepare(y)
    for _ in range(5):
        perm = rng.permutation(10)
        fast = s.evaluate(px, s.permute(py, perm)).value
        assert fast == pytest.approx(s(x, y[perm]).value, abs=1e-12 * max(1.0, abs(fast)))


def test_unknown_statistic_lists_names():
    with pytest.raises(SpecError, match="pearson, rv, cca"):
        stats.get_statistic("nosuch")


def test_size_mismatch():
    with pytest.raises(SizeError):
        stats.dcorr(np.zeros((10, 1)), np.zeros((9, 1)))
