"""Dependence statistics between two paired samples.

Each statistic is split into a per-variable ``prepare`` step (distances,
centering, ranks, whatever depends on one sample only), a ``permute`` step
that relabels a prepared sample, and a joint ``evaluate``.  The public
functions (:func:`dcorr`, :func:`mgc`, ...) are ``evaluate(prepare(x),
prepare(y))``; the permutation engine reuses the prepared ``x`` and only
relabels the prepared ``y``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy import ndimage
from scipy.stats import rankdata

from . import _backend
from .core import (
    as_data_matrix,
    column_mean_center,
    double_center,
    euclidean_distances,
    gaussian_kernel,
    global_mean_center,
    unbiased_center,
)
from .errors import DimensionError, NumericalError, SizeError, SpecError, ZeroVariance


@dataclass(frozen=True)
class StatValue:
    """Value of a statistic, plus the optimal scale and local map for MGC."""

    value: float
    scale: tuple[int, int] | None = None
    local_map: np.ndarray | None = None

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class _Pairwise:
    """A prepared ``n x n`` matrix and a permutation-invariant scalar."""

    values: np.ndarray
    norm: float = 0.0
    order: np.ndarray | None = None

    def permuted(self, perm):
        values = self.values[np.ix_(perm, perm)]
        order = None
        if self.order is not None:
            inv = np.empty_like(perm)
            inv[perm] = np.arange(perm.size)
            order = np.ascontiguousarray(inv[self.order[perm]])
        return _Pairwise(values, self.norm, order)


@dataclass(frozen=True)
class _Rows:
    values: np.ndarray
    norm: Any = None
    extra: Any = None


class Statistic:
    """Base class; subclasses implement ``prepare`` and ``evaluate``."""

    name = ""
    signed = False
    min_n = 2

    def prepare(self, x) -> Any:
        raise NotImplementedError

    def evaluate(self, px, py) -> StatValue:
        raise NotImplementedError

    def permute(self, prepared, perm: np.ndarray):
        if isinstance(prepared, _Pairwise):
            return prepared.permuted(perm)
        if isinstance(prepared, _Rows):
            return _Rows(prepared.values[perm], prepared.norm, prepared.extra)
        return prepared[perm]

    def check_pair(self, x, y):
        x = as_data_matrix(x, "x")
        y = as_data_matrix(y, "y")
        if x.shape[0] != y.shape[0]:
            raise SizeError(f"x has {x.shape[0]} rows but y has {y.shape[0]}")
        if x.shape[0] < self.min_n:
            raise SizeError(f"{self.name} needs n >= {self.min_n}, got {x.shape[0]}")
        return x, y

    def __call__(self, x, y) -> StatValue:
        x, y = self.check_pair(x, y)
        return self.evaluate(self.prepare(x), self.prepare(y))

    def __repr__(self):
        return f"<statistic {self.name}>"


def _univariate(x) -> np.ndarray:
    x = as_data_matrix(x)
    if x.shape[1] != 1:
        raise DimensionError(f"statistic requires a single column, got {x.shape[1]}")
    return x[:, 0]


def _unit_centered(v: np.ndarray) -> np.ndarray:
    if np.ptp(v) == 0:
        raise ZeroVariance("column is constant")
    c = v - v.mean()
    return c / np.sqrt(np.dot(c, c))


class Pearson(Statistic):
    name = "pearson"
    signed = True

    def prepare(self, x):
        return _unit_centered(_univariate(x))

    def evaluate(self, px, py):
        return StatValue(float(np.clip(np.dot(px, py), -1.0, 1.0)))


class Spearman(Pearson):
    name = "spearman"

    def prepare(self, x):
        return _unit_centered(rankdata(_univariate(x), method="average"))


class Kendall(Statistic):
    """Kendall's tau-a, or tau-b when either variable has ties."""

    name = "kendall"
    signed = True

    def prepare(self, x):
        v = _univariate(x)
        n = v.size
        _, counts = np.unique(v, return_counts=True)
        tied_pairs = float(np.sum(counts * (counts - 1)) / 2)
        if tied_pairs == n * (n - 1) / 2:
            raise ZeroVariance("all values are tied")
        return _Pairwise(np.sign(v[:, None] - v[None, :]), tied_pairs)

    def evaluate(self, px, py):
        n = px.values.shape[0]
        n0 = n * (n - 1) / 2
        # each unordered pair appears twice in the full sign matrices
        concordance = float(np.dot(px.values.ravel(), py.values.ravel())) / 2
        if px.norm == 0 and py.norm == 0:
            return StatValue(concordance / n0)
        return StatValue(concordance / np.sqrt((n0 - px.norm) * (n0 - py.norm)))


class RV(Statistic):
    name = "rv"

    def prepare(self, x):
        x = as_data_matrix(x)
        xc = x - x.mean(axis=0)
        sxx = xc.T @ xc
        norm = float(np.sum(sxx * sxx))
        if norm == 0:
            raise ZeroVariance("centered data is all zero")
        return _Rows(xc, norm)

    def evaluate(self, px, py):
        sxy = px.values.T @ py.values
        return StatValue(float(np.sum(sxy * sxy) / np.sqrt(px.norm * py.norm)))


class CCA(Statistic):
    """First canonical correlation.

    The canonical directions come from the SVD of the whitened
    cross-covariance with a small ridge on each covariance; the returned
    value is the unregularized correlation of the two projections.
    """

    name = "cca"
    ridge = 1e-10

    def prepare(self, x):
        x = as_data_matrix(x)
        n, p = x.shape
        xc = x - x.mean(axis=0)
        cov = xc.T @ xc / (n - 1)
        reg = cov + self.ridge * np.trace(cov) / p * np.eye(p)
        evals, evecs = np.linalg.eigh(reg)
        if evals[0] <= 0:
            raise NumericalError("covariance is singular after regularization")
        whiten = (evecs / np.sqrt(evals)) @ evecs.T
        return _Rows(xc, cov, whiten)

    def evaluate(self, px, py):
        n = px.values.shape[0]
        sxy = px.values.T @ py.values / (n - 1)
        u, _, vt = np.linalg.svd(px.extra @ sxy @ py.extra)
        a = px.extra @ u[:, 0]
        b = py.extra @ vt[0]
        den = np.sqrt((a @ px.norm @ a) * (b @ py.norm @ b))
        if not den > 0:
            raise NumericalError("degenerate canonical direction")
        return StatValue(float(min(abs(a @ sxy @ b) / den, 1.0)))


class _CenteredInnerProduct(Statistic):
    """Shared shape of Mantel, Dcorr and Hsic: <Cx, Cy> over sqrt(<Cx,Cx><Cy,Cy>)."""

    normalize = True

    def pairwise(self, x) -> np.ndarray:
        return euclidean_distances(x).values

    def centered(self, m: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def scale(self, n: int) -> float:
        return 1.0

    def prepare(self, x):
        c = self.centered(self.pairwise(x))
        self_term = float(np.dot(c.ravel(), c.ravel())) / self.scale(c.shape[0])
        if self.normalize and self_term <= 0:
            raise ZeroVariance(f"{self.name}: self-statistic is {self_term}, data is constant")
        return _Pairwise(c, self_term)

    def evaluate(self, px, py):
        cov = float(np.dot(px.values.ravel(), py.values.ravel())) / self.scale(px.values.shape[0])
        if not self.normalize:
            return StatValue(cov)
        return StatValue(cov / np.sqrt(px.norm * py.norm))


class Mantel(_CenteredInnerProduct):
    name = "mantel"

    def centered(self, m):
        return global_mean_center(m)


class Dcorr(_CenteredInnerProduct):
    name = "dcorr"

    def __init__(self, normalize=True):
        self.normalize = normalize

    def centered(self, m):
        return double_center(m)

    def scale(self, n):
        return float(n * n)


class UDcorr(_CenteredInnerProduct):
    name = "udcorr"
    signed = True
    min_n = 4

    def __init__(self, normalize=True):
        self.normalize = normalize

    def centered(self, m):
        return unbiased_center(m)

    def scale(self, n):
        return float(n * (n - 3))


class Hsic(Dcorr):
    name = "hsic"

    def pairwise(self, x):
        return gaussian_kernel(x).values


class UHsic(UDcorr):
    name = "uhsic"

    def pairwise(self, x):
        return gaussian_kernel(x).values


class HHG(Statistic):
    name = "hhg"

    def prepare(self, x):
        d = euclidean_distances(x).values
        return _Pairwise(d, order=np.ascontiguousarray(np.argsort(d, axis=1), dtype=np.int64))

    def evaluate(self, px, py):
        return StatValue(float(_backend.hhg_statistic(px.values, py.values, px.order, py.order)))


def neighbor_ranks(d: np.ndarray) -> np.ndarray:
    """``r[i, j]`` = position of column ``j`` when row ``i`` is sorted ascending.

    Ties are broken by column index, so the diagonal zero gets rank 0 unless
    an earlier column is also at distance zero.
    """
    n = d.shape[0]
    order = np.argsort(d, axis=1, kind="stable")
    ranks = np.empty((n, n), dtype=np.int64)
    np.put_along_axis(ranks, order, np.broadcast_to(np.arange(n, dtype=np.int64), (n, n)), axis=1)
    return ranks


def local_correlation_map(dx: np.ndarray, dy: np.ndarray) -> np.ndarray:
    """All local correlations, ``out[k-1, l-1]`` for ``k, l = 1..n``."""
    cx = np.ascontiguousarray(column_mean_center(dx))
    cy = np.ascontiguousarray(column_mean_center(dy))
    return _backend.mgc_local_map(cx, cy, neighbor_ranks(dx), neighbor_ranks(dy))


def smooth_local_map(local: np.ndarray) -> tuple[float, tuple[int, int]]:
    """Pick the MGC statistic and its scale out of a local correlation map.

    Entries above ``max(2/n, -min(local))`` are kept; if their largest
    4-connected region has more than ``2n`` cells the statistic is the
    maximum over that region, otherwise it is the global entry ``(n, n)``.
    """
    n = local.shape[0]
    threshold = max(2.0 / n, -float(local.min()), 0.0)
    labels, count = ndimage.label(local > threshold)
    if count:
        sizes = np.bincount(labels.ravel())[1:]
        biggest = int(np.argmax(sizes)) + 1
        if sizes[biggest - 1] > 2 * n:
            masked = np.where(labels == biggest, local, -np.inf)
            k, l = np.unravel_index(int(np.argmax(masked)), masked.shape)
            return float(local[k, l]), (int(k) + 1, int(l) + 1)
    return float(local[n - 1, n - 1]), (n, n)


class MGC(Statistic):
    name = "mgc"
    min_n = 4

    def prepare(self, x):
        return _Pairwise(euclidean_distances(x).values)

    def evaluate(self, px, py):
        local = local_correlation_map(px.values, py.values)
        value, scale = smooth_local_map(local)
        return StatValue(value, scale, local)


STATISTICS: dict[str, Statistic] = {
    s.name: s
    for s in (
        Pearson(),
        RV(),
        CCA(),
        Kendall(),
        Spearman(),
        Mantel(),
        HHG(),
        Hsic(),
        Dcorr(),
        UDcorr(),
        MGC(),
    )
}


def get_statistic(name: str) -> Statistic:
    try:
        return STATISTICS[name]
    except KeyError:
        raise SpecError(
            f"unknown statistic {name!r}; choose one of: {', '.join(STATISTICS)}"
        ) from None


def pearson(x, y) -> StatValue:
    return STATISTICS["pearson"](x, y)


def spearman(x, y) -> StatValue:
    return STATISTICS["spearman"](x, y)


def kendall(x, y) -> StatValue:
    return STATISTICS["kendall"](x, y)


def rv(x, y) -> StatValue:
    return STATISTICS["rv"](x, y)


def cca(x, y) -> StatValue:
    return STATISTICS["cca"](x, y)


def mantel(x, y) -> StatValue:
    return STATISTICS["mantel"](x, y)


def hhg(x, y) -> StatValue:
    return STATISTICS["hhg"](x, y)


def mgc(x, y) -> StatValue:
    """Multiscale graph correlation with its optimal ``(k, l)`` and local map."""
    return STATISTICS["mgc"](x, y)


def dcov(x, y, unbiased: bool = False) -> StatValue:
    """Distance covariance; the unbiased form can be negative."""
    return (UDcorr(normalize=False) if unbiased else Dcorr(normalize=False))(x, y)


def dcorr(x, y, unbiased: bool = False) -> StatValue:
    return STATISTICS["udcorr" if unbiased else "dcorr"](x, y)


def hsic(x, y, unbiased: bool = False, normalize: bool = True) -> StatValue:
    """Hilbert-Schmidt independence criterion with a median-bandwidth Gaussian kernel.

    With ``normalize`` the covariance-style value is divided by the square
    root of the two self-statistics, giving 1 for ``hsic(x, x)``.
    """
    stat = UHsic(normalize) if unbiased else Hsic(normalize)
    return stat(x, y)
