"""Pairwise matrix construction and the centering schemes built on top of it.

Every statistic in :mod:`mvindep.stats` starts from one of the matrices
produced here: a Euclidean distance matrix, a Gaussian kernel matrix with a
median-distance bandwidth, and one of four centerings.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .errors import DegenerateBandwidth, InvalidData, SizeError


class Kind(enum.Enum):
    DISTANCE = "distance"
    KERNEL = "kernel"


class Scheme(enum.Enum):
    GLOBAL_MEAN = "global_mean"
    DOUBLE_H_CENTER = "double_h_center"
    UNBIASED = "unbiased"
    COLUMN_MEAN = "column_mean"


@dataclass(frozen=True)
class PairwiseMatrix:
    """An ``n x n`` matrix of distances or kernel values."""

    values: np.ndarray
    kind: Kind

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def permuted(self, perm: np.ndarray) -> "PairwiseMatrix":
        """Relabel the samples: entry ``(i, j)`` becomes ``(perm[i], perm[j])``."""
        return PairwiseMatrix(self.values[np.ix_(perm, perm)], self.kind)


@dataclass(frozen=True)
class CenteredMatrix:
    values: np.ndarray
    scheme: Scheme


def as_data_matrix(x, name: str = "x", min_rows: int = 2) -> np.ndarray:
    """Validate ``x`` and return it as a C-contiguous float64 ``(n, p)`` array.

    One-dimensional input is treated as a single column.
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise InvalidData(f"{name} must be a 1-D or 2-D array, got {arr.ndim}-D")
    if arr.shape[1] == 0:
        raise InvalidData(f"{name} has no columns")
    if not np.all(np.isfinite(arr)):
        raise InvalidData(f"{name} contains NaN or infinite entries")
    if arr.shape[0] < min_rows:
        raise SizeError(f"{name} needs at least {min_rows} rows, got {arr.shape[0]}")
    return np.ascontiguousarray(arr)


def euclidean_distances(x) -> PairwiseMatrix:
    """Euclidean distance matrix between the rows of ``x``.

    Each entry is computed from its own pair of rows, so the result is
    exactly symmetric and relabeling the rows of ``x`` relabels the matrix
    bit-for-bit.
    """
    x = as_data_matrix(x)
    if x.shape[1] == 1:
        col = x[:, 0]
        d = np.abs(col[:, None] - col[None, :])
    else:
        d = cdist(x, x, metric="euclidean")
    return PairwiseMatrix(np.ascontiguousarray(d), Kind.DISTANCE)


def median_bandwidth(distances: np.ndarray) -> float:
    """Median of the ``n(n-1)/2`` off-diagonal distances.

    Falls back to the median of the strictly positive distances when more
    than half the pairs coincide.
    """
    n = distances.shape[0]
    off = distances[np.triu_indices(n, k=1)]
    positive = off[off > 0]
    if positive.size == 0:
        raise DegenerateBandwidth("all pairwise distances are zero; bandwidth undefined")
    sigma = float(np.median(off))
    if sigma <= 0:
        sigma = float(np.median(positive))
    return sigma


def gaussian_kernel(x) -> PairwiseMatrix:
    """Gaussian kernel ``exp(-d^2 / (2 sigma^2))`` with ``sigma`` the median distance."""
    d = euclidean_distances(x).values
    sigma = median_bandwidth(d)
    k = np.exp(-(d * d) / (2.0 * sigma * sigma))
    return PairwiseMatrix(k, Kind.KERNEL)


def _values(m) -> np.ndarray:
    vals = m.values if isinstance(m, (PairwiseMatrix, CenteredMatrix)) else np.asarray(m, dtype=np.float64)
    if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
        raise InvalidData("pairwise matrix must be square")
    return vals


def global_mean_center(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if n < 2:
        raise SizeError("global-mean centering needs n >= 2")
    out = m - m.sum() / (n * (n - 1))
    np.fill_diagonal(out, 0.0)
    return out


def double_center(m: np.ndarray) -> np.ndarray:
    # H m H without forming H.
    row = m.mean(axis=1, keepdims=True)
    col = m.mean(axis=0, keepdims=True)
    return m - row - col + m.mean()


def unbiased_center(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if n < 4:
        raise SizeError(f"unbiased centering needs n >= 4, got {n}")
    row = m.sum(axis=1, keepdims=True)
    col = m.sum(axis=0, keepdims=True)
    out = m - row / (n - 2) - col / (n - 2) + m.sum() / ((n - 1) * (n - 2))
    np.fill_diagonal(out, 0.0)
    return out


def column_mean_center(m: np.ndarray) -> np.ndarray:
    """Subtract each column's mean over its off-diagonal entries; zero the diagonal."""
    n = m.shape[0]
    if n < 2:
        raise SizeError("column-mean centering needs n >= 2")
    col_mean = (m.sum(axis=0) - np.diag(m)) / (n - 1)
    out = m - col_mean[None, :]
    np.fill_diagonal(out, 0.0)
    return out


_SCHEMES = {
    Scheme.GLOBAL_MEAN: global_mean_center,
    Scheme.DOUBLE_H_CENTER: double_center,
    Scheme.UNBIASED: unbiased_center,
    Scheme.COLUMN_MEAN: column_mean_center,
}


def center(m, scheme: Scheme | str) -> CenteredMatrix:
    """Center a pairwise matrix with one of the four schemes.

    Parameters
    ----------
    m : PairwiseMatrix or (n, n) array_like
    scheme : Scheme or str
        ``global_mean`` (off-diagonal mean removed, Mantel),
        ``double_h_center`` (``H m H``), ``unbiased`` (U-centering, zero
        diagonal) or ``column_mean`` (off-diagonal column means removed,
        zero diagonal).
    """
    scheme = Scheme(scheme)
    return CenteredMatrix(_SCHEMES[scheme](_values(m)), scheme)
