"""Multivariate independence and k-sample testing.

Eleven dependence statistics, permutation p-values, twenty simulated
dependence structures and Monte Carlo power estimation.
"""
from ._backend import BACKEND
from .core import center, euclidean_distances, gaussian_kernel
from .errors import (
    DegenerateBandwidth,
    DimensionError,
    InvalidData,
    MvindepError,
    NumericalError,
    ParseError,
    SizeError,
    SpecError,
    ZeroVariance,
)
from .inference import TestResult, ksample_test, ksample_transform, permutation_test
from .power import PowerCurve, estimate_power, wall_time_bench
from .simulations import SimulationSpec, list_simulations, simulate
from .stats import (
    STATISTICS,
    StatValue,
    cca,
    dcorr,
    dcov,
    hhg,
    hsic,
    kendall,
    mantel,
    mgc,
    pearson,
    rv,
    spearman,
)

__version__ = "0.1.0"
