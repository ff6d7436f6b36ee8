"""Twenty seeded dependence structures for power and level studies.

Draw order within one call is fixed: the ``X`` block first, then any
auxiliary ``U``/``V`` variables, then the noise ``eps``.  Unless a structure
declares its own noise law, ``eps`` is standard normal with one draw per
sample and output dimension.  The weight vector is ``w_d = 1/d``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import SpecError


class Kind(enum.Enum):
    LINEAR = "linear"
    EXPONENTIAL = "exponential"
    CUBIC = "cubic"
    JOINT_NORMAL = "joint_normal"
    STEP_FUNCTION = "step_function"
    QUADRATIC = "quadratic"
    W_SHAPE = "w_shape"
    SPIRAL = "spiral"
    UNCORRELATED_BERNOULLI = "uncorrelated_bernoulli"
    LOGARITHMIC = "logarithmic"
    FOURTH_ROOT = "fourth_root"
    SINE_4PI = "sine_4pi"
    SINE_16PI = "sine_16pi"
    SQUARE = "square"
    DIAMOND = "diamond"
    TWO_PARABOLAS = "two_parabolas"
    CIRCLE = "circle"
    ELLIPSE = "ellipse"
    MULTIPLICATIVE_NOISE = "multiplicative_noise"
    MULTIMODAL_INDEPENDENCE = "multimodal_independence"


# Kinds whose y lives in R^p; all others return a single y column.
_MULTIVARIATE_Y = {
    Kind.JOINT_NORMAL,
    Kind.LOGARITHMIC,
    Kind.SINE_4PI,
    Kind.SINE_16PI,
    Kind.SQUARE,
    Kind.DIAMOND,
    Kind.MULTIPLICATIVE_NOISE,
}


def weights(p: int) -> np.ndarray:
    return 1.0 / np.arange(1, p + 1)


@dataclass(frozen=True)
class SimulationSpec:
    kind: Kind
    n: int
    p: int = 1
    kappa: float = 1.0
    seed: int = 0

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", Kind(self.kind))
        except ValueError:
            raise SpecError(
                f"unknown simulation {self.kind!r}; choose one of: "
                + ", ".join(k.value for k in Kind)
            ) from None
        if int(self.n) != self.n or self.n < 3:
            raise SpecError(f"n must be an integer >= 3, got {self.n}")
        if int(self.p) != self.p or self.p < 1:
            raise SpecError(f"p must be an integer >= 1, got {self.p}")
        if not (np.isfinite(self.kappa) and self.kappa >= 0):
            raise SpecError(f"kappa must be finite and >= 0, got {self.kappa}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise SpecError(f"seed must be a non-negative integer, got {self.seed}")

    @property
    def q(self) -> int:
        return self.p if self.kind in _MULTIVARIATE_Y else 1

    @property
    def w(self) -> np.ndarray:
        return weights(self.p)


@dataclass(frozen=True)
class SimulatedPair:
    x: np.ndarray
    y: np.ndarray
    spec: SimulationSpec


def list_simulations() -> list[tuple[str, str, str]]:
    """``(name, x signature, y signature)`` for every structure."""
    return [
        (k.value, "R^p", "R^p" if k in _MULTIVARIATE_Y else "R") for k in Kind
    ]


def _uniform_x(rng, n, p, low=-1.0, high=1.0):
    return rng.uniform(low, high, size=(n, p))


def _linear(rng, n, p, kappa, w):
    x = _uniform_x(rng, n, p)
    eps = rng.standard_normal(n)
    return x, x @ w + kappa * eps


def _exponential(rng, n, p, kappa, w):
    x = _uniform_x(rng, n, p, 0.0, 3.0)
    eps = rng.standard_normal(n)
    return x, np.exp(x @ w) + 10 * kappa * eps


def _cubic(rng, n, p, kappa, w):
    x = _uniform_x(rng, n, p)
    eps = rng.standard_normal(n)
    t = x @ w - 1.0 / 3.0
    return x, 128 * t**3 + 48 * t**2 - 12 * t + 80 * kappa * eps


def _joint_normal(rng, n, p, kappa, w):
    rho = 1.0 / (2 * p)
    cov = np.block(
        [
            [np.eye(p), rho * np.ones((p, p))],
            [rho * np.ones((p, p)), (1 + 0.5 * kappa) * np.eye(p)],
        ]
    )
    xy = rng.multivariate_normal(np.zeros(2 * p), cov, size=n)
    return xy[:, :p], xy[:, p:]


def _step_function(rng, n, p, kappa, w):
    # noise enters without a kappa factor in this structure
    x = _uniform_x(rng, n, p)
    eps = rng.standard_normal(n)
    return x, (x @ w > 0).astype(np.float64) + eps


def _quadratic(rng, n, p, kappa, w):
    x = _uniform_x(rng, n, p)
    eps = rng.standard_normal(n)
    return x, (x @ w) ** 2 + 0.5 * kappa * eps


def _w_shape(rng, n, p, kappa, w):
    x = _uniform_x(rng, n, p)
    u = _uniform_x(rng, n, p)
    eps = rng.standard_normal(n)
    return x, 4 * (((x @ w) ** 2 - 0.5) ** 2 + (u @ w) / 500) + 0.5 * kappa * eps


def _spiral(rng, n, p, kappa, w):
    u = rng.uniform(0.0, 5.0, size=n)
    eps = rng.standard_normal(n)
    x = np.empty((n, p))
    base = u * np.sin(np.pi * u)
    cos = np.cos(np.pi * u)
    for d in range(1, p):
        x[:, d - 1] = base * cos**d
    x[:, p - 1] = u * cos**p
    return x, base + 0.4 * p * eps


def _uncorrelated_bernoulli(rng, n, p, kappa, w):
    x = rng.binomial(1, 0.5, size=(n, p)) + 0.5 * rng.standard_normal((n, p))
    u = rng.binomial(1, 0.5, size=n)
    eps = rng.standard_normal(n)
    return x, (2 * u - 1) * (x @ w) + 0.5 * eps


def _logarithmic(rng, n, p, kappa, w):
    x = rng.standard_normal((n, p))
    eps = rng.standard_normal((n, p))
    return x, 2 * np.log2(np.abs(x)) + 3 * kappa * eps


def _fourth_root(rng, n, p, kappa, w):
    x = _uniform_x(rng, n, p)
    eps = rng.standard_normal(n)
    return x, np.abs(x @ w) ** 0.25 + kappa / 4 * eps


def _sine(theta, noise):
    def draw(rng, n, p, kappa, w):
        u = rng.uniform(-1.0, 1.0, size=n)
        v = rng.standard_normal((n, p))
        x = u[:, None] + 0.02 * p * v
        eps = rng.standard_normal((n, p))
        return x, np.sin(theta * x) + noise * kappa * eps

    return draw


def _rotated_square(theta):
    def draw(rng, n, p, kappa, w):
        u = rng.uniform(-1.0, 1.0, size=n)
        v = rng.uniform(-1.0, 1.0, size=n)
        eps = rng.standard_normal((n, p))
        x = (u * np.cos(theta) + v * np.sin(theta))[:, None] + 0.05 * p * eps
        y = np.repeat((-u * np.sin(theta) + v * np.cos(theta))[:, None], p, axis=1)
        return x, y

    return draw


def _two_parabolas(rng, n, p, kappa, w):
    x = _uniform_x(rng, n, p)
    u = rng.binomial(1, 0.5, size=n)
    eps = rng.uniform(0.0, 1.0, size=n)
    return x, ((x @ w) ** 2 + 2 * kappa * eps) * (u - 0.5)


def _circle(radius):
    def draw(rng, n, p, kappa, w):
        u = rng.uniform(-1.0, 1.0, size=(n, p))
        eps = rng.standard_normal((n, p))
        cos_prod = np.cumprod(np.cos(np.pi * u), axis=1)
        x = np.empty((n, p))
        for d in range(1, p):
            x[:, d - 1] = radius * (np.sin(np.pi * u[:, d]) * cos_prod[:, d - 1] + 0.4 * eps[:, d - 1])
        x[:, p - 1] = radius * (cos_prod[:, p - 1] + 0.4 * eps[:, p - 1])
        return x, np.sin(np.pi * u[:, 0])

    return draw


def _multiplicative_noise(rng, n, p, kappa, w):
    x = rng.standard_normal((n, p))
    u = rng.standard_normal((n, p))
    return x, u * x


def _multimodal_independence(rng, n, p, kappa, w):
    u = rng.standard_normal((n, p))
    u_b = rng.binomial(1, 0.5, size=(n, p))
    v = rng.standard_normal(n)
    v_b = rng.binomial(1, 0.5, size=n)
    return u / 3 + 2 * u_b - 1, v / 3 + 2 * v_b - 1


_GENERATORS = {
    Kind.LINEAR: _linear,
    Kind.EXPONENTIAL: _exponential,
    Kind.CUBIC: _cubic,
    Kind.JOINT_NORMAL: _joint_normal,
    Kind.STEP_FUNCTION: _step_function,
    Kind.QUADRATIC: _quadratic,
    Kind.W_SHAPE: _w_shape,
    Kind.SPIRAL: _spiral,
    Kind.UNCORRELATED_BERNOULLI: _uncorrelated_bernoulli,
    Kind.LOGARITHMIC: _logarithmic,
    Kind.FOURTH_ROOT: _fourth_root,
    Kind.SINE_4PI: _sine(4 * np.pi, 1.0),
    Kind.SINE_16PI: _sine(16 * np.pi, 0.5),
    Kind.SQUARE: _rotated_square(-np.pi / 8),
    Kind.DIAMOND: _rotated_square(np.pi / 4),
    Kind.TWO_PARABOLAS: _two_parabolas,
    Kind.CIRCLE: _circle(1.0),
    Kind.ELLIPSE: _circle(5.0),
    Kind.MULTIPLICATIVE_NOISE: _multiplicative_noise,
    Kind.MULTIMODAL_INDEPENDENCE: _multimodal_independence,
}


def simulate(spec: SimulationSpec | None = None, **kwargs) -> SimulatedPair:
    """Draw one ``(x, y)`` sample.

    Pass a :class:`SimulationSpec` or its fields as keywords, e.g.
    ``simulate(kind="linear", n=100, p=3, kappa=0, seed=1)``.
    """
    if spec is None:
        spec = SimulationSpec(**kwargs)
    rng = np.random.default_rng(spec.seed)
    x, y = _GENERATORS[spec.kind](rng, spec.n, spec.p, spec.kappa, spec.w)
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(np.reshape(y, (spec.n, -1)), dtype=np.float64)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise SpecError(f"{spec.kind.value} produced non-finite values for {spec}")
    return SimulatedPair(x, y, spec)
