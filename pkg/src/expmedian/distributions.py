"""Continuous distributions on [0, inf): density, CDF, quantile, sampling,
and one-sided density derivatives at the origin.

Models are frozen dataclasses, so instances are immutable, hashable and safe
to share across worker processes.  Samplers take an explicit numpy
``Generator``; callers own the stream and its seeding discipline.

Derivatives at zero are closed-form (series coefficients), never finite
differences, so they stay exact at orders where numerical differentiation
is hopeless.  Models without a closed form raise ``UnsupportedModelError``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special


class UnsupportedModelError(ValueError):
    """The model cannot supply closed-form density derivatives at zero."""


def _match(x, out):
    """Return a Python float for scalar input, the array otherwise."""
    if np.ndim(x) == 0:
        return float(out)
    return out


class DensityModel:
    """A distribution supported on [0, inf) with F(0) = 0.

    Subclasses implement ``pdf``, ``cdf``, ``quantile`` (all accepting
    scalars or arrays), ``sample(rng, size)``, and where closed forms
    exist, ``pdf_deriv_at_zero(k)`` giving the one-sided derivative
    f^(k)(0+).
    """

    label = "model"

    def pdf(self, x):
        raise NotImplementedError

    def cdf(self, x):
        raise NotImplementedError

    def quantile(self, p):
        raise NotImplementedError

    def sample(self, rng, size):
        raise NotImplementedError

    def pdf_deriv_at_zero(self, k: int) -> float:
        raise UnsupportedModelError(
            f"{self.label}: no closed-form density derivatives at zero"
        )


@dataclass(frozen=True)
class Exponential(DensityModel):
    """Exponential law with rate ``rate``: f(x) = rate * exp(-rate * x)."""

    rate: float = 1.0

    def __post_init__(self):
        if not self.rate > 0:
            raise ValueError(f"rate must be positive, got {self.rate}")

    @property
    def label(self):
        return f"exp:{_fmt(self.rate)}"

    def pdf(self, x):
        xx = np.asarray(x, dtype=float)
        out = np.where(xx < 0, 0.0, self.rate * np.exp(-self.rate * np.maximum(xx, 0.0)))
        return _match(x, out)

    def cdf(self, x):
        xx = np.asarray(x, dtype=float)
        out = np.where(xx < 0, 0.0, -np.expm1(-self.rate * np.maximum(xx, 0.0)))
        return _match(x, out)

    def quantile(self, p):
        pp = np.asarray(p, dtype=float)
        return _match(p, -np.log1p(-pp) / self.rate)

    def sample(self, rng, size):
        return rng.exponential(scale=1.0 / self.rate, size=size)

    def pdf_deriv_at_zero(self, k: int) -> float:
        # f^(k)(x) = rate * (-rate)^k * exp(-rate x)
        return (-1) ** k * self.rate ** (k + 1)


@dataclass(frozen=True)
class Weibull(DensityModel):
    """Weibull law with shape ``shape`` and unit scale.

    f(x) = shape * x^(shape-1) * exp(-x^shape).  For shape < 1 the density
    is unbounded at the origin; the builtins used elsewhere have shape >= 1.
    """

    shape: float = 2.0

    def __post_init__(self):
        if not self.shape > 0:
            raise ValueError(f"shape must be positive, got {self.shape}")

    @property
    def label(self):
        return f"weibull:{_fmt(self.shape)}"

    def pdf(self, x):
        xx = np.maximum(np.asarray(x, dtype=float), 0.0)
        with np.errstate(divide="ignore"):
            out = self.shape * xx ** (self.shape - 1.0) * np.exp(-(xx ** self.shape))
        return _match(x, np.where(np.asarray(x, dtype=float) < 0, 0.0, out))

    def cdf(self, x):
        xx = np.maximum(np.asarray(x, dtype=float), 0.0)
        return _match(x, -np.expm1(-(xx ** self.shape)))

    def quantile(self, p):
        pp = np.asarray(p, dtype=float)
        return _match(p, (-np.log1p(-pp)) ** (1.0 / self.shape))

    def sample(self, rng, size):
        return rng.weibull(self.shape, size=size)

    def pdf_deriv_at_zero(self, k: int) -> float:
        # Series of f: shape * sum_m (-1)^m x^(shape*(m+1)-1) / m!,
        # valid for integer shape only.
        theta = int(self.shape)
        if theta != self.shape:
            raise UnsupportedModelError(
                f"{self.label}: derivatives at zero require an integer shape"
            )
        if (k + 1) % theta != 0:
            return 0.0
        m = (k + 1) // theta - 1
        return float((-1) ** m * theta * (math.factorial(k) // math.factorial(m)))


_HALF_NORMAL_C = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class HalfNormal(DensityModel):
    """Half-normal law: f(x) = sqrt(2/pi) * exp(-x^2 / 2)."""

    @property
    def label(self):
        return "halfnormal"

    def pdf(self, x):
        xx = np.asarray(x, dtype=float)
        out = np.where(xx < 0, 0.0, _HALF_NORMAL_C * np.exp(-(xx * xx) / 2.0))
        return _match(x, out)

    def cdf(self, x):
        xx = np.maximum(np.asarray(x, dtype=float), 0.0)
        return _match(x, special.erf(xx / math.sqrt(2.0)))

    def quantile(self, p):
        pp = np.asarray(p, dtype=float)
        return _match(p, math.sqrt(2.0) * special.erfinv(pp))

    def sample(self, rng, size):
        return np.abs(rng.normal(size=size))

    def pdf_deriv_at_zero(self, k: int) -> float:
        # exp(-x^2/2) has only even-order terms: coefficient of x^(2m) is
        # (-1)^m / (2^m m!), so odd derivatives vanish at the origin.
        if k % 2 == 1:
            return 0.0
        m = k // 2
        return (-1) ** m * _HALF_NORMAL_C * (
            math.factorial(k) // (2 ** m * math.factorial(m))
        )


@dataclass(frozen=True)
class Gamma(DensityModel):
    """Gamma law with shape ``shape`` and unit rate."""

    shape: float = 2.0

    def __post_init__(self):
        if not self.shape > 0:
            raise ValueError(f"shape must be positive, got {self.shape}")

    @property
    def label(self):
        return f"gamma:{_fmt(self.shape)}"

    def pdf(self, x):
        xx = np.maximum(np.asarray(x, dtype=float), 0.0)
        with np.errstate(divide="ignore"):
            out = xx ** (self.shape - 1.0) * np.exp(-xx) / math.gamma(self.shape)
        return _match(x, np.where(np.asarray(x, dtype=float) < 0, 0.0, out))

    def cdf(self, x):
        xx = np.maximum(np.asarray(x, dtype=float), 0.0)
        return _match(x, special.gammainc(self.shape, xx))

    def quantile(self, p):
        pp = np.asarray(p, dtype=float)
        return _match(p, special.gammaincinv(self.shape, pp))

    def sample(self, rng, size):
        return rng.gamma(self.shape, size=size)

    def pdf_deriv_at_zero(self, k: int) -> float:
        # f(x) = x^(a-1) e^(-x) / (a-1)! for integer shape a; the series
        # starts at x^(a-1), so derivatives of lower order vanish.
        a = int(self.shape)
        if a != self.shape:
            raise UnsupportedModelError(
                f"{self.label}: derivatives at zero require an integer shape"
            )
        if k < a - 1:
            return 0.0
        j = k - (a - 1)
        return float(
            (-1) ** j * (math.factorial(k) // (math.factorial(j) * math.factorial(a - 1)))
        )


@dataclass(frozen=True)
class Uniform(DensityModel):
    """Uniform law on (0, 1)."""

    @property
    def label(self):
        return "uniform"

    def pdf(self, x):
        xx = np.asarray(x, dtype=float)
        return _match(x, np.where((xx < 0) | (xx > 1), 0.0, 1.0))

    def cdf(self, x):
        xx = np.asarray(x, dtype=float)
        return _match(x, np.clip(xx, 0.0, 1.0))

    def quantile(self, p):
        pp = np.asarray(p, dtype=float)
        return _match(p, pp)

    def sample(self, rng, size):
        return rng.random(size=size)

    def pdf_deriv_at_zero(self, k: int) -> float:
        # One-sided: f is constant 1 near 0+.
        return 1.0 if k == 0 else 0.0


def _fmt(v: float) -> str:
    if float(v).is_integer():
        return str(int(v))
    return repr(float(v))


def parse_distribution(text: str) -> DensityModel:
    """Parse a distribution spec string ``name[:param[,param]]``.

    Known names: ``exp`` (rate, default 1), ``weibull`` (shape),
    ``halfnormal``, ``gamma`` (shape), ``uniform``.  Unknown names or
    malformed parameters raise ``ValueError`` before any computation.
    """
    name, _, rest = text.strip().partition(":")
    name = name.lower()
    params = []
    if rest:
        try:
            params = [float(tok) for tok in rest.split(",")]
        except ValueError:
            raise ValueError(f"malformed distribution parameters in {text!r}") from None

    def expect(count):
        if len(params) != count:
            raise ValueError(
                f"distribution {name!r} takes {count} parameter(s), got {len(params)}"
            )

    if name == "exp":
        if not params:
            return Exponential(1.0)
        expect(1)
        return Exponential(params[0])
    if name == "weibull":
        expect(1)
        return Weibull(params[0])
    if name == "halfnormal":
        expect(0)
        return HalfNormal()
    if name == "gamma":
        expect(1)
        return Gamma(params[0])
    if name == "uniform":
        expect(0)
        return Uniform()
    raise ValueError(f"unknown distribution {text!r}")
