"""Densities, CDFs, quantiles, and samplers for order statistics of i.i.d.
samples drawn from a :class:`~expmedian.distributions.DensityModel`.

The k-th order statistic of a sample of size n has density

    n! / ((k-1)! (n-k)!) * F(x)^(k-1) * (1 - F(x))^(n-k) * f(x)

and CDF equal to the binomial tail sum over at least k successes at
probability F(x).  Sampling draws the full n-sample and selects by sorting,
which keeps the construction distribution-generic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .distributions import DensityModel, _match


@dataclass(frozen=True)
class OrderStatSpec:
    """Rank k (1-based) within a sample of size n."""

    k: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"sample size must be >= 1, got n={self.n}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"rank out of range: k={self.k} not in 1..{self.n}")


def order_stat_pdf(spec: OrderStatSpec, dist: DensityModel, x):
    """Density of the k-th of n i.i.d. draws, evaluated at x (scalar or array)."""
    coeff = spec.k * math.comb(spec.n, spec.k)
    F = np.asarray(dist.cdf(x), dtype=float)
    f = np.asarray(dist.pdf(x), dtype=float)
    out = coeff * F ** (spec.k - 1) * (1.0 - F) ** (spec.n - spec.k) * f
    return _match(x, out)


def order_stat_cdf(spec: OrderStatSpec, dist: DensityModel, x):
    """CDF of the k-th of n i.i.d. draws: P(at least k of n are <= x)."""
    F = np.asarray(dist.cdf(x), dtype=float)
    total = np.zeros_like(F)
    for i in range(spec.k, spec.n + 1):
        total += math.comb(spec.n, i) * F ** i * (1.0 - F) ** (spec.n - i)
    return _match(x, np.clip(total, 0.0, 1.0))


def order_stat_quantile(spec: OrderStatSpec, dist: DensityModel, p):
    """Quantile of the k-th of n i.i.d. draws.

    Uses the beta representation of the order-statistic CDF: the value is
    F^{-1}(B^{-1}(p; k, n-k+1)) with B the regularized incomplete beta.
    """
    u = special.betaincinv(spec.k, spec.n - spec.k + 1, np.asarray(p, dtype=float))
    return dist.quantile(_match(p, u))


def sample_order_stat(spec: OrderStatSpec, dist: DensityModel, rng, m: int):
    """Draw m independent copies of the k-th of n i.i.d. draws.

    Each replicate draws the full n-sample and selects the k-th smallest.
    Deterministic given (rng state, spec, m).
    """
    if m < 1:
        raise ValueError(f"sample count must be >= 1, got m={m}")
    draws = dist.sample(rng, (m, spec.n))
    return np.sort(draws, axis=1)[:, spec.k - 1]
