"""Derivative-at-zero machinery: the exponential-forcing derivative
condition, the product kernels G = F*f and H = F^2*f, and series
reconstruction of the density from its derivatives at the origin.

The derivative condition states f^(k)(0) = (-1)^k f(0)^(k+1), where the
right-hand side is a *power* of f(0).  A density on [0, inf) satisfying it
for all k has Maclaurin series f(0) e^(-f(0) x), i.e. is exponential.

G and H derivatives at zero follow from the Leibniz product rule together
with F(0) = 0 and F^(j)(0) = f^(j-1)(0) for j >= 1:

    G^(k)(0) = sum_{j=1}^{k}   C(k,j) f^(j-1)(0) f^(k-j)(0)
    H^(k)(0) = sum_{s=2}^{k} sum_{j=1}^{s-1} k!/(j!(s-j)!(k-s)!)
                   * f^(j-1)(0) f^(s-j-1)(0) f^(k-s)(0)

For a model satisfying the derivative condition these collapse to

    G^(k)(0) = (-1)^(k-1) f(0)^(k+1) (2^k - 1)
    H^(k)(0) = (-1)^(k-2) f(0)^(k+1) (3^k - 2^(k+1) + 1)

The sums and closed forms are evaluated in exact rational arithmetic over
the model's (float, hence rational) derivative values and only converted to
float on return, so for models whose derivatives are exactly representable
the comparison holds with zero tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .distributions import DensityModel


def _derivs(dist: DensityModel, up_to: int) -> list[Fraction]:
    """Exact rational copies of f^(0..up_to)(0)."""
    return [Fraction(float(dist.pdf_deriv_at_zero(k))) for k in range(up_to + 1)]


@dataclass(frozen=True)
class ConditionReport:
    """Residuals |f^(k)(0) - (-1)^k f(0)^(k+1)| for k = 1..k_max."""

    k_max: int
    tol: float
    residuals: tuple[float, ...]

    @property
    def passed(self) -> bool:
        return all(res <= self.tol for res in self.residuals)

    def to_json_dict(self) -> dict:
        return {
            "kMax": self.k_max,
            "tol": self.tol,
            "residuals": [
                {"k": k, "residual": res}
                for k, res in enumerate(self.residuals, start=1)
            ],
            "pass": self.passed,
        }


def check_maclaurin_condition(
    dist: DensityModel, k_max: int, tol: float = 0.0
) -> ConditionReport:
    """Check f^(k)(0) = (-1)^k f(0)^(k+1) for k = 1..k_max.

    Both sides are evaluated as plain floats; for the exponential model the
    two expressions are computed identically, so the residual is exactly
    zero and tol = 0 is attainable.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    f0 = float(dist.pdf(0.0))
    residuals = []
    for k in range(1, k_max + 1):
        lhs = float(dist.pdf_deriv_at_zero(k))
        rhs = (-1) ** k * f0 ** (k + 1)
        residuals.append(abs(lhs - rhs))
    return ConditionReport(k_max=k_max, tol=tol, residuals=tuple(residuals))


def _g_deriv_frac(d: list[Fraction], k: int) -> Fraction:
    if k == 0:
        return Fraction(0)
    row = [math.comb(k, j) for j in range(k + 1)]
    return sum((row[j] * d[j - 1] * d[k - j] for j in range(1, k + 1)), Fraction(0))


def _h_deriv_frac(d: list[Fraction], k: int) -> Fraction:
    if k <= 1:
        return Fraction(0)
    total = Fraction(0)
    for s in range(2, k + 1):
        for j in range(1, s):
            coeff = math.comb(k, s) * math.comb(s, j)
            total += coeff * d[j - 1] * d[s - j - 1] * d[k - s]
    return total


def g_deriv_at_zero(dist: DensityModel, k: int) -> float:
    """Leibniz-sum value of (F*f)^(k)(0)."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    return float(_g_deriv_frac(_derivs(dist, max(k - 1, 0)), k))


def h_deriv_at_zero(dist: DensityModel, k: int) -> float:
    """Leibniz-sum value of (F^2*f)^(k)(0)."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    return float(_h_deriv_frac(_derivs(dist, max(k - 2, 0)), k))


def _f0_frac(dist: DensityModel) -> Fraction:
    return Fraction(float(dist.pdf(0.0)))


def g_closed_at_zero(dist: DensityModel, k: int) -> float:
    """Closed form (-1)^(k-1) f(0)^(k+1) (2^k - 1) for k >= 1."""
    if k < 1:
        raise ValueError(f"closed form defined for k >= 1, got {k}")
    return float((-1) ** (k - 1) * _f0_frac(dist) ** (k + 1) * (2 ** k - 1))


def h_closed_at_zero(dist: DensityModel, k: int) -> float:
    """Closed form (-1)^(k-2) f(0)^(k+1) (3^k - 2^(k+1) + 1) for k >= 1.

    The bracket vanishes at k = 1, matching H'(0) = 0.
    """
    if k < 1:
        raise ValueError(f"closed form defined for k >= 1, got {k}")
    return float((-1) ** (k - 2) * _f0_frac(dist) ** (k + 1) * (3 ** k - 2 ** (k + 1) + 1))


@dataclass(frozen=True)
class Lemma2Report:
    """Residuals of Leibniz sums against the G/H closed forms, k = 1..k_max."""

    k_max: int
    tol: float
    g_residuals: tuple[float, ...]
    h_residuals: tuple[float, ...]

    @property
    def passed(self) -> bool:
        return all(res <= self.tol for res in self.g_residuals + self.h_residuals)

    def to_json_dict(self) -> dict:
        return {
            "kMax": self.k_max,
            "tol": self.tol,
            "g": [
                {"k": k, "residual": res}
                for k, res in enumerate(self.g_residuals, start=1)
            ],
            "h": [
                {"k": k, "residual": res}
                for k, res in enumerate(self.h_residuals, start=1)
            ],
            "pass": self.passed,
        }


def check_lemma2_closed_forms(
    dist: DensityModel, k_max: int, tol: float = 0.0
) -> Lemma2Report:
    """Compare Leibniz-sum G/H derivatives at zero against their closed forms.

    Meaningful for models satisfying the derivative condition up to
    k_max - 2 (the caller's responsibility); residuals are computed in
    exact rational arithmetic, then converted.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    d = _derivs(dist, max(k_max - 1, 0))
    f0 = _f0_frac(dist)
    g_res = []
    h_res = []
    for k in range(1, k_max + 1):
        g_exact = _g_deriv_frac(d, k)
        g_closed = (-1) ** (k - 1) * f0 ** (k + 1) * (2 ** k - 1)
        g_res.append(float(abs(g_exact - g_closed)))
        h_exact = _h_deriv_frac(d, k)
        h_closed = (-1) ** (k - 2) * f0 ** (k + 1) * (3 ** k - 2 ** (k + 1) + 1)
        h_res.append(float(abs(h_exact - h_closed)))
    return Lemma2Report(
        k_max=k_max, tol=tol, g_residuals=tuple(g_res), h_residuals=tuple(h_res)
    )


def reconstruct_density(dist: DensityModel, order: int, x: float) -> float:
    """Truncated Maclaurin sum sum_{k=0}^{order} f^(k)(0) x^k / k!.

    For models satisfying the derivative condition this converges to
    f(0) e^(-f(0) x) as the order grows.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    total = 0.0
    term = 1.0  # x^k / k!, maintained incrementally
    for k in range(order + 1):
        if k > 0:
            term *= x / k
        total += float(dist.pdf_deriv_at_zero(k)) * term
    return total
