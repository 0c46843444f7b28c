"""Numerical verification of the median-of-three equidistribution identities.

Three identities are covered, each equating a scaled-sum construction with
an order statistic of i.i.d. draws from the same model:

    T1:  X1/3 + X2/2                      =d  2nd of 3
    T2:  X0 + median(X1, X2, X3)          =d  3rd of 3
    T3:  median(X1, X2, X3) + X4/4        =d  3rd of 4

plus the scaled-spacings generalization ("conjecture" here):

    sum_{j=1}^{k} X_j / (n - j + 1)       =d  k-th of n

The left-hand densities are convolution integrals evaluated by adaptive
Simpson quadrature; the right-hand densities come in closed form from the
order-statistic formula.  The three convolution kernels carry their exact
scaling constants: 6 for T1 (3 f(3y) * 2 f(2(x-y))), 6 inside the T2
kernel (f(y) * 6 F(1-F) f at x-y), and 24 total for T3.

The conjecture case has a k-fold convolution on the left, so it is checked
by Monte Carlo sampling only, never by quadrature.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .distributions import DensityModel
from .orderstats import OrderStatSpec, order_stat_pdf, order_stat_quantile
from .quadrature import QuadratureError, integrate_on_grid

__all__ = [
    "CharacterizationSpec",
    "T1",
    "T2",
    "T3",
    "conjecture",
    "DensityCurve",
    "DistanceReport",
    "default_grid",
    "lhs_density",
    "rhs_density",
    "density_distance",
    "sample_lhs",
    "ks_two_sample",
    "QuadratureError",
]

_RHS_SPECS = {"t1": (2, 3), "t2": (3, 3), "t3": (3, 4)}


@dataclass(frozen=True)
class CharacterizationSpec:
    """One of the identities: t1, t2, t3, or conjecture(k, n)."""

    kind: str
    k: int | None = None
    n: int | None = None

    def __post_init__(self):
        if self.kind in _RHS_SPECS:
            if self.k is not None or self.n is not None:
                raise ValueError(f"{self.kind} takes no (k, n) arguments")
        elif self.kind == "conjecture":
            if self.k is None or self.n is None:
                raise ValueError("conjecture requires k and n")
            OrderStatSpec(self.k, self.n)  # validates 1 <= k <= n
        else:
            raise ValueError(f"unknown characterization {self.kind!r}")

    @property
    def rhs_spec(self) -> OrderStatSpec:
        if self.kind == "conjecture":
            return OrderStatSpec(self.k, self.n)
        return OrderStatSpec(*_RHS_SPECS[self.kind])

    @property
    def label(self) -> str:
        if self.kind == "conjecture":
            return f"conjecture:{self.k},{self.n}"
        return self.kind

    @classmethod
    def from_string(cls, text: str) -> "CharacterizationSpec":
        name, _, rest = text.strip().lower().partition(":")
        if name in _RHS_SPECS:
            if rest:
                raise ValueError(f"{name} takes no parameters, got {text!r}")
            return cls(name)
        if name == "conjecture":
            try:
                k_str, n_str = rest.split(",")
                return cls("conjecture", k=int(k_str), n=int(n_str))
            except (ValueError, TypeError):
                raise ValueError(
                    f"conjecture spec must look like 'conjecture:k,n', got {text!r}"
                ) from None
        raise ValueError(f"unknown characterization {text!r}")


T1 = CharacterizationSpec("t1")
T2 = CharacterizationSpec("t2")
T3 = CharacterizationSpec("t3")


def conjecture(k: int, n: int) -> CharacterizationSpec:
    """Scaled-spacings construction sum X_j/(n-j+1) against the k-th of n."""
    return CharacterizationSpec("conjecture", k=k, n=n)


@dataclass(frozen=True, eq=False)
class DensityCurve:
    """Density values tabulated on a grid, with quadrature metadata."""

    grid: np.ndarray
    values: np.ndarray
    quad_tol: float | None = None

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError("grid and values must be equal-length 1-d arrays")
        if grid.size and grid[0] < 0:
            raise ValueError("grid must be nonnegative")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if np.any(values < 0):
            raise ValueError("density values must be nonnegative")

    def cumulative(self) -> np.ndarray:
        """Trapezoid cumulative integral along the grid."""
        out = np.zeros_like(self.values)
        steps = np.diff(self.grid)
        out[1:] = np.cumsum(steps * (self.values[1:] + self.values[:-1]) / 2.0)
        return out

    def mass(self) -> float:
        """Total trapezoid integral over the grid."""
        return float(np.trapezoid(self.values, self.grid))

    def to_json_dict(self) -> dict:
        return {
            "grid": self.grid.tolist(),
            "values": self.values.tolist(),
            "quadTol": self.quad_tol,
        }

    def to_csv_text(self) -> str:
        lines = ["x,value"]
        lines.extend(f"{x!r},{v!r}" for x, v in zip(self.grid, self.values))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DistanceReport:
    """Sup and trapezoid-L2 distances between two curves on a shared grid."""

    sup_distance: float
    l2_distance: float
    grid_points: int
    x_min: float
    x_max: float
    quad_tols: tuple[float | None, float | None]

    def to_json_dict(self) -> dict:
        return {
            "supDistance": self.sup_distance,
            "l2Distance": self.l2_distance,
            "gridPoints": self.grid_points,
            "xMin": self.x_min,
            "xMax": self.x_max,
            "quadTols": list(self.quad_tols),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_csv_text(self) -> str:
        rows = [
            ("supDistance", repr(self.sup_distance)),
            ("l2Distance", repr(self.l2_distance)),
            ("gridPoints", str(self.grid_points)),
            ("xMin", repr(self.x_min)),
            ("xMax", repr(self.x_max)),
        ]
        return "\n".join(f"{k},{v}" for k, v in rows) + "\n"


def default_grid(
    spec: CharacterizationSpec,
    dist: DensityModel,
    points: int = 512,
    tail_prob: float = 1e-6,
) -> np.ndarray:
    """Uniform grid on [0, Q] with Q the right-side quantile at 1 - tail_prob."""
    if points < 2:
        raise ValueError(f"need at least 2 grid points, got {points}")
    if not 0 < tail_prob < 1:
        raise ValueError(f"tail_prob must be in (0, 1), got {tail_prob}")
    q = order_stat_quantile(spec.rhs_spec, dist, 1.0 - tail_prob)
    return np.linspace(0.0, float(q), points)


def _lhs_kernel(spec: CharacterizationSpec, dist: DensityModel):
    median23 = OrderStatSpec(2, 3)
    if spec.kind == "t1":
        return lambda y, x: 6.0 * dist.pdf(3.0 * y) * dist.pdf(2.0 * (x - y))
    if spec.kind == "t2":
        return lambda y, x: dist.pdf(y) * order_stat_pdf(median23, dist, x - y)
    if spec.kind == "t3":
        return lambda y, x: 4.0 * dist.pdf(4.0 * y) * order_stat_pdf(median23, dist, x - y)
    raise ValueError(
        f"{spec.label}: left-hand density is only available for t1/t2/t3 "
        "(the conjecture construction is checked by sampling)"
    )


def lhs_density(
    spec: CharacterizationSpec,
    dist: DensityModel,
    grid,
    quad_tol: float = 1e-9,
    max_depth: int = 48,
) -> DensityCurve:
    """Left-hand density on the grid, by adaptive convolution quadrature."""
    kernel = _lhs_kernel(spec, dist)
    values = integrate_on_grid(kernel, grid, tol=quad_tol, max_depth=max_depth)
    # Richardson correction can undershoot zero by a fraction of the
    # tolerance where the true density vanishes; clamp only that noise.
    tiny = values < 0
    if np.any(values[tiny] < -10.0 * quad_tol):
        worst = float(np.asarray(grid)[np.argmin(values)])
        raise QuadratureError(worst, f"negative density beyond tolerance at x={worst!r}")
    values = np.where(tiny, 0.0, values)
    return DensityCurve(grid=np.asarray(grid, dtype=float), values=values, quad_tol=quad_tol)


def rhs_density(spec: CharacterizationSpec, dist: DensityModel, grid) -> DensityCurve:
    """Right-hand (order statistic) density on the grid, in closed form."""
    grid = np.asarray(grid, dtype=float)
    return DensityCurve(grid=grid, values=order_stat_pdf(spec.rhs_spec, dist, grid))


def density_distance(a: DensityCurve, b: DensityCurve) -> DistanceReport:
    """Sup and trapezoid-weighted L2 distance between curves on one grid."""
    if not np.array_equal(a.grid, b.grid):
        raise ValueError("grid mismatch between density curves")
    diff = a.values - b.values
    sup = float(np.max(np.abs(diff))) if diff.size else 0.0
    l2 = float(np.sqrt(np.trapezoid(diff * diff, a.grid)))
    return DistanceReport(
        sup_distance=sup,
        l2_distance=l2,
        grid_points=int(a.grid.size),
        x_min=float(a.grid[0]),
        x_max=float(a.grid[-1]),
        quad_tols=(a.quad_tol, b.quad_tol),
    )


def sample_lhs(
    spec: CharacterizationSpec, dist: DensityModel, rng, m: int
) -> np.ndarray:
    """Draw m replicates of the left-hand construction.

    t1 consumes 2 i.i.d. draws per replicate, t2 and t3 consume 4, and
    conjecture(k, n) consumes k.  All component draws are independent.
    """
    if m < 1:
        raise ValueError(f"sample count must be >= 1, got m={m}")
    if spec.kind == "t1":
        draws = dist.sample(rng, (m, 2))
        return draws[:, 0] / 3.0 + draws[:, 1] / 2.0
    if spec.kind == "t2":
        draws = dist.sample(rng, (m, 4))
        return draws[:, 0] + np.median(draws[:, 1:4], axis=1)
    if spec.kind == "t3":
        draws = dist.sample(rng, (m, 4))
        return np.median(draws[:, 0:3], axis=1) + draws[:, 3] / 4.0
    weights = 1.0 / (spec.n - np.arange(1, spec.k + 1) + 1.0)
    draws = dist.sample(rng, (m, spec.k))
    return draws @ weights


def ks_two_sample(a, b) -> float:
    """Two-sample Kolmogorov-Smirnov distance sup_t |ECDF_a - ECDF_b|."""
    a = np.sort(np.asarray(a, dtype=float).ravel())
    b = np.sort(np.asarray(b, dtype=float).ravel())
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be nonempty")
    pooled = np.concatenate([a, b])
    ecdf_a = np.searchsorted(a, pooled, side="right") / a.size
    ecdf_b = np.searchsorted(b, pooled, side="right") / b.size
    return float(np.max(np.abs(ecdf_a - ecdf_b)))
