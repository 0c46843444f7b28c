"""Adaptive Simpson quadrature, batched over many integration problems.

Used to evaluate convolution integrals int_0^x kernel(y, x) dy on a whole
grid of x values at once: every active subinterval across all grid points
is refined in lock-step, so kernel evaluations happen in large vectorized
batches instead of one scalar call at a time.

Each interval is accepted once the classic Richardson estimate
|S2 - S1| <= 15 * eps holds (with eps halved per split) *and* a minimum
depth has been reached; the minimum depth guards against deceptive early
agreement on kernels with interior jumps.  An interval still failing its
estimate at the maximum depth raises :class:`QuadratureError` carrying the
grid point it belongs to.
"""

from __future__ import annotations

import numpy as np


class QuadratureError(RuntimeError):
    """Adaptive refinement exhausted its depth budget at grid point ``x``."""

    def __init__(self, x: float, message: str | None = None):
        self.x = x
        super().__init__(message or f"quadrature did not converge at x={x!r}")


def integrate_on_grid(
    kernel,
    xs,
    tol: float,
    max_depth: int = 48,
    min_depth: int = 6,
) -> np.ndarray:
    """Integrate kernel(y, x) over y in [0, x] for every x in ``xs``.

    ``kernel`` must accept equal-length arrays (y, x) and return an array.
    ``tol`` is the absolute tolerance per grid point.  Returns an array of
    integral values aligned with ``xs``.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 1:
        raise ValueError("grid must be one-dimensional")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    result = np.zeros_like(xs)

    active = np.nonzero(xs > 0.0)[0]
    if active.size == 0:
        return result

    # Struct-of-arrays state for every live subinterval.
    idx = active  # position in xs each interval contributes to
    x = xs[active]
    a = np.zeros_like(x)
    b = x.copy()
    mid = (a + b) / 2.0
    fa = kernel(a, x)
    fm = kernel(mid, x)
    fb = kernel(b, x)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    eps = np.full_like(x, tol)
    depth = np.zeros(x.shape, dtype=np.int64)

    while idx.size:
        m = (a + b) / 2.0
        lm = (a + m) / 2.0
        rm = (m + b) / 2.0
        flm = kernel(lm, x)
        frm = kernel(rm, x)
        s_left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        s_right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        s2 = s_left + s_right
        err = s2 - whole

        done = (np.abs(err) <= 15.0 * eps) & (depth >= min_depth)
        stuck = ~done & (depth >= max_depth)
        if np.any(stuck):
            raise QuadratureError(float(xs[idx[np.argmax(stuck)]]))

        if np.any(done):
            np.add.at(result, idx[done], s2[done] + err[done] / 15.0)

        keep = ~done
        half_eps = eps[keep] / 2.0
        child_depth = depth[keep] + 1
        # Left children [a, m] then right children [m, b].
        idx = np.concatenate([idx[keep], idx[keep]])
        x = np.concatenate([x[keep], x[keep]])
        a, b = (
            np.concatenate([a[keep], m[keep]]),
            np.concatenate([m[keep], b[keep]]),
        )
        fa, fm, fb = (
            np.concatenate([fa[keep], fm[keep]]),
            np.concatenate([flm[keep], frm[keep]]),
            np.concatenate([fm[keep], fb[keep]]),
        )
        whole = np.concatenate([s_left[keep], s_right[keep]])
        eps = np.concatenate([half_eps, half_eps])
        depth = np.concatenate([child_depth, child_depth])

    return result
