"""Shared numerical kernels.

Inverse normal CDF (rational approximation), normal scores, bracketed
root finding with automatic bracket expansion, and a grid-seeded
golden-section minimizer that tolerates the kinked / piecewise-flat
objectives produced by rank correlation coefficients.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .exceptions import BracketingError, InvalidInputError, NumericError

# Rational minimax coefficients for the inverse normal CDF (AS 241,
# PPND16 variant; absolute error well below 1e-15 on (0, 1)).
_A = (
    3.3871328727963666080e0,
    1.3314166789178437745e2,
    1.9715909503065514427e3,
    1.3731693765509461125e4,
    4.5921953931549871457e4,
    6.7265770927008700853e4,
    3.3430575583588128105e4,
    2.5090809287301226727e3,
)
_B = (
    1.0,
    4.2313330701600911252e1,
    6.8718700749205790830e2,
    5.3941960214247511077e3,
    2.1213794301586595867e4,
    3.9307895800092710610e4,
    2.8729085735721942674e4,
    5.2264952788528545610e3,
)
_C = (
    1.42343711074968357734e0,
    4.63033784615654529590e0,
    5.76949722146069140550e0,
    3.64784832476320460504e0,
    1.27045825245236838258e0,
    2.41780725177450611770e-1,
    2.27238449892691845833e-2,
    7.74545014278341407640e-4,
)
_D = (
    1.0,
    2.05319162663775882187e0,
    1.67638483018380384940e0,
    6.89767334985100004550e-1,
    1.48103976427480074590e-1,
    1.51986665636164571966e-2,
    5.47593808499534494600e-4,
    1.05075007164441684324e-9,
)
_E = (
    6.65790464350110377720e0,
    5.46378491116411436990e0,
    1.78482653991729133580e0,
    2.96560571828504891230e-1,
    2.65321895265761230930e-2,
    1.24266094738807843860e-3,
    2.71155556874348757815e-5,
    2.01033439929228813265e-7,
)
_F = (
    1.0,
    5.99832206555887937690e-1,
    1.36929880922735805310e-1,
    1.48753612908506148525e-2,
    7.86869131145613259100e-4,
    1.84631831751005468180e-5,
    1.42151175831644588870e-7,
    2.04426310338993978564e-15,
)


def _poly(coeffs, r):
    out = np.full_like(r, coeffs[-1])
    for c in coeffs[-2::-1]:
        out = out * r + c
    return out


def normal_quantile(p):
    """Inverse CDF of the standard normal distribution.

    Accepts a scalar or array of probabilities in the open interval (0, 1)
    and returns the matching quantiles. Scalar in, scalar out.

    Raises
    ------
    InvalidInputError
        If any probability lies outside (0, 1).
    """
    scalar = np.ndim(p) == 0
    arr = np.atleast_1d(np.asarray(p, dtype=float))
    if arr.size and not np.all((arr > 0.0) & (arr < 1.0)):
        raise InvalidInputError("probabilities must lie strictly inside (0, 1)")

    q = arr - 0.5
    central = np.abs(q) <= 0.425
    out = np.empty_like(arr)

    if np.any(central):
        qc = q[central]
        r = 0.180625 - qc * qc
        out[central] = qc * _poly(_A, r) / _poly(_B, r)

    if np.any(~central):
        qt = q[~central]
        pt = np.where(qt < 0.0, arr[~central], 1.0 - arr[~central])
        r = np.sqrt(-np.log(pt))
        near = r <= 5.0
        x = np.empty_like(r)
        if np.any(near):
            rn = r[near] - 1.6
            x[near] = _poly(_C, rn) / _poly(_D, rn)
        if np.any(~near):
            rf = r[~near] - 5.0
            x[~near] = _poly(_E, rf) / _poly(_F, rf)
        out[~central] = np.where(qt < 0.0, -x, x)

    if scalar:
        return float(out[0])
    return out


def normal_scores(n: int) -> np.ndarray:
    """Normal scores for a sample of size ``n``: quantiles at i/(n+1), i=1..n.

    Strictly increasing and antisymmetric; the middle element is 0 for odd
    ``n``. The upper half is mirrored from the lower half so the
    antisymmetry holds exactly in floating point. Converges to the expected
    standard-normal order statistics.
    """
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    half = n // 2
    lower = normal_quantile(np.arange(1, half + 1) / (n + 1.0)) if half else np.empty(0)
    middle = np.zeros(1 if n % 2 else 0)
    return np.concatenate([lower, middle, -lower[::-1]])


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_expansions: int = 60,
) -> float:
    """Solve f(s) = 0 by bisection on [lo, hi], expanding the bracket if needed.

    The midpoint of the final sign-change bracket is returned once its
    width is at most ``tol``. A zero value counts as the positive side, so
    on step functions that sit exactly at 0 over an interval (rank
    coefficients) the solve converges to the boundary between ``f >= 0``
    and ``f < 0`` regardless of the starting bracket, which keeps root
    values comparable across calls. If the initial endpoints lie on the
    same side, the bracket is repeatedly doubled about its center (up to
    ``max_expansions`` times) before giving up.

    Raises
    ------
    BracketingError
        If no sign change is found after all expansions.
    """
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise InvalidInputError(f"invalid bracket ({lo}, {hi})")
    if tol <= 0.0:
        raise InvalidInputError("tol must be positive")

    side_lo = f(lo) >= 0.0
    side_hi = f(hi) >= 0.0

    expansions = 0
    while side_lo == side_hi:
        if expansions >= max_expansions:
            raise BracketingError(
                f"no sign change in ({lo:.6g}, {hi:.6g}) after {expansions} expansions",
                lo=lo,
                hi=hi,
            )
        center = 0.5 * (lo + hi)
        half = hi - lo
        lo, hi = center - half, center + half
        side_lo = f(lo) >= 0.0
        side_hi = f(hi) >= 0.0
        expansions += 1

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # bracket at floating-point resolution
        if (f(mid) >= 0.0) == side_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def minimize_scalar(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    grid_points: int = 201,
    tol: float = 1e-8,
) -> tuple[float, float]:
    """Minimize ``g`` on [lo, hi]: coarse grid scan, then golden-section refine.

    The grid stage guards against the plateaus and kinks of rank-based
    objectives; golden-section then narrows the two grid cells adjacent to
    the best grid point down to width ``tol``. Ties on the grid resolve to
    the smallest argument, and the best point seen anywhere (grid or
    refinement) is returned, so the result never exceeds the best grid value.

    Returns
    -------
    (argmin, min) : tuple of float
    """
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise InvalidInputError(f"invalid bracket ({lo}, {hi})")
    if grid_points < 3:
        raise InvalidInputError("grid_points must be at least 3")
    if tol <= 0.0:
        raise InvalidInputError("tol must be positive")

    grid = np.linspace(lo, hi, grid_points)
    vals = np.empty(grid_points)
    for i, b in enumerate(grid):
        vals[i] = g(b)
    if not np.all(np.isfinite(vals)):
        bad = grid[int(np.flatnonzero(~np.isfinite(vals))[0])]
        raise NumericError(f"objective is not finite at {bad!r}")

    best_idx = int(np.argmin(vals))  # first occurrence: smallest argmin on ties
    best_x = float(grid[best_idx])
    best_val = float(vals[best_idx])

    a = float(grid[max(best_idx - 1, 0)])
    b = float(grid[min(best_idx + 1, grid_points - 1)])

    # Golden-section with one evaluation per step; f1 <= f2 shrinks toward
    # the left so plateau ties keep drifting to the smaller argument.
    m1 = b - _INVPHI * (b - a)
    m2 = a + _INVPHI * (b - a)
    f1 = g(m1)
    f2 = g(m2)

    def consider(xx, ff):
        nonlocal best_x, best_val
        if not math.isfinite(ff):
            raise NumericError(f"objective is not finite at {xx!r}")
        if ff < best_val:
            best_x, best_val = xx, ff

    while b - a > tol:
        consider(m1, f1)
        consider(m2, f2)
        if f1 <= f2:
            b, m2, f2 = m2, m1, f1
            m1 = b - _INVPHI * (b - a)
            f1 = g(m1)
        else:
            a, m1, f1 = m1, m2, f2
            m2 = a + _INVPHI * (b - a)
            f2 = g(m2)
    consider(m1, f1)
    consider(m2, f2)
    return float(best_x), float(best_val)
