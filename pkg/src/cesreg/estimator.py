"""Minimum-slope regression.

For a candidate slope ``b`` the residuals ``y - b*x`` are sorted
independently of ``x`` and regressed, through a zero-correlation equation,
on the sorted ``x``. That inner slope ``s`` is nonnegative and shrinks as
the residuals become more uniform; the fitted slope is the ``b``
minimizing it. The minimized value estimates sigma_eps / sigma_x, and the
same zero-correlation construction against normal scores yields a scale
estimate for ``x`` itself.

Any coefficient from :mod:`cesreg.correlation` can drive the inner
equation; with ``pearson`` it has the closed form
``sum((x_(i) - xbar) * r_(i)) / sum((x_(i) - xbar)^2)`` over the sorted
vectors, which doubles as an independent oracle and as the fast path of
the fit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_sample, check_vector, is_constant
from .correlation import check_cc, zero_corr_evaluator
from .exceptions import InvalidInputError
from .numerics import find_root, minimize_scalar, normal_scores

DEFAULT_SEARCH_BRACKET = (-5.0, 5.0)  # outer slope search
DEFAULT_SLOPE_BRACKET = (-4.0, 4.0)  # inner zero-correlation solve
DEFAULT_RATIO_BRACKET = (0.0, 12.0)  # same solve at a known slope
DEFAULT_SCALE_BRACKET = (0.0, 15.0)  # normal-scores scale solve
DEFAULT_GRID_POINTS = 201
DEFAULT_TOL = 1e-8

# Rank coefficients make the inner objective a step function of s; the
# root is then an interval and chasing it below 1e-8 buys nothing.
_ROOT_TOL = {"pearson": 1e-10}


def _root_tol(cc: str) -> float:
    return _ROOT_TOL.get(cc, 1e-8)


def _zero_corr_slope(cc, base, response, bracket, tol, make_f=None) -> float:
    """The s >= 0 solving corr(cc, base, response - s*base) = 0.

    Both vectors ascending. A constant response short-circuits to 0, and a
    constant ``response - s*base`` marks the exact zero-correlation point,
    which the evaluator scores as 0 rather than rejecting as degenerate.
    ``make_f`` lets a fit reuse one profiled evaluator across many solves.
    """
    if response[-1] == response[0]:
        return 0.0
    if make_f is None:
        make_f = zero_corr_evaluator(cc, base)
    s = find_root(make_f(response), bracket[0], bracket[1], tol=tol)
    if -10.0 * tol < s < 0.0:
        return 0.0  # root-location noise around an exact zero
    return s


def slope_objective(
    x,
    y,
    b: float,
    cc: str = "pearson",
    bracket: tuple[float, float] = DEFAULT_SLOPE_BRACKET,
    tol: float | None = None,
) -> float:
    """Slope of the sorted residuals ``y - b*x`` regressed on sorted ``x``.

    This is the quantity the minimum-slope fit minimizes over ``b``; it is
    nonnegative for every ``b`` because both vectors are sorted ascending.
    Exactly constant residuals give 0.
    """
    cc = check_cc(cc)
    x, y = check_sample(x, y)
    xs = np.sort(x)
    rs = np.sort(y - b * x)
    return _zero_corr_slope(cc, xs, rs, bracket, tol if tol is not None else _root_tol(cc))


def pearson_slope_closed_form(x, y, b: float) -> float:
    """Closed form of ``slope_objective`` under the Pearson coefficient.

    ``sum((x_(i) - xbar) * r_(i)) / sum((x_(i) - xbar)^2)`` with r the
    sorted residual vector. Used as the oracle in tests and as the fast
    path of the Pearson fit.
    """
    x, y = check_sample(x, y)
    xs = np.sort(x)
    rs = np.sort(y - b * x)
    w = xs - xs.mean()
    return float(max(w @ rs / (w @ w), 0.0))


def sigma_ratio_at(
    x,
    y,
    b: float,
    cc: str = "pearson",
    bracket: tuple[float, float] = DEFAULT_RATIO_BRACKET,
    tol: float | None = None,
) -> float:
    """``slope_objective`` evaluated at an externally supplied slope.

    Exposed for pipeline clarity: with the least-squares slope it gives the
    ratio estimate the minimum-slope optimum is compared against.
    """
    return slope_objective(x, y, b, cc=cc, bracket=bracket, tol=tol)


def sigma_x_ces(
    x,
    cc: str = "pearson",
    bracket: tuple[float, float] = DEFAULT_SCALE_BRACKET,
    tol: float | None = None,
) -> float:
    """Scale estimate for ``x``: zero-correlation slope of sorted x on normal scores.

    Scale-equivariant and location-invariant; approaches the population
    standard deviation of normal data as the sample grows.
    """
    cc = check_cc(cc)
    x = check_vector(x, "x", min_len=2)
    if is_constant(x):
        raise InvalidInputError("x is constant; its scale estimate is degenerate")
    e = normal_scores(x.size)
    return _zero_corr_slope(cc, e, np.sort(x), bracket, tol if tol is not None else _root_tol(cc))


def quartile_average(v) -> float:
    """Average of the first and third empirical quartiles.

    Quantiles interpolate linearly between order statistics at index
    h = (n - 1) p + 1. Serves as the location statistic for the fit
    intercept.
    """
    v = check_vector(v, "v")
    return float(0.5 * (np.quantile(v, 0.25) + np.quantile(v, 0.75)))


@dataclass(frozen=True)
class MSFit:
    """Result of a minimum-slope fit.

    ``sigma_ratio`` is the minimized objective (an estimate of
    sigma_eps / sigma_x); ``sigma_eps`` is the standard deviation of the
    residuals ``y - slope*x`` with divisor n-1. ``near_edge`` flags an
    argmin within 1% of the search bracket, where the reported slope may
    be clipped.
    """

    cc: str
    slope: float
    intercept: float
    sigma_ratio: float
    residuals: np.ndarray
    sigma_eps: float
    bracket: tuple[float, float]
    near_edge: bool


def fit_ms(
    x,
    y,
    cc: str = "pearson",
    bracket: tuple[float, float] = DEFAULT_SEARCH_BRACKET,
    grid_points: int = DEFAULT_GRID_POINTS,
    tol: float = DEFAULT_TOL,
    inner_bracket: tuple[float, float] = DEFAULT_SLOPE_BRACKET,
    inner_tol: float | None = None,
) -> MSFit:
    """Fit the minimum-slope line: minimize ``slope_objective`` over ``b``.

    The intercept is the quartile average of the residuals at the fitted
    slope. For ``pearson`` the objective is evaluated through its closed
    form, which matches the root solve to well below ``tol``.
    """
    cc = check_cc(cc)
    x, y = check_sample(x, y)
    xs = np.sort(x)
    itol = inner_tol if inner_tol is not None else _root_tol(cc)

    if cc == "pearson":
        w = xs - xs.mean()
        sxx = w @ w

        def g(b: float) -> float:
            return max(w @ np.sort(y - b * x) / sxx, 0.0)

    else:
        make_f = zero_corr_evaluator(cc, xs)

        def g(b: float) -> float:
            return _zero_corr_slope(
                cc, xs, np.sort(y - b * x), inner_bracket, itol, make_f=make_f
            )

    slope, sigma_ratio = minimize_scalar(
        g, bracket[0], bracket[1], grid_points=grid_points, tol=tol
    )
    residuals = y - slope * x
    width = bracket[1] - bracket[0]
    near_edge = min(slope - bracket[0], bracket[1] - slope) < 0.01 * width
    return MSFit(
        cc=cc,
        slope=slope,
        intercept=quartile_average(residuals),
        sigma_ratio=sigma_ratio,
        residuals=residuals,
        sigma_eps=float(np.std(residuals, ddof=1)),
        bracket=(float(bracket[0]), float(bracket[1])),
        near_edge=near_edge,
    )


def _as_1d_feature(X) -> np.ndarray:
    """Accept a 1-D array or a single-column 2-D array as the predictor."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise InvalidInputError(
                f"expected a single predictor column, got shape {X.shape}"
            )
        X = X[:, 0]
    return X


class MinimumSlopeRegressor(RegressorMixin, BaseEstimator):
    """Simple linear regression through the minimum-slope criterion.

    Drop-in scikit-learn style estimator around :func:`fit_ms`.

    Parameters
    ----------
    cc : str, default="pearson"
        Correlation coefficient driving the fit; one of
        :data:`cesreg.correlation.CC_KINDS`. The rank-based kinds give a
        robust line.
    bracket : tuple of float, default=(-5, 5)
        Search interval for the slope.
    grid_points : int, default=201
        Coarse-grid resolution of the slope search.
    tol : float, default=1e-8
        Width at which the slope search stops refining.

    Attributes
    ----------
    slope_ : float
    intercept_ : float
    sigma_ratio_ : float
        Minimized objective, estimating sigma_eps / sigma_x.
    sigma_eps_ : float
        Standard deviation (n-1 divisor) of the fit residuals.
    residuals_ : ndarray

    Examples
    --------
    >>> reg = MinimumSlopeRegressor(cc="pearson")
    >>> reg.fit([[1.0], [2.0], [3.0]], [2.0, 4.0, 6.0]).slope_
    2.0
    """

    def __init__(
        self,
        cc: str = "pearson",
        bracket: tuple[float, float] = DEFAULT_SEARCH_BRACKET,
        grid_points: int = DEFAULT_GRID_POINTS,
        tol: float = DEFAULT_TOL,
    ):
        self.cc = cc
        self.bracket = bracket
        self.grid_points = grid_points
        self.tol = tol

    def fit(self, X, y):
        x = _as_1d_feature(X)
        result = fit_ms(
            x,
            y,
            cc=self.cc,
            bracket=self.bracket,
            grid_points=self.grid_points,
            tol=self.tol,
        )
        self.result_ = result
        self.slope_ = result.slope
        self.intercept_ = result.intercept
        self.sigma_ratio_ = result.sigma_ratio
        self.sigma_eps_ = result.sigma_eps
        self.residuals_ = result.residuals
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "slope_")
        return self.intercept_ + self.slope_ * _as_1d_feature(X)
