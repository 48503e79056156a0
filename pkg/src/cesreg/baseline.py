"""Classical least-squares fit and the side-by-side comparison pipeline.

Both fits run on the same sample and the report collects the two slope
estimates plus four routes to the residual scale sigma_eps:

- ``sigma_eps_ls`` / ``sigma_eps_ces``: residual standard deviations of
  the two fits (divisor n-1 for both, so the columns are comparable).
- ``sigma_eps_ls2`` / ``sigma_eps_ms``: the sorted-residual slope at the
  least-squares slope / at the minimum-slope optimum, each multiplied by
  the normal-scores scale estimate of x.

The minimum-slope optimum is a lower bound of the objective wherever the
search looks, so ``sigma_ratio <= sigma_lsratio`` (and hence
``sigma_eps_ms <= sigma_eps_ls2``) holds on every sample up to optimizer
tolerance.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from ._validation import check_sample
from .correlation import check_cc
from .estimator import MSFit, fit_ms, sigma_ratio_at, sigma_x_ces
from .exceptions import CesError


@dataclass(frozen=True)
class LSFit:
    """Ordinary least-squares line with n-1 residual scale."""

    slope: float
    intercept: float
    residuals: np.ndarray
    sigma_eps: float
    sigma_x: float


def fit_ls(x, y) -> LSFit:
    """Least-squares fit of y on x.

    ``sigma_eps`` is the residual standard deviation with divisor n-1
    (not the regression-conventional n-2), matching the comparison
    convention used throughout the package.
    """
    x, y = check_sample(x, y)
    xc = x - x.mean()
    slope = float(xc @ (y - y.mean()) / (xc @ xc))
    intercept = float(y.mean() - slope * x.mean())
    residuals = y - slope * x - intercept
    return LSFit(
        slope=slope,
        intercept=intercept,
        residuals=residuals,
        sigma_eps=float(np.std(residuals, ddof=1)),
        sigma_x=float(np.std(x, ddof=1)),
    )


@dataclass(frozen=True)
class ComparisonReport:
    """The ten comparison quantities for one sample under one coefficient."""

    beta_ls: float
    beta_ms: float
    sigma_eps_ls: float
    sigma_eps_ces: float
    sigma_lsratio: float
    sigma_ratio: float
    sigma_eps_ls2: float
    sigma_eps_ms: float
    sigma_x_ls: float
    sigma_x_ces: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


FIELD_NAMES = tuple(ComparisonReport.__dataclass_fields__)


def _staged(stage: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except CesError as err:
        err.stage = stage
        raise


def compare(x, y, cc: str = "pearson", **fit_kwargs) -> ComparisonReport:
    """Run both fits on one sample and assemble the comparison report.

    Extra keyword arguments are forwarded to :func:`cesreg.fit_ms`.
    Component failures propagate with a ``stage`` attribute naming the
    step that raised.
    """
    cc = check_cc(cc)
    x, y = check_sample(x, y)
    ls: LSFit = _staged("least-squares fit", fit_ls, x, y)
    ms: MSFit = _staged("minimum-slope fit", fit_ms, x, y, cc=cc, **fit_kwargs)
    lsratio = _staged("ratio at LS slope", sigma_ratio_at, x, y, ls.slope, cc=cc)
    sx_ces = _staged("normal-scores scale", sigma_x_ces, x, cc=cc)
    return ComparisonReport(
        beta_ls=ls.slope,
        beta_ms=ms.slope,
        sigma_eps_ls=ls.sigma_eps,
        sigma_eps_ces=ms.sigma_eps,
        sigma_lsratio=lsratio,
        sigma_ratio=ms.sigma_ratio,
        sigma_eps_ls2=lsratio * sx_ces,
        sigma_eps_ms=ms.sigma_ratio * sx_ces,
        sigma_x_ls=ls.sigma_x,
        sigma_x_ces=sx_ces,
    )
