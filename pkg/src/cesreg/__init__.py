"""Minimum-slope regression under pluggable correlation coefficients.

The fitted slope minimizes the slope of the independently sorted
residuals regressed on the sorted predictor, an estimation criterion any
correlation coefficient can drive. The package bundles the coefficient
family, the fit and its least-squares baseline, a normal-scores scale
estimator, and a seeded simulation harness for comparing the two methods.
"""

from .baseline import ComparisonReport, LSFit, compare, fit_ls
from .correlation import CC_KINDS, corr, midranks
from .estimator import (
    MinimumSlopeRegressor,
    MSFit,
    fit_ms,
    pearson_slope_closed_form,
    quartile_average,
    sigma_ratio_at,
    sigma_x_ces,
    slope_objective,
)
from .exceptions import (
    BracketingError,
    CampaignError,
    CesError,
    CsvFormatError,
    DegenerateInputError,
    InvalidInputError,
    NumericError,
)
from .numerics import find_root, minimize_scalar, normal_quantile, normal_scores
from .simulate import (
    BvnParams,
    SimConfig,
    SimSummary,
    Table2Result,
    Table2Row,
    derive_key,
    draw_sample,
    run_campaign,
    run_replicates,
    stream,
    table2_run,
)

__version__ = "0.1.0"

__all__ = [
    "BracketingError",
    "BvnParams",
    "CC_KINDS",
    "CampaignError",
    "CesError",
    "ComparisonReport",
    "CsvFormatError",
    "DegenerateInputError",
    "InvalidInputError",
    "LSFit",
    "MSFit",
    "MinimumSlopeRegressor",
    "NumericError",
    "SimConfig",
    "SimSummary",
    "Table2Result",
    "Table2Row",
    "compare",
    "corr",
    "derive_key",
    "draw_sample",
    "find_root",
    "fit_ls",
    "fit_ms",
    "midranks",
    "minimize_scalar",
    "normal_quantile",
    "normal_scores",
    "pearson_slope_closed_form",
    "quartile_average",
    "run_campaign",
    "run_replicates",
    "sigma_ratio_at",
    "sigma_x_ces",
    "slope_objective",
    "stream",
    "table2_run",
]
