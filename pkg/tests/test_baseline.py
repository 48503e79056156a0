"""Tests for the least-squares fit and the comparison pipeline."""

import numpy as np
import pytest

from cesreg.baseline import FIELD_NAMES, compare, fit_ls
from cesreg.correlation import corr
from cesreg.exceptions import CesError, DegenerateInputError, InvalidInputError


def random_sample(rng, n=None):
    n = n or int(rng.integers(5, 80))
    x = rng.normal(0, rng.uniform(0.5, 3), n)
    y = rng.uniform(-2, 2) * x + rng.normal(0, rng.uniform(0.2, 2), n)
    return x, y


class TestFitLS:
    def test_hand_computed_micro(self):
        """Normal equations by hand: slope 3/2, intercept 7/3 - 3 = -2/3."""
        fit = fit_ls([1, 2, 3], [1, 2, 4])
        assert fit.slope == pytest.approx(1.5)
        assert fit.intercept == pytest.approx(-2.0 / 3.0)

    def test_exact_line(self):
        fit = fit_ls([1, 2, 3, 4], [4, 7, 10, 13])  # y = 3x + 1
        assert fit.slope == pytest.approx(3.0)
        assert fit.intercept == pytest.approx(1.0)
        assert fit.sigma_eps == pytest.approx(0.0, abs=1e-12)

    def test_constant_response(self):
        fit = fit_ls([1, 2, 3], [5, 5, 5])
        assert fit.slope == 0.0
        assert fit.intercept == 5.0

    def test_residuals_sum_to_zero_and_uncorrelated(self):
        rng = np.random.default_rng(81)
        for _ in range(30):
            x, y = random_sample(rng)
            fit = fit_ls(x, y)
            scale = max(1.0, float(np.abs(y).max()))
            assert abs(fit.residuals.sum()) <= 1e-9 * len(x) * scale
            assert corr("pearson", x, fit.residuals) == pytest.approx(0.0, abs=1e-9)

    def test_sigma_x_is_sample_sd(self):
        rng = np.random.default_rng(82)
        x, y = random_sample(rng, n=40)
        assert fit_ls(x, y).sigma_x == pytest.approx(float(np.std(x, ddof=1)))

    def test_constant_x_rejected(self):
        with pytest.raises(InvalidInputError):
            fit_ls([2, 2, 2], [1, 2, 3])


class TestCompare:
    def test_exact_line_all_zero(self):
        report = compare([1, 2, 3], [2, 4, 6])
        assert report.beta_ls == pytest.approx(2.0, abs=1e-6)
        assert report.beta_ms == pytest.approx(2.0, abs=1e-6)
        for name in ("sigma_eps_ls", "sigma_eps_ces", "sigma_lsratio",
                     "sigma_ratio", "sigma_eps_ls2", "sigma_eps_ms"):
            assert getattr(report, name) == pytest.approx(0.0, abs=1e-6)

    def test_worked_micro_sample(self):
        report = compare([1, 2, 3], [1, 2, 4])
        assert report.beta_ls == pytest.approx(1.5, abs=1e-6)
        assert report.beta_ms == pytest.approx(1.5, abs=1e-6)
        assert report.sigma_ratio == pytest.approx(0.25, abs=1e-6)
        assert report.sigma_lsratio == pytest.approx(0.25, abs=1e-6)

    def test_ls_residual_sd_never_above_ms(self):
        """The LS slope minimizes the mean-centered residual variance."""
        rng = np.random.default_rng(83)
        for _ in range(60):
            x, y = random_sample(rng)
            report = compare(x, y)
            assert report.sigma_eps_ls <= report.sigma_eps_ces + 1e-9 * max(
                1.0, report.sigma_eps_ls
            )

    def test_minimum_never_above_ls_ratio(self):
        rng = np.random.default_rng(84)
        for _ in range(60):
            x, y = random_sample(rng)
            report = compare(x, y)
            assert report.sigma_ratio <= report.sigma_lsratio + 1e-6

    def test_scaled_products(self):
        rng = np.random.default_rng(85)
        x, y = random_sample(rng, n=30)
        report = compare(x, y)
        assert report.sigma_eps_ms == pytest.approx(report.sigma_ratio * report.sigma_x_ces)
        assert report.sigma_eps_ls2 == pytest.approx(report.sigma_lsratio * report.sigma_x_ces)
        assert report.sigma_eps_ms <= report.sigma_eps_ls2 + 1e-6 * report.sigma_x_ces

    def test_deterministic_and_pure(self):
        rng = np.random.default_rng(86)
        x, y = random_sample(rng, n=25)
        assert compare(x, y, cc="kendall") == compare(x, y, cc="kendall")

    def test_as_dict_field_names(self):
        rng = np.random.default_rng(87)
        x, y = random_sample(rng, n=12)
        d = compare(x, y).as_dict()
        assert tuple(d) == FIELD_NAMES
        assert all(isinstance(v, float) for v in d.values())

    def test_stage_tagging_on_failure(self):
        """A coefficient that degenerates mid-fit surfaces the failing stage."""
        x = np.arange(1.0, 11.0)
        y = np.r_[np.zeros(9), 1.0]  # mostly tied: MAD of residuals vanishes
        with pytest.raises(CesError) as exc:
            compare(x, y, cc="mad")
        assert isinstance(exc.value, DegenerateInputError)
        assert exc.value.stage == "minimum-slope fit"
