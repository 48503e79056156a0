"""Seeded bivariate-normal sampling and replicate campaigns.

Reproducibility contract: every replicate derives its own counter-based
stream (Philox keyed by a splitmix64 mix of the campaign seed and the
replicate index), normal variates come from the inverse-CDF transform of
open-interval uniforms, and aggregation runs in replicate order. Results
are therefore identical across platforms, repeated runs and thread
counts.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .baseline import FIELD_NAMES, ComparisonReport, compare, fit_ls
from .correlation import check_cc
from .estimator import fit_ms, sigma_ratio_at, sigma_x_ces
from .exceptions import CampaignError, CesError, InvalidInputError
from .numerics import normal_quantile

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class BvnParams:
    """Bivariate-normal parameter set with zero means.

    The conditional regression of y on x has slope
    ``beta = rho * sigma_y / sigma_x`` and residual scale
    ``sigma_eps = sigma_y * sqrt(1 - rho^2)``.
    """

    rho: float
    sigma_x: float
    sigma_y: float

    def __post_init__(self):
        if not -1.0 < self.rho < 1.0:
            raise InvalidInputError(f"rho must lie in (-1, 1), got {self.rho}")
        if not (self.sigma_x > 0.0 and self.sigma_y > 0.0):
            raise InvalidInputError("sigma_x and sigma_y must be positive")

    @property
    def beta(self) -> float:
        return self.rho * self.sigma_y / self.sigma_x

    @property
    def sigma_eps(self) -> float:
        return self.sigma_y * math.sqrt(1.0 - self.rho * self.rho)


# Parameter family of the one-sample multi-coefficient comparison.
TABLE2_DEFAULT_PARAMS = BvnParams(rho=0.5727, sigma_x=1.5403, sigma_y=2.1541)
TABLE2_DEFAULT_N = 25

# Coefficient roster of that comparison (spearman is not part of it).
TABLE2_CCS = ("pearson", "gdcc", "kendall", "gini", "absolute", "mad")


@dataclass(frozen=True)
class SimConfig:
    params: BvnParams
    n: int
    nsim: int
    seed: int
    cc: str = "pearson"

    def __post_init__(self):
        if self.n < 3:
            raise InvalidInputError(f"n must be >= 3, got {self.n}")
        if self.nsim < 1:
            raise InvalidInputError(f"nsim must be >= 1, got {self.nsim}")
        if not 0 <= self.seed <= _MASK64:
            raise InvalidInputError("seed must fit in 64 unsigned bits")
        object.__setattr__(self, "cc", check_cc(self.cc))


def derive_key(seed: int, index: int) -> int:
    """Stream key for one replicate: splitmix64 finalizer over (seed, index).

    A pure 64-bit mix, so replicate streams depend only on the campaign
    seed and the replicate index, never on execution order.
    """
    z = (seed + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def stream(key: int) -> np.random.Generator:
    """Counter-based uniform stream for the given 64-bit key."""
    return np.random.Generator(np.random.Philox(key=key))


def normal_draws(rng: np.random.Generator, size: int) -> np.ndarray:
    """Standard-normal variates via inverse CDF of open-interval uniforms.

    52-bit integers offset by half a step give uniforms strictly inside
    (0, 1), keeping the quantile transform total.
    """
    z = rng.integers(0, 1 << 52, size=size, dtype=np.int64)
    return normal_quantile((z + 0.5) * 2.0**-52)


def draw_sample(
    params: BvnParams, n: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """One bivariate-normal sample via the conditional construction.

    x is N(0, sigma_x^2); y = beta*x + eps with eps N(0, sigma_eps^2).
    Identical stream state gives an identical sample.
    """
    if n < 3:
        raise InvalidInputError(f"n must be >= 3, got {n}")
    z = normal_draws(rng, 2 * n)
    x = params.sigma_x * z[:n]
    y = params.beta * x + params.sigma_eps * z[n:]
    return x, y


@dataclass(frozen=True)
class SimSummary:
    """Per-quantity means and standard errors over a campaign's replicates."""

    config: SimConfig
    means: dict[str, float]
    stderrs: dict[str, float]


def run_replicates(config: SimConfig, threads: int = 1) -> list[ComparisonReport]:
    """All per-replicate comparison reports, in replicate order.

    A failing replicate aborts the campaign with its index and stream key
    so the offending sample can be regenerated.
    """

    def one(i: int) -> ComparisonReport:
        key = derive_key(config.seed, i)
        x, y = draw_sample(config.params, config.n, stream(key))
        try:
            return compare(x, y, cc=config.cc)
        except CesError as err:
            raise CampaignError(
                f"replicate {i} (stream key {key:#018x}) failed: {err}",
                replicate=i,
                key=key,
            ) from err

    if threads <= 1:
        return [one(i) for i in range(config.nsim)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, range(config.nsim)))


def summarize(config: SimConfig, reports: list[ComparisonReport]) -> SimSummary:
    means: dict[str, float] = {}
    stderrs: dict[str, float] = {}
    nsim = len(reports)
    for name in FIELD_NAMES:
        vals = np.array([getattr(r, name) for r in reports])
        means[name] = float(vals.mean())
        stderrs[name] = (
            float(vals.std(ddof=1) / math.sqrt(nsim)) if nsim > 1 else 0.0
        )
    return SimSummary(config=config, means=means, stderrs=stderrs)


def run_campaign(config: SimConfig, threads: int = 1) -> SimSummary:
    """Run ``config.nsim`` independent replicates and aggregate their reports."""
    return summarize(config, run_replicates(config, threads=threads))


@dataclass(frozen=True)
class Table2Row:
    """One coefficient's line of the one-sample comparison grid."""

    cc: str
    beta_ces: float | None = None
    sigma_eps_ces: float | None = None
    sigma_eps_ms: float | None = None
    sigma_eps_ls2: float | None = None
    error: str | None = None


@dataclass(frozen=True)
class Table2Result:
    beta_ls: float
    sigma_eps_ls: float
    rows: tuple[Table2Row, ...] = field(default_factory=tuple)


def table2_run(x, y, cc_list=TABLE2_CCS, **fit_kwargs) -> Table2Result:
    """Evaluate one fixed sample under every requested coefficient.

    The scale estimate and the least-squares ratio both depend on the
    coefficient, so the LS2 column is recomputed per row. A failing
    coefficient yields a row carrying the error message; the remaining
    rows are still produced.
    """
    if not cc_list:
        raise InvalidInputError("cc_list must not be empty")
    ls = fit_ls(x, y)
    rows = []
    for cc in cc_list:
        try:
            cc = check_cc(cc)
            ms = fit_ms(x, y, cc=cc, **fit_kwargs)
            sx_ces = sigma_x_ces(x, cc=cc)
            lsratio = sigma_ratio_at(x, y, ls.slope, cc=cc)
            rows.append(
                Table2Row(
                    cc=cc,
                    beta_ces=ms.slope,
                    sigma_eps_ces=ms.sigma_eps,
                    sigma_eps_ms=ms.sigma_ratio * sx_ces,
                    sigma_eps_ls2=lsratio * sx_ces,
                )
            )
        except CesError as err:
            rows.append(Table2Row(cc=str(cc), error=str(err)))
    return Table2Result(beta_ls=ls.slope, sigma_eps_ls=ls.sigma_eps, rows=tuple(rows))
