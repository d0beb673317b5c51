"""Conjugate model for the mean and variance of a temperature sample.

The unknowns are the population mean and variance of a normal data model.
The prior is the conjugate normal-inverse-gamma family: four hyperparameters
``(mu0, kappa0, nu0, sigma0_sq)`` interpretable as a prior mean with
``kappa0`` pseudo-observations behind it, and a prior variance with ``nu0``
degrees of freedom behind it.  Observing sufficient statistics ``(n, y_bar,
s_sq)`` updates the four hyperparameters in closed form.

The module also exposes the analytic marginals of the posterior: the mean
follows a location-scale Student-t, the precision (reciprocal variance)
follows a gamma distribution in shape-rate form.  These closed forms serve
as oracles for the Monte Carlo machinery in :mod:`posterior_bench.sampler`.

All types are immutable after construction and all operations are pure, so
everything here is safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from scipy import stats as _sps

from .errors import NumericError

#: Default pseudo-observation counts (kappa0 and nu0) used when a prior is
#: elicited from a station climatology that supplies only mean and spread.
#: Both equal 1: the prior mean and variance each count as one observation,
#: so even a modest sample dominates them.
DEFAULT_PRIOR_PSEUDO_OBS = 1.0


def _require_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0.0):
        raise NumericError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class Prior:
    """Normal-inverse-gamma prior hyperparameters.

    mu0
        Prior mean (deg C).
    kappa0
        Pseudo-observations behind the prior mean; > 0.
    nu0
        Degrees of freedom behind the prior variance; > 0.
    sigma0_sq
        Prior variance (deg C^2); > 0.
    """

    mu0: float
    kappa0: float
    nu0: float
    sigma0_sq: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mu0):
            raise NumericError(f"prior mean must be finite, got {self.mu0!r}")
        _require_positive("kappa0", self.kappa0)
        _require_positive("nu0", self.nu0)
        _require_positive("sigma0_sq", self.sigma0_sq)


@dataclass(frozen=True)
class SampleStats:
    """Sufficient statistics of a sample: size, mean, and variance.

    ``s_sq`` is the (n-1)-denominator sample variance.  For ``n == 0`` the
    mean and variance are meaningless and must be omitted; for ``n == 1``
    the variance is undefined and must be omitted (the update treats the
    ``(n-1) s_sq`` term as zero).
    """

    n: int
    y_bar: Optional[float] = None
    s_sq: Optional[float] = None

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 0:
            raise NumericError(f"sample size must be a non-negative integer, got {self.n!r}")
        if self.n == 0:
            if self.y_bar is not None or self.s_sq is not None:
                raise NumericError("empty sample carries no mean or variance")
            return
        if self.y_bar is None or not math.isfinite(self.y_bar):
            raise NumericError(f"sample mean required and finite for n = {self.n}")
        if self.n == 1:
            if self.s_sq is not None:
                raise NumericError("sample variance is undefined for n = 1; omit it")
            return
        if self.s_sq is None or not (math.isfinite(self.s_sq) and self.s_sq >= 0.0):
            raise NumericError(f"sample variance must be >= 0 for n = {self.n}, got {self.s_sq!r}")


@dataclass(frozen=True)
class Posterior:
    """Updated normal-inverse-gamma hyperparameters."""

    mu_n: float
    kappa_n: float
    nu_n: float
    sigma_n_sq: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mu_n):
            raise NumericError(f"posterior mean must be finite, got {self.mu_n!r}")
        _require_positive("kappa_n", self.kappa_n)
        _require_positive("nu_n", self.nu_n)
        _require_positive("sigma_n_sq", self.sigma_n_sq)


@dataclass(frozen=True)
class Interval:
    """A credible interval ``[lo, hi]`` at a given level."""

    lo: float
    hi: float
    level: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo <= self.hi):
            raise NumericError(f"interval endpoints must satisfy lo <= hi, got ({self.lo!r}, {self.hi!r})")
        if not 0.0 < self.level < 1.0:
            raise NumericError(f"credibility level must lie in (0, 1), got {self.level!r}")

    @property
    def length(self) -> float:
        return self.hi - self.lo


class GammaShapeRate(NamedTuple):
    """Gamma parameters in shape-rate form: density proportional to
    ``x**(shape-1) * exp(-rate*x)``.  Mean is shape/rate.

    The parameterization is part of the name on purpose; shape-scale mixups
    are the classic silent bug with gamma parameters.
    """

    shape: float
    rate: float


class PosteriorMeans(NamedTuple):
    """Expected values of the posterior mean and variance.

    ``sigma_sq`` is ``None`` when the variance expectation does not exist
    (``nu_n <= 2``).
    """

    theta: float
    sigma_sq: Optional[float]


def posterior_update(prior: Prior, stats: SampleStats) -> Posterior:
    """Closed-form conjugate update of the prior given sample statistics.

    mu_n       = (kappa0*mu0 + n*y_bar) / kappa_n
    kappa_n    = kappa0 + n
    nu_n       = nu0 + n
    sigma_n_sq = [nu0*sigma0_sq + (n-1)*s_sq
                  + (kappa0*n/kappa_n)*(y_bar - mu0)^2] / nu_n

    With ``n == 0`` the posterior equals the prior exactly, all four fields.
    """
    n = stats.n
    if n == 0:
        return Posterior(prior.mu0, prior.kappa0, prior.nu0, prior.sigma0_sq)
    kappa_n = prior.kappa0 + n
    nu_n = prior.nu0 + n
    y_bar = stats.y_bar
    s_sq = 0.0 if stats.s_sq is None else stats.s_sq
    mu_n = (prior.kappa0 * prior.mu0 + n * y_bar) / kappa_n
    shrink = (prior.kappa0 * n / kappa_n) * (y_bar - prior.mu0) ** 2
    sigma_n_sq = (prior.nu0 * prior.sigma0_sq + (n - 1) * s_sq + shrink) / nu_n
    return Posterior(mu_n, kappa_n, nu_n, sigma_n_sq)


def theta_conditional_params(post: Posterior, sigma_sq: float) -> tuple[float, float]:
    """Mean and variance of the conditional normal law of the population
    mean given a variance value: ``(mu_n, sigma_sq / kappa_n)``."""
    if not (math.isfinite(sigma_sq) and sigma_sq > 0.0):
        raise NumericError(f"variance must be positive, got {sigma_sq!r}")
    return post.mu_n, sigma_sq / post.kappa_n


def precision_marginal_params(post: Posterior) -> GammaShapeRate:
    """Shape-rate parameters of the gamma marginal of the precision:
    ``gamma(nu_n/2, nu_n*sigma_n_sq/2)``."""
    return GammaShapeRate(post.nu_n / 2.0, post.nu_n * post.sigma_n_sq / 2.0)


def theta_marginal_quantile(post: Posterior, p: float) -> float:
    """Quantile of the analytic marginal of the population mean.

    The marginal is a location-scale Student-t:
    ``mu_n + sqrt(sigma_n_sq/kappa_n) * t_p(nu_n)``.  Used as the oracle the
    Monte Carlo quantiles are tested against; itself cross-checked against
    numerical CDF inversion in the test suite.
    """
    if not 0.0 < p < 1.0:
        raise NumericError(f"quantile probability must lie in (0, 1), got {p!r}")
    scale = math.sqrt(post.sigma_n_sq / post.kappa_n)
    return post.mu_n + scale * float(_sps.t.ppf(p, post.nu_n))


def theta_marginal_cdf(post: Posterior, x) -> float:
    """CDF of the analytic Student-t marginal of the population mean."""
    scale = math.sqrt(post.sigma_n_sq / post.kappa_n)
    return _sps.t.cdf((x - post.mu_n) / scale, post.nu_n)


def posterior_expectations(post: Posterior) -> PosteriorMeans:
    """Expected population mean and variance under the posterior.

    The mean of the variance marginal is ``nu_n*sigma_n_sq/(nu_n - 2)``; it
    exists only for ``nu_n > 2`` and is reported as ``None`` otherwise.
    """
    if post.nu_n > 2.0:
        e_sigma_sq: Optional[float] = post.nu_n * post.sigma_n_sq / (post.nu_n - 2.0)
    else:
        e_sigma_sq = None
    return PosteriorMeans(post.mu_n, e_sigma_sq)
