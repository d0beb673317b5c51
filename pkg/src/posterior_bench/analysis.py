"""Posterior summaries from Monte Carlo draws and cross-dataset comparison.

Quantiles use linear interpolation between closest ranks at position
``1 + p*(n-1)`` on the sorted draws (the type-7 convention).  The
convention is fixed and recorded in every report so independent runs stay
comparable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import NumericError
from .posterior import Interval
from .sampler import JointSamples

QUANTILE_CONVENTION = "linear interpolation between closest ranks (type 7)"


@dataclass(frozen=True)
class PosteriorSummary:
    """Per-dataset posterior summary: means and credible bounds of the
    population mean (theta) and variance (sigma_sq)."""

    label: str
    theta_mean: float
    theta_bound: Interval
    sigma_sq_mean: float
    sigma_sq_bound: Interval
    num_samples: int
    seed: int

    def __post_init__(self) -> None:
        if not np.isfinite(self.theta_mean) or not np.isfinite(self.sigma_sq_mean):
            raise NumericError(f"summary means for {self.label!r} must be finite")
        if self.theta_bound.level != self.sigma_sq_bound.level:
            raise NumericError(f"summary for {self.label!r} mixes credibility levels")

    @property
    def level(self) -> float:
        return self.theta_bound.level


@dataclass(frozen=True)
class OverlapResult:
    """Pairwise bound comparison of one dataset against a reference."""

    pair: tuple[str, str]
    theta_overlap_len: float
    theta_contains_ref_mean: bool
    sigma_overlap_len: float
    sigma_contains_ref_mean: bool

    def __post_init__(self) -> None:
        if self.theta_overlap_len < 0.0 or self.sigma_overlap_len < 0.0:
            raise NumericError("overlap lengths cannot be negative")


def quantile(samples, p: float) -> float:
    """Order-statistic quantile with linear interpolation (type 7).

    Position ``h = 1 + p*(n-1)`` on the sorted sample (1-indexed); the
    result interpolates between the floor and ceiling order statistics.
    """
    if not 0.0 < p < 1.0:
        raise NumericError(f"quantile probability must lie in (0, 1), got {p!r}")
    data = np.asarray(samples, dtype=float)
    if data.size == 0:
        raise NumericError("cannot take a quantile of an empty sample")
    data = np.sort(data)
    h = 1.0 + p * (data.size - 1)
    j = int(h)
    if j >= data.size:
        return float(data[-1])
    g = h - j
    return float(data[j - 1] + g * (data[j] - data[j - 1]))


def posterior_bound(samples, level: float) -> Interval:
    """Central quantile-based credible interval at the given level."""
    if not 0.0 < level < 1.0:
        raise NumericError(f"level must lie in (0, 1), got {level!r}")
    tail = (1.0 - level) / 2.0
    return Interval(quantile(samples, tail), quantile(samples, 1.0 - tail), level)


def interval_overlap(a: Interval, b: Interval) -> float:
    """Length of the intersection of two intervals (0 when disjoint)."""
    return max(0.0, min(a.hi, b.hi) - max(a.lo, b.lo))


def contains(a: Interval, x: float) -> bool:
    """Whether ``x`` lies in the closed interval (endpoints inclusive)."""
    return a.lo <= x <= a.hi


def density_summary(samples, bins: int) -> list[tuple[float, float]]:
    """Equal-width histogram densities over [min, max], one (center,
    density) pair per bin, normalized so sum(density * width) == 1.

    A zero-spread sample degenerates to a single unit-width bin centered on
    the value, density 1.
    """
    if bins < 1:
        raise NumericError(f"bins must be >= 1, got {bins}")
    data = np.asarray(samples, dtype=float)
    if data.size == 0:
        raise NumericError("cannot summarize an empty sample")
    lo, hi = float(np.min(data)), float(np.max(data))
    if lo == hi:
        return [(lo, 1.0)]
    counts, edges = np.histogram(data, bins=bins, range=(lo, hi))
    width = (hi - lo) / bins
    centers = (edges[:-1] + edges[1:]) / 2.0
    densities = counts / (data.size * width)
    return [(float(c), float(d)) for c, d in zip(centers, densities)]


def summarize(samples: JointSamples, label: str, level: float) -> PosteriorSummary:
    """Monte Carlo summary of one dataset's joint draws."""
    return PosteriorSummary(
        label=label,
        theta_mean=float(np.mean(samples.theta)),
        theta_bound=posterior_bound(samples.theta, level),
        sigma_sq_mean=float(np.mean(samples.sigma_sq)),
        sigma_sq_bound=posterior_bound(samples.sigma_sq, level),
        num_samples=samples.num_samples,
        seed=samples.seed,
    )


def compare(reference: PosteriorSummary, others: Sequence[PosteriorSummary]) -> list[OverlapResult]:
    """Bound overlap and reference-mean containment of each dataset against
    the reference.  All summaries must share one credibility level."""
    for summary in others:
        if summary.level != reference.level:
            raise NumericError(
                f"credibility level mismatch: {reference.label!r} at {reference.level} "
                f"vs {summary.label!r} at {summary.level}"
            )
    results = []
    for summary in others:
        results.append(
            OverlapResult(
                pair=(reference.label, summary.label),
                theta_overlap_len=interval_overlap(reference.theta_bound, summary.theta_bound),
                theta_contains_ref_mean=contains(summary.theta_bound, reference.theta_mean),
                sigma_overlap_len=interval_overlap(reference.sigma_sq_bound, summary.sigma_sq_bound),
                sigma_contains_ref_mean=contains(summary.sigma_sq_bound, reference.sigma_sq_mean),
            )
        )
    return results


def summary_record(summary: PosteriorSummary) -> dict:
    """JSON-ready record of a PosteriorSummary (full precision)."""
    return {
        "label": summary.label,
        "theta_mean": summary.theta_mean,
        "theta_bound": {"lo": summary.theta_bound.lo, "hi": summary.theta_bound.hi},
        "sigma_sq_mean": summary.sigma_sq_mean,
        "sigma_sq_bound": {"lo": summary.sigma_sq_bound.lo, "hi": summary.sigma_sq_bound.hi},
        "level": summary.level,
        "num_samples": summary.num_samples,
        "seed": summary.seed,
    }


def summary_from_record(record: dict) -> PosteriorSummary:
    level = record["level"]
    return PosteriorSummary(
        label=record["label"],
        theta_mean=record["theta_mean"],
        theta_bound=Interval(record["theta_bound"]["lo"], record["theta_bound"]["hi"], level),
        sigma_sq_mean=record["sigma_sq_mean"],
        sigma_sq_bound=Interval(record["sigma_sq_bound"]["lo"], record["sigma_sq_bound"]["hi"], level),
        num_samples=record["num_samples"],
        seed=record["seed"],
    )


def overlap_record(result: OverlapResult, reference: Optional[PosteriorSummary] = None) -> dict:
    """JSON-ready record of an OverlapResult.

    When the reference summary is supplied, overlap lengths normalized by
    the reference bound lengths are included as well.
    """
    record = {
        "reference": result.pair[0],
        "dataset": result.pair[1],
        "theta_overlap_len": result.theta_overlap_len,
        "theta_contains_ref_mean": result.theta_contains_ref_mean,
        "sigma_overlap_len": result.sigma_overlap_len,
        "sigma_contains_ref_mean": result.sigma_contains_ref_mean,
    }
    if reference is not None:
        theta_len = reference.theta_bound.length
        sigma_len = reference.sigma_sq_bound.length
        record["theta_overlap_frac_of_ref"] = (
            result.theta_overlap_len / theta_len if theta_len > 0.0 else None
        )
        record["sigma_overlap_frac_of_ref"] = (
            result.sigma_overlap_len / sigma_len if sigma_len > 0.0 else None
        )
    return record
