"""Shared fixture data: the four-dataset summary table used for overlap
arithmetic (reference reanalysis plus three nested model resolutions)."""

from posterior_bench.analysis import PosteriorSummary
from posterior_bench.posterior import Interval

LEVEL = 0.95

TABLE_ROWS = {
    # label: (theta_mean, theta_lo, theta_hi, sigma_sq_mean, sigma_lo, sigma_hi)
    "ERAi": (4.26, 3.87, 4.66, 9.90, 8.30, 11.93),
    "d01": (4.80, 4.57, 5.04, 7.08, 6.26, 8.07),
    "d02": (4.19, 3.93, 4.44, 8.04, 7.12, 9.14),
    "d03": (4.56, 4.29, 4.83, 9.19, 8.11, 10.46),
}


def table_summary(label: str, shift: float = 0.0) -> PosteriorSummary:
    theta, t_lo, t_hi, sigma, s_lo, s_hi = TABLE_ROWS[label]
    return PosteriorSummary(
        label=label,
        theta_mean=theta + shift,
        theta_bound=Interval(t_lo + shift, t_hi + shift, LEVEL),
        sigma_sq_mean=sigma,
        sigma_sq_bound=Interval(s_lo, s_hi, LEVEL),
        num_samples=10_000,
        seed=0,
    )


def table_summaries(shift: float = 0.0) -> list[PosteriorSummary]:
    return [table_summary(label, shift) for label in TABLE_ROWS]
