"""Bayesian comparison of temperature datasets.

Conjugate mean/variance posteriors from small samples, seeded Monte Carlo
sampling of the joint posterior, quantile-based credible bounds, and
cross-dataset overlap reports with plot-ready CSV documents and figures.
"""

__version__ = "0.1.0"

from .analysis import (
    OverlapResult,
    PosteriorSummary,
    compare,
    contains,
    density_summary,
    interval_overlap,
    posterior_bound,
    quantile,
    summarize,
)
from .errors import ConfigError, IngestError, NumericError, PosteriorBenchError
from .ingest import (
    GeoBox,
    GridSlice,
    TimeSeries,
    box_average,
    compute_stats,
    filter_months,
    read_grid_csv,
    read_timeseries_csv,
    subsample,
)
from .posterior import (
    DEFAULT_PRIOR_PSEUDO_OBS,
    GammaShapeRate,
    Interval,
    Posterior,
    PosteriorMeans,
    Prior,
    SampleStats,
    posterior_expectations,
    posterior_update,
    precision_marginal_params,
    theta_conditional_params,
    theta_marginal_quantile,
)
from .sampler import (
    JointSamples,
    SamplerConfig,
    sample_gamma,
    sample_inverse_gamma,
    sample_joint,
    sample_normal,
)

__all__ = [
    "__version__",
    "ConfigError", "IngestError", "NumericError", "PosteriorBenchError",
    "Prior", "SampleStats", "Posterior", "Interval",
    "GammaShapeRate", "PosteriorMeans", "DEFAULT_PRIOR_PSEUDO_OBS",
    "posterior_update", "theta_conditional_params", "precision_marginal_params",
    "theta_marginal_quantile", "posterior_expectations",
    "SamplerConfig", "JointSamples",
    "sample_gamma", "sample_inverse_gamma", "sample_normal", "sample_joint",
    "TimeSeries", "GridSlice", "GeoBox",
    "read_timeseries_csv", "read_grid_csv", "box_average",
    "filter_months", "subsample", "compute_stats",
    "PosteriorSummary", "OverlapResult",
    "quantile", "posterior_bound", "interval_overlap", "contains",
    "density_summary", "summarize", "compare",
]
