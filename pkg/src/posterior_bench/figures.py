"""Figure rendering for comparison runs (PNG, Agg backend).

Each dataset gets a joint-scatter figure of its (theta, sigma_sq) draws and
marginal-density figures for the mean and the precision, mirroring the CSV
documents written next to them.  Rendering is display only: statistics are
computed on the full draw arrays elsewhere; figures may thin points for
legibility.

PNG metadata is pinned so identical runs produce identical bytes.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import PosteriorSummary, posterior_bound
from .errors import NumericError
from .posterior import posterior_expectations
from .sampler import JointSamples

_PNG_METADATA = {"Software": "posterior-bench"}
_DPI = 110
_MAX_SCATTER_POINTS = 20000


def save_joint_scatter(
    samples: JointSamples,
    label: str,
    path,
    reference: Optional[PosteriorSummary] = None,
) -> Path:
    """Scatter of the joint draws with the analytic posterior means marked
    in black; the reference dataset's means, when given, in red."""
    path = Path(path)
    step = max(1, samples.num_samples // _MAX_SCATTER_POINTS)
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    ax.scatter(
        samples.theta[::step],
        samples.sigma_sq[::step],
        s=4,
        alpha=0.25,
        color="steelblue",
        edgecolors="none",
        rasterized=True,
    )
    means = posterior_expectations(samples.posterior)
    ax.axvline(means.theta, color="black", lw=1.0)
    if means.sigma_sq is not None:
        ax.axhline(means.sigma_sq, color="black", lw=1.0)
    if reference is not None:
        ax.axvline(reference.theta_mean, color="red", lw=1.0, ls="--")
        ax.axhline(reference.sigma_sq_mean, color="red", lw=1.0, ls="--")
    ax.set_xlabel("population mean (deg C)")
    ax.set_ylabel("population variance (deg C$^2$)")
    ax.set_title(label)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI, metadata=_PNG_METADATA)
    plt.close(fig)
    return path


def save_marginal(
    samples: JointSamples,
    which: str,
    label: str,
    path,
    level: float,
    bins: int,
    reference_mean: Optional[float] = None,
) -> Path:
    """Histogram of one marginal with the credible-bound endpoints in blue
    and the reference mean, when given, in red."""
    path = Path(path)
    if which == "theta":
        data = samples.theta
        xlabel = "population mean (deg C)"
    elif which == "precision":
        data = 1.0 / samples.sigma_sq
        xlabel = "precision (1 / deg C$^2$)"
    else:
        raise NumericError(f"which must be 'theta' or 'precision', got {which!r}")
    bound = posterior_bound(data, level)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.hist(np.asarray(data), bins=bins, density=True, color="0.8", edgecolor="0.5")
    ax.axvline(bound.lo, color="tab:blue", lw=1.2)
    ax.axvline(bound.hi, color="tab:blue", lw=1.2)
    if reference_mean is not None:
        ax.axvline(reference_mean, color="red", lw=1.2)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("density")
    ax.set_title(f"{label}: {which} marginal, {level:.0%} bound")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI, metadata=_PNG_METADATA)
    plt.close(fig)
    return path
