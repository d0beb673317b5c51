"""Rendering comparison runs into durable documents.

Three front-line documents per run: a summary table of posterior means and
bounds (text/JSON/CSV), per-dataset joint-scatter CSVs of the (theta,
sigma_sq) draws, and per-dataset marginal-density CSVs for the mean and the
precision.  A manifest records everything needed to regenerate the run
byte-for-byte: the resolved configuration, per-dataset statistics,
posteriors, seeds, and summaries.

Text tables round half-even to two decimals at render time only; JSON and
CSV carry full round-trip precision alongside the display strings.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .analysis import (
    QUANTILE_CONVENTION,
    PosteriorSummary,
    density_summary,
    posterior_bound,
    summary_from_record,
    summary_record,
)
from .errors import NumericError
from .posterior import Posterior, Prior, SampleStats, posterior_expectations
from .sampler import JointSamples

THETA = "theta"
PRECISION = "precision"


@dataclass(frozen=True)
class DatasetRun:
    """Provenance of one dataset inside a run."""

    label: str
    source: str
    kind: str
    stats: SampleStats
    posterior: Posterior
    seed: int
    num_samples: int
    summary: PosteriorSummary


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to regenerate a run's documents byte-for-byte."""

    datasets: tuple[DatasetRun, ...]
    prior: Prior
    level: float
    created: str
    tool_version: str
    quantile_convention: str
    config: dict

    def __post_init__(self) -> None:
        labels = [d.label for d in self.datasets]
        if len(set(labels)) != len(labels):
            raise NumericError(f"dataset labels must be unique, got {labels}")
        if not 0.0 < self.level < 1.0:
            raise NumericError(f"level must lie in (0, 1), got {self.level!r}")


def _meta_lines(meta: Optional[dict]) -> list[str]:
    if not meta:
        return []
    return [f"# {key}={value}" for key, value in meta.items()]


def _fmt2(value: float) -> str:
    """Two-decimal display string; Python's float formatting rounds
    half-even."""
    return f"{value:.2f}"


def _bound2(summary_bound) -> str:
    return f"({_fmt2(summary_bound.lo)}, {_fmt2(summary_bound.hi)})"


def render_summary_table(
    summaries: Sequence[PosteriorSummary],
    format: str = "text",
    meta: Optional[dict] = None,
) -> str:
    """Summary table over datasets: mean and bound for theta and sigma_sq.

    ``format`` is one of ``text`` (two-decimal display), ``json`` or
    ``csv`` (full precision plus the display fields).  ``meta`` key/value
    pairs are embedded: comment lines in text/CSV, an envelope in JSON.
    """
    if not summaries:
        raise NumericError("no summaries to render")
    if format == "text":
        width = max(len(s.label) for s in summaries)
        lines = _meta_lines(meta)
        lines.append("  ".join(["dataset".ljust(width) if width > 7 else "dataset",
                                "theta", "theta_PB", "sigma_sq", "sigma_sq_PB"]))
        for s in summaries:
            lines.append(
                "  ".join(
                    [
                        s.label.ljust(width),
                        _fmt2(s.theta_mean),
                        _bound2(s.theta_bound),
                        _fmt2(s.sigma_sq_mean),
                        _bound2(s.sigma_sq_bound),
                    ]
                )
            )
        return "\n".join(lines) + "\n"
    if format == "json":
        rows = []
        for s in summaries:
            record = summary_record(s)
            record["display"] = {
                "theta": _fmt2(s.theta_mean),
                "theta_PB": _bound2(s.theta_bound),
                "sigma_sq": _fmt2(s.sigma_sq_mean),
                "sigma_sq_PB": _bound2(s.sigma_sq_bound),
            }
            rows.append(record)
        doc = {"quantile_convention": QUANTILE_CONVENTION}
        if meta:
            doc.update(meta)
        doc["rows"] = rows
        return json.dumps(doc, indent=2) + "\n"
    if format == "csv":
        buffer = io.StringIO()
        for line in _meta_lines(meta):
            buffer.write(line + "\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(
            [
                "label",
                "theta_mean", "theta_lo", "theta_hi",
                "sigma_sq_mean", "sigma_sq_lo", "sigma_sq_hi",
                "level", "num_samples", "seed",
                "theta_display", "theta_PB_display",
                "sigma_sq_display", "sigma_sq_PB_display",
            ]
        )
        for s in summaries:
            writer.writerow(
                [
                    s.label,
                    repr(s.theta_mean), repr(s.theta_bound.lo), repr(s.theta_bound.hi),
                    repr(s.sigma_sq_mean), repr(s.sigma_sq_bound.lo), repr(s.sigma_sq_bound.hi),
                    repr(s.level), s.num_samples, s.seed,
                    _fmt2(s.theta_mean), _bound2(s.theta_bound),
                    _fmt2(s.sigma_sq_mean), _bound2(s.sigma_sq_bound),
                ]
            )
        return buffer.getvalue()
    raise NumericError(f"unknown summary format {format!r}")


def render_joint_scatter(samples: JointSamples, thin: Optional[int] = None, label: str = "") -> str:
    """CSV of the joint draws, columns ``theta,sigma_sq``, optionally every
    k-th sample.  Header comments carry label, seed, sample count, and the
    analytic posterior means."""
    total = samples.num_samples
    if thin is not None:
        if int(thin) != thin or thin < 1:
            raise NumericError(f"thin must be a positive integer, got {thin!r}")
        if thin >= total:
            raise NumericError(f"thin={thin} would leave fewer than one of {total} samples")
    step = 1 if thin is None else int(thin)
    means = posterior_expectations(samples.posterior)
    sigma_mean = "NA" if means.sigma_sq is None else repr(means.sigma_sq)
    lines = [
        f"# label={label}",
        f"# seed={samples.seed}",
        f"# num_samples={total}",
        f"# theta_mean={means.theta!r}",
        f"# sigma_sq_mean={sigma_mean}",
        "theta,sigma_sq",
    ]
    for i in range(0, total, step):
        lines.append(f"{float(samples.theta[i])!r},{float(samples.sigma_sq[i])!r}")
    return "\n".join(lines) + "\n"


def render_marginal(
    samples: JointSamples,
    which: str,
    bins: int,
    level: float = 0.95,
    reference_mean: Optional[float] = None,
    label: str = "",
) -> str:
    """CSV of marginal-density bins for the mean (``theta``) or the
    precision (``precision``, reciprocal variance), with the credible-bound
    endpoints and optional reference-mean annotation in header comments."""
    if which == THETA:
        data = samples.theta
    elif which == PRECISION:
        data = 1.0 / samples.sigma_sq
    else:
        raise NumericError(f"which must be 'theta' or 'precision', got {which!r}")
    bound = posterior_bound(data, level)
    lines = [
        f"# label={label}",
        f"# seed={samples.seed}",
        f"# num_samples={samples.num_samples}",
        f"# which={which}",
        f"# level={level!r}",
        f"# bound_lo={bound.lo!r}",
        f"# bound_hi={bound.hi!r}",
    ]
    if reference_mean is not None:
        lines.append(f"# reference_mean={reference_mean!r}")
    lines.append("center,density")
    for center, density in density_summary(data, bins):
        lines.append(f"{center!r},{density!r}")
    return "\n".join(lines) + "\n"


def _stats_record(stats: SampleStats) -> dict:
    return {"n": stats.n, "y_bar": stats.y_bar, "s_sq": stats.s_sq}


def _posterior_record(post: Posterior) -> dict:
    return {"mu_n": post.mu_n, "kappa_n": post.kappa_n, "nu_n": post.nu_n, "sigma_n_sq": post.sigma_n_sq}


def manifest_to_dict(manifest: RunManifest) -> dict:
    return {
        "tool_version": manifest.tool_version,
        "created": manifest.created,
        "level": manifest.level,
        "quantile_convention": manifest.quantile_convention,
        "prior": {
            "mu0": manifest.prior.mu0,
            "kappa0": manifest.prior.kappa0,
            "nu0": manifest.prior.nu0,
            "sigma0_sq": manifest.prior.sigma0_sq,
        },
        "config": manifest.config,
        "datasets": [
            {
                "label": d.label,
                "source": d.source,
                "kind": d.kind,
                "stats": _stats_record(d.stats),
                "posterior": _posterior_record(d.posterior),
                "seed": d.seed,
                "num_samples": d.num_samples,
                "summary": summary_record(d.summary),
            }
            for d in manifest.datasets
        ],
    }


def manifest_from_dict(payload: dict) -> RunManifest:
    prior = Prior(**payload["prior"])
    datasets = []
    for record in payload["datasets"]:
        stats = SampleStats(
            n=record["stats"]["n"],
            y_bar=record["stats"]["y_bar"],
            s_sq=record["stats"]["s_sq"],
        )
        datasets.append(
            DatasetRun(
                label=record["label"],
                source=record["source"],
                kind=record["kind"],
                stats=stats,
                posterior=Posterior(**record["posterior"]),
                seed=record["seed"],
                num_samples=record["num_samples"],
                summary=summary_from_record(record["summary"]),
            )
        )
    return RunManifest(
        datasets=tuple(datasets),
        prior=prior,
        level=payload["level"],
        created=payload["created"],
        tool_version=payload["tool_version"],
        quantile_convention=payload["quantile_convention"],
        config=payload["config"],
    )


def manifest_json(manifest: RunManifest) -> str:
    return json.dumps(manifest_to_dict(manifest), indent=2) + "\n"
