"""Command-line front end: fit, compare, and synth subcommands.

``fit`` runs the full pipeline per dataset (ingest, optional box averaging
and month filtering, random subsampling, conjugate update, joint Monte
Carlo sampling, bounds) and writes the report documents, figures, and a
manifest.  ``compare`` reads a manifest and writes the bound-overlap
report against a reference dataset.  ``synth`` generates seeded Gaussian
test series in the time-series CSV schema.

Configuration is a single JSON document; scalar flags override it.  Every
stochastic step derives its stream from (master seed, dataset label, step
name), so adding or renaming one dataset never perturbs the others.  Exit
codes: 0 success, 1 configuration error, 2 ingestion error, 3 numeric
error.  Logs go to standard error (verbosity via the POSTERIOR_BENCH_LOG
environment variable); data goes to files only.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .analysis import QUANTILE_CONVENTION, compare, overlap_record, summarize
from .errors import ConfigError, IngestError, NumericError, PosteriorBenchError
from .figures import save_joint_scatter, save_marginal
from .ingest import (
    GeoBox,
    TimeSeries,
    box_average,
    compute_stats,
    filter_months,
    format_iso_utc,
    parse_iso_utc,
    read_grid_csv,
    read_timeseries_csv,
    subsample,
)
from .posterior import DEFAULT_PRIOR_PSEUDO_OBS, Prior, posterior_update
from .report import (
    PRECISION,
    THETA,
    DatasetRun,
    RunManifest,
    manifest_from_dict,
    manifest_json,
    render_joint_scatter,
    render_marginal,
    render_summary_table,
)
from .rng import derive_key, standard_normal
from .sampler import DEFAULT_CHUNK_SIZE, SamplerConfig, sample_joint

log = logging.getLogger("posterior_bench")

DEFAULT_NUM_SAMPLES = 10_000
DEFAULT_LEVEL = 0.95
DEFAULT_BINS = 50
DEFAULT_CREATED = "1970-01-01T00:00:00Z"
DEFAULT_SYNTH_START = "2008-04-01T00:00:00Z"
DEFAULT_SYNTH_STEP_HOURS = 3

_LABEL_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.-]*$")
_KINDS = ("timeseries", "grid")

_CONFIG_KEYS = {
    "prior", "datasets", "reference", "n_subsample", "num_samples", "seed",
    "level", "box", "months", "bins", "thin", "created",
}


@dataclass(frozen=True)
class DatasetSpec:
    label: str
    path: str
    kind: str


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved fit configuration; everything that determines the
    output bytes (execution knobs like chunking and workers are not part
    of it)."""

    prior: Prior
    datasets: tuple[DatasetSpec, ...]
    reference: str
    n_subsample: int
    num_samples: int
    seed: int
    level: float
    box: Optional[GeoBox]
    months: Optional[tuple[tuple[int, int], ...]]
    bins: int
    thin: Optional[int]
    created: str

    def resolved(self) -> dict:
        return {
            "prior": {
                "mu0": self.prior.mu0,
                "kappa0": self.prior.kappa0,
                "nu0": self.prior.nu0,
                "sigma0_sq": self.prior.sigma0_sq,
            },
            "datasets": [
                {"label": d.label, "path": d.path, "kind": d.kind} for d in self.datasets
            ],
            "reference": self.reference,
            "n_subsample": self.n_subsample,
            "num_samples": self.num_samples,
            "seed": self.seed,
            "level": self.level,
            "box": None
            if self.box is None
            else {
                "lat_min": self.box.lat_min,
                "lat_max": self.box.lat_max,
                "lon_min": self.box.lon_min,
                "lon_max": self.box.lon_max,
            },
            "months": None if self.months is None else [list(m) for m in self.months],
            "bins": self.bins,
            "thin": self.thin,
            "created": self.created,
        }


def _default_created() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        try:
            stamp = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
        except (ValueError, OverflowError) as exc:
            raise ConfigError(f"SOURCE_DATE_EPOCH is not a valid epoch second: {epoch!r}") from exc
        return format_iso_utc(stamp)
    return DEFAULT_CREATED


def _require(payload: dict, key: str, context: str):
    if key not in payload:
        raise ConfigError(f"{context}: missing required field {key!r}")
    return payload[key]


def _int_field(value, name: str, minimum: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ConfigError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return value


def load_run_config(payload: dict, overrides: Optional[dict] = None) -> RunConfig:
    """Validate a configuration document and apply scalar overrides."""
    if not isinstance(payload, dict):
        raise ConfigError("configuration must be a JSON object")
    unknown = set(payload) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration fields: {sorted(unknown)}")
    merged = dict(payload)
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value

    prior_raw = _require(merged, "prior", "config")
    if not isinstance(prior_raw, dict):
        raise ConfigError("prior must be an object with mu0/kappa0/nu0/sigma0_sq")
    try:
        prior = Prior(
            mu0=float(_require(prior_raw, "mu0", "prior")),
            kappa0=float(prior_raw.get("kappa0", DEFAULT_PRIOR_PSEUDO_OBS)),
            nu0=float(prior_raw.get("nu0", DEFAULT_PRIOR_PSEUDO_OBS)),
            sigma0_sq=float(_require(prior_raw, "sigma0_sq", "prior")),
        )
    except (TypeError, ValueError, NumericError) as exc:
        raise ConfigError(f"invalid prior: {exc}") from exc

    datasets_raw = _require(merged, "datasets", "config")
    if not isinstance(datasets_raw, list) or not datasets_raw:
        raise ConfigError("datasets must be a non-empty list")
    datasets = []
    for i, item in enumerate(datasets_raw):
        if not isinstance(item, dict):
            raise ConfigError(f"datasets[{i}] must be an object")
        label = str(_require(item, "label", f"datasets[{i}]"))
        if not _LABEL_RE.match(label):
            raise ConfigError(f"datasets[{i}]: label {label!r} is not filename-safe")
        kind = str(_require(item, "kind", f"datasets[{i}]"))
        if kind not in _KINDS:
            raise ConfigError(f"datasets[{i}]: kind must be one of {_KINDS}, got {kind!r}")
        datasets.append(DatasetSpec(label=label, path=str(_require(item, "path", f"datasets[{i}]")), kind=kind))
    labels = [d.label for d in datasets]
    if len(set(labels)) != len(labels):
        raise ConfigError(f"dataset labels must be unique, got {labels}")

    reference = str(_require(merged, "reference", "config"))
    if reference not in labels:
        raise ConfigError(f"reference {reference!r} not among dataset labels {labels}")

    n_subsample = _int_field(_require(merged, "n_subsample", "config"), "n_subsample", 2)
    num_samples = _int_field(merged.get("num_samples", DEFAULT_NUM_SAMPLES), "num_samples", 1)
    seed = _int_field(merged.get("seed", 0), "seed", 0)
    level = merged.get("level", DEFAULT_LEVEL)
    if not isinstance(level, (int, float)) or not 0.0 < float(level) < 1.0:
        raise ConfigError(f"level must lie in (0, 1), got {level!r}")
    bins = _int_field(merged.get("bins", DEFAULT_BINS), "bins", 1)
    thin = merged.get("thin")
    if thin is not None:
        thin = _int_field(thin, "thin", 1)

    box_raw = merged.get("box")
    box = None
    if box_raw is not None:
        if not isinstance(box_raw, dict):
            raise ConfigError("box must be an object with lat_min/lat_max/lon_min/lon_max")
        try:
            box = GeoBox(
                lat_min=float(_require(box_raw, "lat_min", "box")),
                lat_max=float(_require(box_raw, "lat_max", "box")),
                lon_min=float(_require(box_raw, "lon_min", "box")),
                lon_max=float(_require(box_raw, "lon_max", "box")),
            )
        except (TypeError, ValueError, NumericError) as exc:
            raise ConfigError(f"invalid box: {exc}") from exc
    if box is None and any(d.kind == "grid" for d in datasets):
        raise ConfigError("a box is required when any dataset has kind 'grid'")

    months_raw = merged.get("months")
    months = None
    if months_raw is not None:
        if not isinstance(months_raw, list) or not months_raw:
            raise ConfigError("months must be a non-empty list of [year, month] pairs")
        months_list = []
        for pair in months_raw:
            if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
                raise ConfigError(f"months entries must be [year, month] pairs, got {pair!r}")
            year = _int_field(pair[0], "months.year", 1)
            month = _int_field(pair[1], "months.month", 1)
            if month > 12:
                raise ConfigError(f"months.month must be 1..12, got {month}")
            months_list.append((year, month))
        months = tuple(months_list)

    created = merged.get("created")
    if created is None:
        created = _default_created()
    else:
        try:
            created = format_iso_utc(parse_iso_utc(str(created)))
        except ValueError as exc:
            raise ConfigError(f"created is not an ISO-8601 timestamp: {created!r}") from exc

    return RunConfig(
        prior=prior,
        datasets=tuple(datasets),
        reference=reference,
        n_subsample=n_subsample,
        num_samples=num_samples,
        seed=seed,
        level=float(level),
        box=box,
        months=months,
        bins=bins,
        thin=thin,
        created=created,
    )


def load_run_config_file(path, overrides: Optional[dict] = None) -> RunConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return load_run_config(payload, overrides)


@dataclass(frozen=True)
class FitResult:
    manifest_path: Optional[Path]
    out_dir: Path
    failures: tuple[tuple[str, Exception], ...]


def _ingest_dataset(spec: DatasetSpec, config: RunConfig, lenient: bool) -> TimeSeries:
    if spec.kind == "grid":
        slices = read_grid_csv(spec.path, lenient=lenient)
        series = box_average(slices, config.box, label=spec.label)
    else:
        series = read_timeseries_csv(spec.path, spec.label, lenient=lenient)
    if config.months is not None:
        series = filter_months(series, config.months)
        if len(series) == 0:
            raise IngestError(f"dataset {spec.label!r}: no timesteps in the selected months")
    return series


def cmd_fit(
    config: RunConfig,
    out_dir,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    figures: bool = True,
    lenient: bool = False,
) -> FitResult:
    """Run the pipeline for every dataset and write all report artifacts.

    Per-dataset failures are collected (and logged with the dataset label)
    rather than aborting the whole run; the manifest and summary cover the
    datasets that succeeded.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    runs: list[DatasetRun] = []
    samples_by_label = {}
    failures: list[tuple[str, Exception]] = []
    for spec in config.datasets:
        try:
            series = _ingest_dataset(spec, config, lenient)
            chosen = subsample(series, config.n_subsample, derive_key(config.seed, spec.label, "subsample"))
            stats = compute_stats(chosen)
            post = posterior_update(config.prior, stats)
            sampler_seed = derive_key(config.seed, spec.label, "sample")
            samples = sample_joint(
                post,
                SamplerConfig(seed=sampler_seed, num_samples=config.num_samples, chunk_size=chunk_size),
                workers=workers,
            )
            summary = summarize(samples, spec.label, config.level)
        except PosteriorBenchError as exc:
            log.error("dataset %s: %s", spec.label, exc)
            failures.append((spec.label, exc))
            continue
        samples_by_label[spec.label] = samples
        runs.append(
            DatasetRun(
                label=spec.label,
                source=spec.path,
                kind=spec.kind,
                stats=stats,
                posterior=post,
                seed=sampler_seed,
                num_samples=config.num_samples,
                summary=summary,
            )
        )

    if not runs:
        return FitResult(manifest_path=None, out_dir=out_dir, failures=tuple(failures))

    reference = next((r.summary for r in runs if r.label == config.reference), None)
    if reference is None:
        log.warning("reference dataset %r failed; reference annotations omitted", config.reference)
    ref_precision_mean = None
    if reference is not None:
        ref_precision_mean = float(np.mean(1.0 / samples_by_label[reference.label].sigma_sq))

    for run in runs:
        samples = samples_by_label[run.label]
        (out_dir / f"joint_{run.label}.csv").write_text(
            render_joint_scatter(samples, thin=config.thin, label=run.label), encoding="utf-8"
        )
        (out_dir / f"marginal_theta_{run.label}.csv").write_text(
            render_marginal(
                samples,
                THETA,
                config.bins,
                level=config.level,
                reference_mean=None if reference is None else reference.theta_mean,
                label=run.label,
            ),
            encoding="utf-8",
        )
        (out_dir / f"marginal_precision_{run.label}.csv").write_text(
            render_marginal(
                samples,
                PRECISION,
                config.bins,
                level=config.level,
                reference_mean=ref_precision_mean,
                label=run.label,
            ),
            encoding="utf-8",
        )
        if figures:
            save_joint_scatter(samples, run.label, out_dir / f"joint_{run.label}.png", reference=reference)
            save_marginal(
                samples,
                THETA,
                run.label,
                out_dir / f"marginal_theta_{run.label}.png",
                level=config.level,
                bins=config.bins,
                reference_mean=None if reference is None else reference.theta_mean,
            )
            save_marginal(
                samples,
                PRECISION,
                run.label,
                out_dir / f"marginal_precision_{run.label}.png",
                level=config.level,
                bins=config.bins,
                reference_mean=ref_precision_mean,
            )

    summaries = [run.summary for run in runs]
    meta = {
        "level": repr(config.level),
        "quantile": QUANTILE_CONVENTION,
        "prior": (
            f"mu0={config.prior.mu0!r} kappa0={config.prior.kappa0!r} "
            f"nu0={config.prior.nu0!r} sigma0_sq={config.prior.sigma0_sq!r}"
        ),
        "seed": config.seed,
        "num_samples": config.num_samples,
    }
    (out_dir / "summary.txt").write_text(render_summary_table(summaries, "text", meta=meta), encoding="utf-8")
    (out_dir / "summary.json").write_text(
        render_summary_table(summaries, "json", meta={"level": config.level, "seed": config.seed}),
        encoding="utf-8",
    )
    (out_dir / "summary.csv").write_text(render_summary_table(summaries, "csv"), encoding="utf-8")

    manifest = RunManifest(
        datasets=tuple(runs),
        prior=config.prior,
        level=config.level,
        created=config.created,
        tool_version=__version__,
        quantile_convention=QUANTILE_CONVENTION,
        config=config.resolved(),
    )
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(manifest_json(manifest), encoding="utf-8")
    log.info("wrote %d dataset runs to %s", len(runs), out_dir)
    return FitResult(manifest_path=manifest_path, out_dir=out_dir, failures=tuple(failures))


def cmd_compare(manifest_path, reference: Optional[str] = None, out_dir=None) -> tuple[Path, Path]:
    """Compare every dataset in a manifest against the reference and write
    ``overlap.json`` plus a text ranking."""
    manifest_path = Path(manifest_path)
    if not manifest_path.exists():
        raise ConfigError(f"manifest not found: {manifest_path}")
    try:
        manifest = manifest_from_dict(json.loads(manifest_path.read_text(encoding="utf-8")))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ConfigError(f"{manifest_path}: not a valid manifest: {exc}") from exc
    out_dir = manifest_path.parent if out_dir is None else Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    labels = [d.label for d in manifest.datasets]
    if reference is None:
        reference = manifest.config.get("reference")
    if reference not in labels:
        raise ConfigError(f"reference {reference!r} not in manifest; available labels: {labels}")
    ref_summary = next(d.summary for d in manifest.datasets if d.label == reference)
    others = [d.summary for d in manifest.datasets if d.label != reference]

    if not others:
        log.warning("manifest has a single dataset; nothing to compare against %r", reference)
    results = compare(ref_summary, others)
    payload = {
        "reference": reference,
        "level": manifest.level,
        "reference_theta_bound": {"lo": ref_summary.theta_bound.lo, "hi": ref_summary.theta_bound.hi},
        "reference_sigma_sq_bound": {
            "lo": ref_summary.sigma_sq_bound.lo,
            "hi": ref_summary.sigma_sq_bound.hi,
        },
        "results": [overlap_record(r, ref_summary) for r in results],
    }
    json_path = out_dir / "overlap.json"
    json_path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")

    lines = [
        f"# reference={reference} level={manifest.level!r}",
        "# ranking by theta-bound overlap length, longest first",
    ]
    if not results:
        lines.append("(no other datasets)")
    for result in sorted(results, key=lambda r: (-r.theta_overlap_len, r.pair[1])):
        lines.append(
            "  ".join(
                [
                    result.pair[1],
                    f"theta_overlap={result.theta_overlap_len:.2f}",
                    f"theta_contains_ref_mean={'yes' if result.theta_contains_ref_mean else 'no'}",
                    f"sigma_overlap={result.sigma_overlap_len:.2f}",
                    f"sigma_contains_ref_mean={'yes' if result.sigma_contains_ref_mean else 'no'}",
                ]
            )
        )
    txt_path = out_dir / "overlap.txt"
    txt_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return json_path, txt_path


_SYNTH_KEYS = {"seed", "start", "step_hours", "datasets"}


def cmd_synth(spec: dict, out_dir) -> list[Path]:
    """Write seeded Gaussian series with known mean/variance as time-series
    CSVs; the ground truth for end-to-end recovery tests."""
    if not isinstance(spec, dict):
        raise ConfigError("synth spec must be a JSON object")
    unknown = set(spec) - _SYNTH_KEYS
    if unknown:
        raise ConfigError(f"unknown synth fields: {sorted(unknown)}")
    seed = _int_field(_require(spec, "seed", "synth"), "seed", 0)
    try:
        start = parse_iso_utc(str(spec.get("start", DEFAULT_SYNTH_START)))
    except ValueError as exc:
        raise ConfigError(f"synth start is not ISO-8601: {spec.get('start')!r}") from exc
    step_hours = spec.get("step_hours", DEFAULT_SYNTH_STEP_HOURS)
    if not isinstance(step_hours, (int, float)) or step_hours <= 0:
        raise ConfigError(f"step_hours must be positive, got {step_hours!r}")
    datasets = _require(spec, "datasets", "synth")
    if not isinstance(datasets, list) or not datasets:
        raise ConfigError("synth datasets must be a non-empty list")

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, item in enumerate(datasets):
        if not isinstance(item, dict):
            raise ConfigError(f"synth datasets[{i}] must be an object")
        label = str(_require(item, "label", f"synth datasets[{i}]"))
        if not _LABEL_RE.match(label):
            raise ConfigError(f"synth datasets[{i}]: label {label!r} is not filename-safe")
        mean = item.get("mean")
        variance = item.get("variance")
        steps = _int_field(_require(item, "steps", f"synth datasets[{i}]"), "steps", 1)
        if not isinstance(mean, (int, float)) or not np.isfinite(mean):
            raise ConfigError(f"synth datasets[{i}]: mean must be finite, got {mean!r}")
        if not isinstance(variance, (int, float)) or not np.isfinite(variance) or variance < 0:
            raise ConfigError(f"synth datasets[{i}]: variance must be >= 0, got {variance!r}")
        key = derive_key(seed, label, "synth")
        z = standard_normal(key, np.arange(steps, dtype=np.uint64), np.zeros(steps, dtype=np.uint64))
        values = float(mean) + np.sqrt(float(variance)) * z
        lines = ["time,value"]
        for k in range(steps):
            stamp = start + timedelta(hours=float(step_hours) * k)
            lines.append(f"{format_iso_utc(stamp)},{float(values[k])!r}")
        path = out_dir / f"{label}.csv"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        paths.append(path)
    return paths


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posterior-bench",
        description="Bayesian mean/variance comparison of temperature datasets.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="run the pipeline described by a config file")
    fit.add_argument("--config", required=True, help="path to the run configuration JSON")
    fit.add_argument("--seed", type=int, default=None, help="override the master seed")
    fit.add_argument("--out", default="out", help="output directory (default: ./out)")
    fit.add_argument("--workers", type=int, default=1, help="worker threads for sampling chunks")
    fit.add_argument("--chunk-size", type=int, default=DEFAULT_CHUNK_SIZE,
                     help="sampling chunk size (never affects values)")
    fit.add_argument("--thin", type=int, default=None, help="write every k-th joint sample only")
    fit.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    fit.add_argument("--lenient", action="store_true", help="ignore unknown CSV columns")
    fit.add_argument("--created", default=None,
                     help="manifest timestamp: an ISO-8601 instant or 'now' (default: fixed epoch)")

    cmp_ = sub.add_parser("compare", help="bound-overlap report from a manifest")
    cmp_.add_argument("--manifest", required=True, help="path to manifest.json from a fit run")
    cmp_.add_argument("--reference", default=None, help="reference dataset label")
    cmp_.add_argument("--out", default=None, help="output directory (default: manifest directory)")

    synth = sub.add_parser("synth", help="generate seeded Gaussian test datasets")
    synth.add_argument("--spec", required=True, help="path to the synth spec JSON")
    synth.add_argument("--out", required=True, help="output directory")
    return parser


def _read_json(path, what: str) -> dict:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"{what} file not found: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc


def _failure_exit_code(failures: Sequence[tuple[str, Exception]]) -> int:
    if any(isinstance(exc, IngestError) for _, exc in failures):
        return IngestError.exit_code
    if any(isinstance(exc, NumericError) for _, exc in failures):
        return NumericError.exit_code
    return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        stream=sys.stderr,
        level=os.environ.get("POSTERIOR_BENCH_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "fit":
            overrides = {"seed": args.seed, "thin": args.thin}
            if args.created is not None:
                overrides["created"] = (
                    format_iso_utc(datetime.now(timezone.utc)) if args.created == "now" else args.created
                )
            config = load_run_config_file(args.config, overrides)
            if args.workers < 1:
                raise ConfigError(f"--workers must be >= 1, got {args.workers}")
            if args.chunk_size < 1:
                raise ConfigError(f"--chunk-size must be >= 1, got {args.chunk_size}")
            result = cmd_fit(
                config,
                args.out,
                workers=args.workers,
                chunk_size=args.chunk_size,
                figures=not args.no_figures,
                lenient=args.lenient,
            )
            for label, exc in result.failures:
                print(f"dataset {label}: {exc}", file=sys.stderr)
            if result.failures:
                return _failure_exit_code(result.failures)
            return 0
        if args.command == "compare":
            cmd_compare(args.manifest, reference=args.reference, out_dir=args.out)
            return 0
        if args.command == "synth":
            cmd_synth(_read_json(args.spec, "synth spec"), args.out)
            return 0
        raise ConfigError(f"unknown command {args.command!r}")
    except PosteriorBenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
