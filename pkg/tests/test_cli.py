"""End-to-end command-line behavior: synth, fit, compare, exit codes."""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from posterior_bench.analysis import summary_record
from posterior_bench.cli import (
    cmd_compare,
    cmd_fit,
    cmd_synth,
    load_run_config,
    main,
)
from posterior_bench.errors import ConfigError
from posterior_bench.ingest import read_timeseries_csv
from posterior_bench.posterior import Prior, SampleStats, posterior_update

from fixtures import table_summary

PRIOR = {"mu0": 7.48, "kappa0": 1.0, "nu0": 1.0, "sigma0_sq": 1.6129}


def _synth_spec(labels_means_vars, steps=400, seed=1, start="2008-04-01T00:00:00Z"):
    return {
        "seed": seed,
        "start": start,
        "step_hours": 3,
        "datasets": [
            {"label": label, "mean": mean, "variance": var, "steps": steps}
            for label, mean, var in labels_means_vars
        ],
    }


def _fit_config(data_dir, labels, *, seed=11, n_subsample=50, num_samples=2000, **extra):
    config = {
        "prior": PRIOR,
        "datasets": [
            {"label": label, "path": str(Path(data_dir) / f"{label}.csv"), "kind": "timeseries"}
            for label in labels
        ],
        "reference": labels[0],
        "n_subsample": n_subsample,
        "num_samples": num_samples,
        "seed": seed,
        "level": 0.95,
    }
    config.update(extra)
    return config


def _tree_bytes(root: Path) -> dict:
    return {p.name: p.read_bytes() for p in sorted(root.iterdir()) if p.is_file()}


class TestSynth:
    def test_recovers_requested_moments(self, tmp_path):
        # sampling-distribution oracle: mean within 3*sqrt(var/n),
        # variance within 3*var*sqrt(2/(n-1))
        (path,) = cmd_synth(_synth_spec([("a", 4.8, 7.1)], steps=720), tmp_path)
        series = read_timeseries_csv(path, "a")
        stats_n = len(series)
        mean = float(np.mean(series.values))
        var = float(np.var(series.values, ddof=1))
        assert stats_n == 720
        assert abs(mean - 4.8) < 3.0 * math.sqrt(7.1 / 720)
        assert abs(var - 7.1) < 3.0 * 7.1 * math.sqrt(2.0 / 719)

    def test_zero_variance_constant_series(self, tmp_path):
        (path,) = cmd_synth(_synth_spec([("flat", 2.5, 0.0)], steps=10), tmp_path)
        series = read_timeseries_csv(path, "flat")
        assert np.all(series.values == 2.5)

    def test_same_spec_twice_identical_files(self, tmp_path):
        spec = _synth_spec([("a", 1.0, 2.0), ("b", -4.0, 0.5)], steps=64)
        cmd_synth(spec, tmp_path / "one")
        cmd_synth(spec, tmp_path / "two")
        assert _tree_bytes(tmp_path / "one") == _tree_bytes(tmp_path / "two")

    def test_three_hourly_timestamps(self, tmp_path):
        (path,) = cmd_synth(_synth_spec([("a", 0.0, 1.0)], steps=3), tmp_path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "time,value"
        assert lines[1].startswith("2008-04-01T00:00:00Z,")
        assert lines[2].startswith("2008-04-01T03:00:00Z,")

    def test_invalid_spec_values(self, tmp_path):
        with pytest.raises(ConfigError):
            cmd_synth(_synth_spec([("a", float("nan"), 1.0)]), tmp_path)
        with pytest.raises(ConfigError):
            cmd_synth(_synth_spec([("a", 0.0, -1.0)]), tmp_path)
        with pytest.raises(ConfigError):
            cmd_synth({"datasets": []}, tmp_path)


class TestRunConfig:
    def test_defaults_applied(self, tmp_path):
        config = load_run_config(_fit_config(tmp_path, ["x", "y"]))
        assert config.prior.kappa0 == 1.0 and config.prior.nu0 == 1.0
        assert config.level == 0.95
        assert config.bins == 50
        assert config.thin is None
        assert config.created == "1970-01-01T00:00:00Z"

    def test_prior_pseudo_obs_default(self, tmp_path):
        raw = _fit_config(tmp_path, ["x"])
        raw["prior"] = {"mu0": 7.48, "sigma0_sq": 1.6129}
        config = load_run_config(raw)
        assert config.prior.kappa0 == 1.0 and config.prior.nu0 == 1.0

    def test_rejections(self, tmp_path):
        base = lambda: _fit_config(tmp_path, ["x", "y"])
        bad = base(); bad["reference"] = "nope"
        with pytest.raises(ConfigError, match="reference"):
            load_run_config(bad)
        bad = base(); bad["level"] = 1.2
        with pytest.raises(ConfigError, match="level"):
            load_run_config(bad)
        bad = base(); bad["n_subsample"] = 1
        with pytest.raises(ConfigError, match="n_subsample"):
            load_run_config(bad)
        bad = base(); bad["datasets"][1]["label"] = "x"
        with pytest.raises(ConfigError, match="unique"):
            load_run_config(bad)
        bad = base(); bad["datasets"][0]["kind"] = "netcdf"
        with pytest.raises(ConfigError, match="kind"):
            load_run_config(bad)
        bad = base(); bad["surprise"] = 1
        with pytest.raises(ConfigError, match="unknown configuration fields"):
            load_run_config(bad)
        bad = base(); bad["datasets"][0]["kind"] = "grid"
        with pytest.raises(ConfigError, match="box"):
            load_run_config(bad)

    def test_seed_override(self, tmp_path):
        config = load_run_config(_fit_config(tmp_path, ["x"], seed=1), overrides={"seed": 99})
        assert config.seed == 99


class TestFit:
    def _prepare(self, tmp_path, labels=("ERAi", "d01", "d02", "d03"), steps=400):
        data = tmp_path / "data"
        spec = _synth_spec(
            [(label, 4.0 + 0.3 * i, 6.0 + i) for i, label in enumerate(labels)], steps=steps
        )
        cmd_synth(spec, data)
        return data

    def test_four_dataset_run_produces_all_artifacts(self, tmp_path):
        data = self._prepare(tmp_path)
        config = load_run_config(
            _fit_config(
                data,
                ["ERAi", "d01", "d02", "d03"],
                n_subsample=200,
                box={"lat_min": 59.32, "lat_max": 60.75, "lon_min": 5.05, "lon_max": 7.90},
            )
        )
        out = tmp_path / "out"
        result = cmd_fit(config, out, figures=False)
        assert not result.failures
        assert result.manifest_path == out / "manifest.json"
        for label in ("ERAi", "d01", "d02", "d03"):
            assert (out / f"joint_{label}.csv").exists()
            assert (out / f"marginal_theta_{label}.csv").exists()
            assert (out / f"marginal_precision_{label}.csv").exists()
        table = (out / "summary.txt").read_text().splitlines()
        data_rows = [ln for ln in table if ln and not ln.startswith(("#", "dataset"))]
        assert len(data_rows) == 4
        payload = json.loads((out / "summary.json").read_text())
        assert [row["label"] for row in payload["rows"]] == ["ERAi", "d01", "d02", "d03"]
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["config"]["reference"] == "ERAi"
        assert len(manifest["datasets"]) == 4
        assert all(d["stats"]["n"] == 200 for d in manifest["datasets"])

    def test_figures_written_when_enabled(self, tmp_path):
        data = self._prepare(tmp_path, labels=("a", "b"), steps=120)
        config = load_run_config(_fit_config(data, ["a", "b"], n_subsample=40, num_samples=500))
        out = tmp_path / "out"
        cmd_fit(config, out, figures=True)
        for label in ("a", "b"):
            assert (out / f"joint_{label}.png").stat().st_size > 0
            assert (out / f"marginal_theta_{label}.png").stat().st_size > 0
            assert (out / f"marginal_precision_{label}.png").stat().st_size > 0

    def test_rerun_is_byte_identical(self, tmp_path):
        data = self._prepare(tmp_path, labels=("a", "b"), steps=120)
        raw = _fit_config(data, ["a", "b"], n_subsample=40, num_samples=500)
        cmd_fit(load_run_config(raw), tmp_path / "one", figures=True)
        cmd_fit(load_run_config(raw), tmp_path / "two", figures=True)
        assert _tree_bytes(tmp_path / "one") == _tree_bytes(tmp_path / "two")

    def test_manifest_config_round_trip(self, tmp_path):
        data = self._prepare(tmp_path, labels=("a", "b"), steps=120)
        raw = _fit_config(data, ["a", "b"], n_subsample=40, num_samples=500)
        cmd_fit(load_run_config(raw), tmp_path / "one", figures=False)
        embedded = json.loads((tmp_path / "one" / "manifest.json").read_text())["config"]
        cmd_fit(load_run_config(embedded), tmp_path / "two", figures=False)
        assert _tree_bytes(tmp_path / "one") == _tree_bytes(tmp_path / "two")

    def test_renaming_one_dataset_leaves_others_untouched(self, tmp_path):
        data = self._prepare(tmp_path, labels=("a", "b"), steps=120)
        (data / "c.csv").write_bytes((data / "b.csv").read_bytes())
        raw_ab = _fit_config(data, ["a", "b"], n_subsample=40, num_samples=500)
        raw_ac = _fit_config(data, ["a", "c"], n_subsample=40, num_samples=500)
        cmd_fit(load_run_config(raw_ab), tmp_path / "ab", figures=False)
        cmd_fit(load_run_config(raw_ac), tmp_path / "ac", figures=False)
        assert (tmp_path / "ab" / "joint_a.csv").read_bytes() == (tmp_path / "ac" / "joint_a.csv").read_bytes()
        assert (tmp_path / "ab" / "joint_b.csv").read_bytes() != (tmp_path / "ac" / "joint_c.csv").read_bytes()

    def test_month_filter_restricts_data(self, tmp_path):
        data = tmp_path / "data"
        cmd_synth(_synth_spec([("a", 2.0, 1.0)], steps=400, start="2008-03-25T00:00:00Z"), data)
        raw = _fit_config(data, ["a"], n_subsample=30, num_samples=200, months=[[2008, 4]])
        result = cmd_fit(load_run_config(raw), tmp_path / "out", figures=False)
        assert not result.failures
        raw_none = _fit_config(data, ["a"], n_subsample=30, num_samples=200, months=[[1999, 1]])
        result = cmd_fit(load_run_config(raw_none), tmp_path / "out2", figures=False)
        assert len(result.failures) == 1

    def test_missing_file_fails_that_dataset_only(self, tmp_path):
        data = self._prepare(tmp_path, labels=("a",), steps=120)
        raw = _fit_config(data, ["a"], n_subsample=40, num_samples=300)
        raw["datasets"].append({"label": "ghost", "path": str(data / "ghost.csv"), "kind": "timeseries"})
        result = cmd_fit(load_run_config(raw), tmp_path / "out", figures=False)
        assert [label for label, _ in result.failures] == ["ghost"]
        assert (tmp_path / "out" / "joint_a.csv").exists()
        assert not (tmp_path / "out" / "joint_ghost.csv").exists()


class TestCompareCommand:
    def _fixture_manifest(self, tmp_path) -> Path:
        # manifest carrying the published four-row summary table
        prior = Prior(7.48, 1.0, 1.0, 1.6129)
        datasets = []
        for label in ("ERAi", "d01", "d02", "d03"):
            summary = table_summary(label)
            stats = SampleStats(n=200, y_bar=summary.theta_mean, s_sq=summary.sigma_sq_mean)
            post = posterior_update(prior, stats)
            datasets.append(
                {
                    "label": label,
                    "source": f"{label}.csv",
                    "kind": "timeseries",
                    "stats": {"n": 200, "y_bar": summary.theta_mean, "s_sq": summary.sigma_sq_mean},
                    "posterior": {
                        "mu_n": post.mu_n,
                        "kappa_n": post.kappa_n,
                        "nu_n": post.nu_n,
                        "sigma_n_sq": post.sigma_n_sq,
                    },
                    "seed": 0,
                    "num_samples": summary.num_samples,
                    "summary": summary_record(summary),
                }
            )
        payload = {
            "tool_version": "0.1.0",
            "created": "1970-01-01T00:00:00Z",
            "level": 0.95,
            "quantile_convention": "linear interpolation between closest ranks (type 7)",
            "prior": PRIOR,
            "config": {"reference": "ERAi"},
            "datasets": datasets,
        }
        path = tmp_path / "manifest.json"
        path.write_text(json.dumps(payload, indent=2))
        return path

    def test_overlap_ranking(self, tmp_path):
        manifest = self._fixture_manifest(tmp_path)
        json_path, txt_path = cmd_compare(manifest, reference="ERAi")
        payload = json.loads(json_path.read_text())
        by_label = {r["dataset"]: r for r in payload["results"]}
        assert by_label["d02"]["theta_overlap_len"] > by_label["d03"]["theta_overlap_len"]
        assert by_label["d03"]["theta_overlap_len"] > by_label["d01"]["theta_overlap_len"]
        ranking = [ln.split("  ")[0] for ln in txt_path.read_text().splitlines() if not ln.startswith("#")]
        assert ranking == ["d02", "d03", "d01"]

    def test_reference_defaults_to_config(self, tmp_path):
        manifest = self._fixture_manifest(tmp_path)
        json_path, _ = cmd_compare(manifest)
        assert json.loads(json_path.read_text())["reference"] == "ERAi"

    def test_unknown_reference_lists_labels(self, tmp_path):
        manifest = self._fixture_manifest(tmp_path)
        with pytest.raises(ConfigError, match="ERAi"):
            cmd_compare(manifest, reference="d99")

    def test_single_dataset_empty_comparison(self, tmp_path):
        manifest_path = self._fixture_manifest(tmp_path)
        payload = json.loads(manifest_path.read_text())
        payload["datasets"] = payload["datasets"][:1]
        manifest_path.write_text(json.dumps(payload))
        json_path, txt_path = cmd_compare(manifest_path, reference="ERAi")
        assert json.loads(json_path.read_text())["results"] == []
        assert "(no other datasets)" in txt_path.read_text()


class TestMainEntry:
    def _write_config(self, tmp_path, raw) -> Path:
        path = tmp_path / "run.json"
        path.write_text(json.dumps(raw))
        return path

    def test_fit_and_compare_succeed(self, tmp_path, capsys):
        data = tmp_path / "data"
        cmd_synth(_synth_spec([("ref", 4.2, 9.9), ("m1", 4.8, 7.1)], steps=200), data)
        config_path = self._write_config(tmp_path, _fit_config(data, ["ref", "m1"], n_subsample=40, num_samples=400))
        out = tmp_path / "out"
        assert main(["fit", "--config", str(config_path), "--out", str(out), "--no-figures"]) == 0
        captured = capsys.readouterr()
        assert captured.out == ""  # data goes to files, logs to stderr
        assert main(["compare", "--manifest", str(out / "manifest.json"), "--reference", "ref"]) == 0
        assert (out / "overlap.json").exists()

    def test_missing_input_exits_2_and_names_dataset(self, tmp_path, capsys):
        config_path = self._write_config(
            tmp_path, _fit_config(tmp_path, ["gone"], n_subsample=10, num_samples=100)
        )
        code = main(["fit", "--config", str(config_path), "--out", str(tmp_path / "out"), "--no-figures"])
        captured = capsys.readouterr()
        assert code == 2
        assert "gone" in captured.err

    def test_config_error_exits_1(self, tmp_path, capsys):
        raw = _fit_config(tmp_path, ["x"], n_subsample=10)
        raw["level"] = 2.0
        config_path = self._write_config(tmp_path, raw)
        assert main(["fit", "--config", str(config_path), "--out", str(tmp_path / "o")]) == 1
        assert "level" in capsys.readouterr().err

    def test_numeric_error_exits_3(self, tmp_path, capsys):
        data = tmp_path / "data"
        cmd_synth(_synth_spec([("tiny", 1.0, 1.0)], steps=5), data)
        config_path = self._write_config(
            tmp_path, _fit_config(data, ["tiny"], n_subsample=50, num_samples=100)
        )
        code = main(["fit", "--config", str(config_path), "--out", str(tmp_path / "out"), "--no-figures"])
        assert code == 3
        assert "tiny" in capsys.readouterr().err

    def test_seed_flag_changes_outputs(self, tmp_path):
        data = tmp_path / "data"
        cmd_synth(_synth_spec([("a", 4.0, 2.0)], steps=100), data)
        config_path = self._write_config(tmp_path, _fit_config(data, ["a"], n_subsample=30, num_samples=300))
        main(["fit", "--config", str(config_path), "--out", str(tmp_path / "s1"), "--no-figures"])
        main(["fit", "--config", str(config_path), "--out", str(tmp_path / "s2"), "--no-figures", "--seed", "77"])
        assert (tmp_path / "s1" / "joint_a.csv").read_bytes() != (tmp_path / "s2" / "joint_a.csv").read_bytes()

    def test_synth_subcommand(self, tmp_path):
        spec_path = tmp_path / "synth.json"
        spec_path.write_text(json.dumps(_synth_spec([("a", 1.0, 1.0)], steps=12)))
        assert main(["synth", "--spec", str(spec_path), "--out", str(tmp_path / "data")]) == 0
        assert (tmp_path / "data" / "a.csv").exists()

    def test_missing_config_file_exits_1(self, tmp_path):
        assert main(["fit", "--config", str(tmp_path / "none.json"), "--out", str(tmp_path)]) == 1
