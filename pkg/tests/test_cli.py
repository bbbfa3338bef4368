import csv
import json
from pathlib import Path

import pytest

from spectral_gluing import cli
from spectral_gluing.cache import CACHE_ENV, ReportCache
from spectral_gluing.cli import RunConfig, main, write_report
from spectral_gluing.enums import Experiment, OutputFormat
from spectral_gluing.exceptions import ConfigError


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path / "cache"))


def _config(tmp_path, document):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    return str(path)


def test_spectrum_of_twisted_circle(tmp_path):
    config = _config(tmp_path, {"cross_section": {"kind": "circle", "holonomy": "1/4"}})
    out = tmp_path / "out"
    assert main(["spectrum", "--config", config, "--cutoff", "1", "--out", str(out), "--no-cache"]) == 0
    report = json.loads((out / "spectrum.json").read_text(encoding="utf-8"))
    assert report["results"]["eigenvalues"] == [[0.0625, 1], [0.5625, 1]]
    assert report["results"]["kernel_dim"] == 0
    assert report["config"]["cutoff"] == 1.0
    assert "generated_at" in report


def test_glue_writes_both_formats(tmp_path):
    config = _config(tmp_path, {"cross_section": {"kind": "point"}, "lhs_method": "factorized"})
    out = tmp_path / "out"
    assert main(["glue", "--config", config, "--out", str(out), "--format", "both"]) == 0
    report = json.loads((out / "glue.json").read_text(encoding="utf-8"))
    assert report["passed"]
    with (out / "glue.csv").open(newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert [row["identity"] for row in rows] == ["heat-constant", "gluing"]
    assert list(rows[0]) == list(cli.CSV_COLUMNS)


def test_failed_tolerance_exits_with_three(tmp_path):
    config = _config(
        tmp_path, {"cross_section": {"kind": "point"}, "lhs_method": "factorized", "tolerances": -1.0}
    )
    assert main(["glue", "--config", config, "--out", str(tmp_path), "--no-cache"]) == 3


def test_torsion_on_untwisted_circle_is_a_hypothesis_failure(tmp_path):
    config = _config(tmp_path, {"cross_section": {"kind": "circle", "holonomy": 0}})
    assert main(["torsion", "--config", config, "--out", str(tmp_path), "--no-cache"]) == 2


def test_unknown_key_is_a_usage_error(tmp_path):
    config = _config(tmp_path, {"cross_section": {"kind": "point"}, "radius": 2})
    assert main(["zeta", "--config", config, "--out", str(tmp_path)]) == 1


def test_unreadable_config_is_a_usage_error(tmp_path):
    assert main(["zeta", "--config", str(tmp_path / "missing.json")]) == 1


def test_unknown_subcommand_exits_with_one():
    with pytest.raises(SystemExit) as exc_info:
        main(["sphere"])
    assert exc_info.value.code == 1


def test_second_run_is_served_from_cache(tmp_path, monkeypatch):
    calls = []
    execute = cli.execute

    def counting(run_config):
        calls.append(run_config.experiment)
        return execute(run_config)

    monkeypatch.setattr(cli, "execute", counting)
    cache = ReportCache(cli.__version__, tmp_path / "cache")
    data = {"experiment": "zeta", "cross_section": {"kind": "point"}, "output": {"dir": str(tmp_path)}}

    assert cli.run(RunConfig.from_mapping(data), cache=cache) == 0
    assert cli.run(RunConfig.from_mapping(data), cache=cache) == 0
    assert calls == [Experiment.ZETA]

    assert cli.run(RunConfig.from_mapping({**data, "tolerances": 1e-3}), cache=cache) == 0
    assert len(calls) == 2


def test_run_config_defaults():
    run_config = RunConfig.from_mapping({"experiment": "dtn"})
    assert run_config.experiment is Experiment.DTN
    assert run_config.output_format is OutputFormat.JSON
    assert run_config.family == {"kind": "join", "lengths": [1.0, 1.0]}
    assert run_config.settings()["family"] == run_config.family


@pytest.mark.parametrize(
    "data",
    [
        {"experiment": "sphere"},
        {"experiment": "glue", "radius": 1},
        {"experiment": "glue", "cross_section": {"kind": "torus"}},
        {"experiment": "glue", "r_grid": [1, 2]},
        {"experiment": "glue", "tolerances": {"loose": 1.0}},
        {"experiment": "glue", "output": {"format": "xml"}},
        {"experiment": "glue", "output": {"path": "."}},
        {"experiment": "symbols", "smoothing": {"width": 1}},
        {"experiment": "logdet", "window": [1.0, 2.0]},
        {"experiment": "logdet", "window": [10, 10000, 1]},
        {"experiment": "logdet", "window": [0, 10000, 20]},
        {"experiment": "logdet", "window": [100, 10, 20]},
        {"experiment": "logdet", "window": [10, "inf", 20]},
        {"experiment": "logdet", "window": 10},
    ],
)
def test_run_config_errors(data):
    with pytest.raises(ConfigError):
        RunConfig.from_mapping(data)


def test_symbols_experiment(tmp_path):
    data = {
        "experiment": "symbols",
        "potential": 2.0,
        "depth": 2,
        "smoothing": {"cutoff": 20},
        "output": {"dir": str(tmp_path)},
    }
    report = cli.execute(RunConfig.from_mapping(data)).to_dict()
    results = report["results"]
    assert results["orders"] == ["q_1 = (1)*w", "q_0 = 0", "q_-1 = (1/2)*V/w"]
    assert results["matches_constant_expansion"] is True
    assert results["smoothing"]["argmax"] == 8.0


def test_dtn_experiment_on_point():
    data = {"experiment": "dtn", "cross_section": {"kind": "point"}, "family": {"kind": "collar", "r": 4.0}}
    results = cli.execute(RunConfig.from_mapping(data)).to_dict()["results"]
    assert results["log_det"] == pytest.approx(-0.6931471805599453)
    assert results["fibers"] == [{"lambda": 0.0, "multiplicity": 1, "value": 0.5}]


@pytest.mark.parametrize("window", [[10, 10000, 1], [0, 10000, 20]])
def test_degenerate_window_is_a_usage_error(tmp_path, caplog, window):
    config = _config(tmp_path, {"cross_section": {"kind": "circle"}, "window": window})
    assert main(["logdet", "--config", config, "--out", str(tmp_path), "--no-cache"]) == 1
    assert "window" in caplog.text


def test_failed_write_leaves_no_temporary_files(tmp_path, monkeypatch):
    def failing_replace(self, target):
        raise OSError("disk full")

    monkeypatch.setattr(Path, "replace", failing_replace)
    payload = {"experiment": "glue", "rows": [{"identity": "gluing", "passed": True}]}
    for output_format in (OutputFormat.JSON, OutputFormat.CSV):
        with pytest.raises(OSError):
            write_report(payload, tmp_path, output_format)

    assert not list(tmp_path.iterdir())


def test_csv_report_is_written_whole(tmp_path):
    payload = {"experiment": "glue", "rows": [{"identity": "gluing", "passed": True}]}
    (path,) = write_report(payload, tmp_path, OutputFormat.CSV)
    assert path == tmp_path / "glue.csv"
    with path.open(newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert rows[0]["identity"] == "gluing"
    assert [p.name for p in tmp_path.iterdir()] == ["glue.csv"]
