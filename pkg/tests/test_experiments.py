"""Configuration handling, pipeline reports, and the command-line front end."""
import json

import pytest

from concave_phase_lab.cli import main as cli_main
from concave_phase_lab.experiments import (PIPELINES, SCHEMA_VERSION, RunConfig,
                                           ScalingExperiment, resolve_config,
                                           run_experiment)


def test_run_config_defaults_and_coercion():
    cfg = RunConfig.from_mapping({"experiment": "covering", "lam-count": "5",
                                  "m": "0.4", "seed": "7"})
    assert cfg.experiment == "covering"
    assert cfg.lam_count == 5 and isinstance(cfg.lam_count, int)
    assert cfg.m == 0.4
    assert cfg.seed == 7
    assert RunConfig.from_mapping({"seed": "none"}).seed is None
    assert RunConfig().seed is None
    assert cfg.updated({"lam-count": "9"}).lam_count == 9


def test_run_config_rejects_unknown_keys():
    with pytest.raises(ValueError, match="unknown config key"):
        RunConfig.from_mapping({"bogus_knob": "1"})
    with pytest.raises(ValueError, match="unknown config key"):
        RunConfig().updated({"bogus_knob": "1"})


def test_run_config_from_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "# ladder setup\n"
        "experiment = sharpness-curve\n"
        "kappa = 2      # steeper path\n"
        "lam_count = 4\n"
        "seed = off\n"
        "\n")
    cfg = RunConfig.from_file(path)
    assert cfg.experiment == "sharpness-curve"
    assert cfg.kappa == 2.0 and cfg.lam_count == 4 and cfg.seed is None
    assert RunConfig.from_file(path, overrides={"kappa": "3"}).kappa == 3.0
    path.write_text("kappa 2\n")
    with pytest.raises(ValueError, match="without '='"):
        RunConfig.from_file(path)


def test_resolve_config_fills_zero_fields(monkeypatch):
    auto = resolve_config(RunConfig(experiment="sharpness-curve"))
    assert auto.x_cells == 24 and auto.t_base == 257 and auto.lam_count == 6
    kept = resolve_config(RunConfig(experiment="sharpness-curve", x_cells=10))
    assert kept.x_cells == 10
    with pytest.raises(ValueError, match="unknown experiment"):
        resolve_config(RunConfig(experiment="bogus"))
    monkeypatch.setenv("CPL_OUT", "/tmp/cpl-out")
    assert resolve_config(RunConfig(experiment="cantor")).out_dir == "/tmp/cpl-out"
    monkeypatch.delenv("CPL_OUT")
    assert resolve_config(RunConfig(experiment="cantor")).out_dir == "."


def test_scaling_experiment_validation():
    lams = [1.0, 2.0, 4.0, 8.0, 16.0]
    vals = [1.0, 2.0, 4.0, 8.0, 16.0]
    exp = ScalingExperiment.from_points("demo", {}, lams, vals)
    assert exp.slope == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError, match="at least 5"):
        ScalingExperiment.from_points("demo", {}, lams[:4], vals[:4])
    with pytest.raises(ValueError, match="strictly increasing"):
        ScalingExperiment.from_points("demo", {}, [1, 2, 2, 4, 8], vals)
    with pytest.raises(ValueError, match="positive"):
        ScalingExperiment.from_points("demo", {}, lams, [1, 2, 0, 4, 8])


def test_exponent_table_rows_match_hand_arithmetic():
    cfg = RunConfig(experiment="exponent-table", calculator="dim_bound_vertical",
                    m=0.5, s_grid="0.15:0.45:0.05")
    result, report = run_experiment(cfg, write=False)
    values = [row["value"] for row in result.rows]
    assert values == pytest.approx([0.9, 0.7, 0.5, 0.4, 0.3, 0.2, 0.1], abs=1e-12)
    assert report["aux"]["skipped"] == []
    flat, _ = run_experiment(RunConfig(experiment="exponent-table",
                                       calculator="s_star_vertical"), write=False)
    assert flat.rows == [{"value": 0.375}]


def test_exponent_table_skips_out_of_range():
    cfg = RunConfig(experiment="exponent-table", calculator="dim_bound_vertical",
                    m=0.5, s_grid="0.05:0.45:0.05")
    result, report = run_experiment(cfg, write=False)
    assert len(result.rows) == 7
    skipped = report["aux"]["skipped"]
    assert [row["s"] for row in skipped] == pytest.approx([0.05, 0.1])
    assert all("out of theorem range" in row["reason"] for row in skipped)


def test_frostman_and_cantor_pipelines():
    result, report = run_experiment(RunConfig(experiment="frostman", alpha=0.5),
                                    write=False)
    assert result.passed
    row = result.rows[0]
    assert row["constant"] <= 1.01 * row["bound"]
    result, report = run_experiment(RunConfig(experiment="cantor", r=1.0 / 3.0),
                                    write=False)
    assert result.passed and report["config"]["k"] == 6
    assert [row["count"] for row in result.rows] == [2 ** j for j in range(7)]


def test_covering_pipeline_report_shape():
    result, report = run_experiment(RunConfig(experiment="covering"), write=False)
    assert report["schema_version"] == SCHEMA_VERSION
    assert report["config"]["k"] == 12
    assert result.passed
    assert report["slope"] <= report["predicted_slope"] + report["tolerance"]


def test_propagate_pipeline_writes_outputs(tmp_path):
    cfg = RunConfig(experiment="propagate", family="band", grid_n=16,
                    out_dir=str(tmp_path))
    result, report = run_experiment(cfg)
    lines = (tmp_path / "propagate.csv").read_text().strip().splitlines()
    assert lines[0] == "x,value"
    assert len(lines) == 17
    loaded = json.loads((tmp_path / "propagate.json").read_text())
    assert loaded["pass"] is True and len(loaded["points"]) == 16


def test_reports_deterministic_across_thread_counts(tmp_path, monkeypatch):
    cfg = RunConfig.from_mapping({"experiment": "bilinear-check", "alpha": "0.5",
                                  "b_count": "5", "out_dir": str(tmp_path)})
    monkeypatch.setenv("CPL_THREADS", "1")
    run_experiment(cfg)
    first_json = (tmp_path / "bilinear-check.json").read_bytes()
    first_csv = (tmp_path / "bilinear-check.csv").read_bytes()
    monkeypatch.setenv("CPL_THREADS", "4")
    run_experiment(cfg)
    assert (tmp_path / "bilinear-check.json").read_bytes() == first_json
    assert (tmp_path / "bilinear-check.csv").read_bytes() == first_csv


def test_pipeline_registry_is_complete():
    assert sorted(PIPELINES) == ["bilinear-check", "cantor", "covering",
                                 "exponent-table", "frostman", "kernel-envelope",
                                 "propagate", "proposition-lines",
                                 "sharpness-curve", "sharpness-lines",
                                 "sharpness-vertical"]


def test_cli_success_line(tmp_path, capsys):
    code = cli_main(["exponent-table", "--calculator", "s_star_vertical",
                     "--out-dir", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("exponent-table") and "PASS" in out
    assert (tmp_path / "exponent-table.json").exists()


def test_cli_error_record(tmp_path, capsys):
    code = cli_main(["exponent-table", "--calculator", "bogus",
                     "--out-dir", str(tmp_path)])
    assert code == 2
    record = json.loads(capsys.readouterr().err)
    assert record["schema_version"] == SCHEMA_VERSION
    assert record["error"]["type"] == "ValueError"
    assert "unknown calculator" in record["error"]["message"]


def test_cli_rejects_unknown_key(capsys):
    code = cli_main(["frostman", "--bogus-knob", "3"])
    assert code == 2
    record = json.loads(capsys.readouterr().err)
    assert "unknown config key" in record["error"]["message"]


def test_cli_equals_override_form(tmp_path, capsys):
    code = cli_main(["cantor", "--k=3", f"--out-dir={tmp_path}"])
    assert code == 0
    lines = (tmp_path / "cantor.csv").read_text().strip().splitlines()
    assert lines[0] == "j,count,expected"
    assert len(lines) == 5
