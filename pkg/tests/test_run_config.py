"""
Tests voor het laden en valideren van experiment configuratiebestanden.
"""

import json
from pathlib import Path

import pytest

from saddle_analyzer.errors import ConfigError
from saddle_analyzer.run_config import RunConfig, load_run_config, parse_run_config

VALID = {
    "experiment": {
        "field": "double-well",
        "domain": "(-1,1)x(-2,2)",
        "alpha": 0.0833,
        "trials": 100,
        "seed": 7,
    },
    "output": {"report": "out/report.json", "trials_csv": "out/trials.csv"},
}


class TestParseRunConfig:
    """Test validatie van de configuratie structuur."""

    def test_valid_dict(self) -> None:
        cfg = parse_run_config(VALID)
        assert isinstance(cfg, RunConfig)
        assert cfg.experiment.trials == 100
        assert str(cfg.experiment.domain) == "(-1,1)x(-2,2)"

    def test_field_errors_name_location(self) -> None:
        data = {"experiment": {**VALID["experiment"], "trials": 0, "colour": "red"}}
        with pytest.raises(ConfigError) as info:
            parse_run_config(data)
        errors = info.value.field_errors
        assert any(e.startswith("experiment.trials:") for e in errors), f"Got {errors}"
        assert any(e.startswith("experiment.colour:") for e in errors), f"Got {errors}"

    def test_missing_experiment(self) -> None:
        with pytest.raises(ConfigError) as info:
            parse_run_config({"output": {}})
        assert any(e.startswith("experiment:") for e in info.value.field_errors)

    def test_unsupported_schema_version(self) -> None:
        with pytest.raises(ConfigError):
            parse_run_config({**VALID, "schema_version": 2})

    def test_json_text(self) -> None:
        cfg = parse_run_config(json.dumps(VALID))
        assert cfg.experiment.seed == 7

    def test_relative_paths_against_base_dir(self, tmp_path: Path) -> None:
        cfg = parse_run_config(VALID, base_dir=tmp_path)
        assert cfg.output.report == (tmp_path / "out" / "report.json").resolve()

    def test_analysis_overrides(self) -> None:
        data = {
            **VALID,
            "experiment": {**VALID["experiment"], "alpha": "auto", "workers": 3},
            "analysis": {"tolerances": {"eps_crit": 1e-7}, "hessian_grid": [11, 21]},
        }
        effective = parse_run_config(data).effective_experiment()
        assert effective.analysis.eps_crit == 1e-7
        assert effective.auto_grid == [11, 21]
        assert effective.workers == 3

    def test_no_overrides_returns_same_config(self) -> None:
        cfg = parse_run_config(VALID)
        assert cfg.effective_experiment() is cfg.experiment


class TestLoadRunConfig:
    """Test het lezen van bestanden."""

    def test_load(self, tmp_path: Path) -> None:
        path = tmp_path / "configs" / "run.json"
        path.parent.mkdir()
        path.write_text(json.dumps(VALID), encoding="utf-8")
        cfg = load_run_config(path)
        assert cfg.output.trials_csv == (path.parent / "out" / "trials.csv").resolve()

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigError, match="Kan configuratie niet lezen"):
            load_run_config(tmp_path / "bestaat-niet.json")

    def test_invalid_json_reports_position(self, tmp_path: Path) -> None:
        path = tmp_path / "broken.json"
        path.write_text('{\n  "experiment": {,\n}', encoding="utf-8")
        with pytest.raises(ConfigError) as info:
            load_run_config(path)
        assert info.value.field_errors[0].startswith("regel 2, kolom")

    def test_example_config_is_valid(self, project_root: Path) -> None:
        examples = sorted((project_root / "configs").glob("*.json"))
        for path in examples:
            cfg = load_run_config(path)
            assert cfg.experiment.trials >= 1
