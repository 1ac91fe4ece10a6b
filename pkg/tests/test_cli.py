"""
Tests voor de command line interface en de exit codes.
"""

import json
import sys
from pathlib import Path

import pytest

from saddle_analyzer.cli import EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, build_parser, cli_dispatch, main
from saddle_analyzer.logging_config import setup_logging


@pytest.fixture(autouse=True)
def _isolated(clean_metrics):
    yield
    setup_logging(to_file=False)


def _stdout_json(capsys: pytest.CaptureFixture[str]) -> dict:
    return json.loads(capsys.readouterr().out)


class TestExitCodes:
    """Test de drie exit codes: succes, negatief resultaat en gebruik fout."""

    def test_classify_ok(self, capsys) -> None:
        code = cli_dispatch(["classify", "--field", "double-well", "--point", "0,1"])
        assert code == EXIT_OK, f"Expected exit 0, got {code}"
        assert _stdout_json(capsys)["classification"] == "LocalMin"

    def test_invariance_falsified_is_negative(self, capsys) -> None:
        code = cli_dispatch(
            ["invariance", "--field", "double-well", "--domain", "(-1,1)x(-2,2)", "--alpha", "2", "--certify"]
        )
        assert code == EXIT_NEGATIVE
        assert _stdout_json(capsys)["kind"] == "FalsifiedAt"

    def test_invariance_certified(self, capsys) -> None:
        code = cli_dispatch(
            ["invariance", "--field", "double-well", "--domain", "(-1,1)x(-2,2)", "--alpha", "0.0833", "--certify"]
        )
        assert code == EXIT_OK
        assert _stdout_json(capsys)["kind"] == "CertifiedInvariant"

    def test_missing_subcommand(self, capsys) -> None:
        assert cli_dispatch([]) == EXIT_USAGE
        err = capsys.readouterr().err
        assert "fout: Geen subcommando" in err
        assert "oplossing:" in err

    def test_missing_required_flag(self, capsys) -> None:
        assert cli_dispatch(["classify", "--field", "double-well"]) == EXIT_USAGE
        assert "--point" in capsys.readouterr().err

    def test_bad_point(self, capsys) -> None:
        assert cli_dispatch(["classify", "--field", "double-well", "--point", "0,abc"]) == EXIT_USAGE
        assert "--point 0.3,0.1" in capsys.readouterr().err

    def test_bad_grid(self, capsys) -> None:
        code = cli_dispatch(["stepsize", "--field", "double-well", "--domain", "(-1,1)x(-2,2)", "--grid", "41xa"])
        assert code == EXIT_USAGE
        assert "--grid 41x81" in capsys.readouterr().err

    def test_expression_error_is_usage(self, capsys) -> None:
        code = cli_dispatch(["classify", "--field", "x^", "--point", "0"])
        assert code == EXIT_USAGE
        captured = capsys.readouterr()
        assert json.loads(captured.out)["error_type"] == "ExpressionSyntaxError"
        assert "fout:" in captured.err

    def test_unexpected_tool_error_is_usage(self, capsys, monkeypatch: pytest.MonkeyPatch) -> None:
        def broken(*_args, **_kwargs):
            raise TypeError("unsupported operand type(s)")

        monkeypatch.setattr("saddle_analyzer.tools.classify", broken)
        code = cli_dispatch(["classify", "--field", "double-well", "--point", "0,0"])
        assert code == EXIT_USAGE, f"Expected exit 2, got {code}"
        captured = capsys.readouterr()
        assert json.loads(captured.out)["error_type"] == "TypeError"
        assert "fout:" in captured.err

    def test_unexpected_handler_error_is_usage(self, capsys, monkeypatch: pytest.MonkeyPatch) -> None:
        async def broken(*_args, **_kwargs):
            raise TypeError("float() argument must be a string or a real number")

        monkeypatch.setattr("saddle_analyzer.tools.classify_point", broken)
        code = cli_dispatch(["classify", "--field", "double-well", "--point", "0,0"])
        assert code == EXIT_USAGE
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "fout: TypeError" in captured.err

    def test_mode_unsupported_is_usage(self) -> None:
        argv = ["invariance", "--field", "line-of-saddles", "--domain", "(0,1)x(0,1)x(0,1)", "--alpha", "0.1"]
        assert cli_dispatch([*argv, "--certify"]) == EXIT_USAGE


class TestSubcommands:
    """Test de overige subcommando's end-to-end."""

    def test_stepsize_grid(self, capsys) -> None:
        code = cli_dispatch(["stepsize", "--field", "double-well", "--domain", "(-1,1)x(-2,2)", "--grid", "41x81"])
        assert code == EXIT_OK
        result = _stdout_json(capsys)
        assert result["hessian_sup"]["value"] == pytest.approx(11.0)
        assert result["hessian_sup"]["grid"] == [41, 81]

    def test_run_with_out(self, tmp_path: Path, capsys) -> None:
        out = tmp_path / "traj.csv"
        code = cli_dispatch(
            ["run", "--field", "x^2/2 + y^2/2", "--vars", "x,y", "--alpha", "0.5", "--x0", "1,1", "--out", str(out)]
        )
        assert code == EXIT_OK
        result = _stdout_json(capsys)
        assert result["termination"]["verdict"] == "Converged"
        assert out.exists()

    def test_experiment(self, tmp_path: Path, capsys) -> None:
        config = {
            "experiment": {"field": "double-well", "domain": "(-1,1)x(-2,2)", "alpha": 1 / 12, "trials": 8, "seed": 3}
        }
        path = tmp_path / "exp.json"
        path.write_text(json.dumps(config), encoding="utf-8")
        report = tmp_path / "report.json"
        code = cli_dispatch(["experiment", "--config", str(path), "--out", str(report)])
        assert code == EXIT_OK
        assert _stdout_json(capsys)["trials"] == 8
        assert json.loads(report.read_text(encoding="utf-8"))["trials"] == 8

    def test_experiment_invalid_config(self, tmp_path: Path, capsys) -> None:
        path = tmp_path / "exp.json"
        path.write_text(json.dumps({"experiment": {"field": "double-well"}}), encoding="utf-8")
        assert cli_dispatch(["experiment", "--config", str(path)]) == EXIT_USAGE
        assert "experiment.domain" in capsys.readouterr().err

    def test_fields(self, capsys) -> None:
        assert cli_dispatch(["fields"]) == EXIT_OK
        names = {f["name"] for f in _stdout_json(capsys)["fields"]}
        assert names >= {"double-well", "line-of-saddles", "quadratic-bowl"}

    def test_parser_defaults(self) -> None:
        args = build_parser().parse_args(["invariance", "--field", "f", "--domain", "(0,1)", "--alpha", "0.1"])
        assert args.samples == 100_000
        assert not args.certify
        assert args.density is None


@pytest.mark.acceptance
class TestWorkedExamples:
    """De voorbeelden uit de README, via het console script entry point."""

    @pytest.fixture
    def run_main(self, monkeypatch: pytest.MonkeyPatch):
        def _run(*argv: str) -> int:
            monkeypatch.setattr(sys, "argv", ["saddle-analyzer", *argv])
            return main()

        return _run

    def test_stepsize_with_grid(self, run_main, capsys) -> None:
        code = run_main(
            "stepsize", "--field", "double-well", "--domain", "(-1,1)x(-2,2)", "--margin", "0.9167", "--grid", "41x81"
        )
        assert code == EXIT_OK, f"Expected exit 0, got {code}"
        plan = _stdout_json(capsys)["plan"]
        assert plan["L_estimate"] == pytest.approx(11.0)
        assert plan["alpha_sufficient"] == pytest.approx(1 / 12, abs=1e-4)
        assert plan["L_is_lower_bound"]

    def test_stepsize_with_known_lipschitz(self, run_main, capsys) -> None:
        code = run_main(
            "stepsize", "--field", "double-well", "--domain", "(-1,1)x(-2,2)", "--margin", "0.9167", "--lipschitz", "11"
        )
        assert code == EXIT_OK
        result = _stdout_json(capsys)
        assert result["plan"]["alpha_sufficient"] == pytest.approx(1 / 12, abs=1e-4)
        assert not result["plan"]["L_is_lower_bound"]
        assert result["hessian_sup"] is None

    def test_run_large_alpha_cycles(self, run_main, capsys) -> None:
        code = run_main("run", "--field", "double-well", "--alpha", "2", "--x0", "0.3,0.1")
        assert code == EXIT_OK
        termination = _stdout_json(capsys)["termination"]
        assert termination["verdict"] == "Cycling", f"Expected Cycling, got {termination['verdict']}"
        assert 0 in termination["cycle"]["coordinates"]

    def test_classify_bowl_minimum(self, run_main, capsys) -> None:
        code = run_main("classify", "--field", "quadratic-bowl", "--point", "0,0")
        assert code == EXIT_OK
        assert _stdout_json(capsys)["classification"] == "LocalMin"

    def test_invalid_start_point(self, run_main, capsys) -> None:
        code = run_main("run", "--field", "double-well", "--alpha", "2", "--x0", "0.3,abc")
        assert code == EXIT_USAGE
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "fout:" in captured.err and "oplossing:" in captured.err
