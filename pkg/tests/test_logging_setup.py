"""
Tests voor de logging configuratie.
"""

import json
import logging

import pytest

from saddle_analyzer.config import settings
from saddle_analyzer.logging_config import FullContentFormatter, setup_logging


@pytest.fixture
def restore_logging():
    yield
    setup_logging(to_file=False)


def test_console_only(restore_logging) -> None:
    logger = setup_logging(log_level="DEBUG", to_file=False)
    assert logger.name == "saddle_analyzer"
    assert logger.level == logging.DEBUG
    assert [type(h).__name__ for h in logger.handlers] == ["StreamHandler"]
    assert logger.handlers[0].level == logging.WARNING


def test_console_level(restore_logging) -> None:
    logger = setup_logging(log_level="INFO", console_level="INFO", to_file=False)
    assert logger.handlers[0].level == logging.INFO


def test_file_logging_writes_json(tmp_path, monkeypatch: pytest.MonkeyPatch, restore_logging) -> None:
    monkeypatch.setattr(settings, "LOG_DIR", str(tmp_path))
    detailed = tmp_path / "detailed.log"
    setup_logging(log_level="INFO", log_file=str(detailed), to_file=True)

    logging.getLogger("saddle_analyzer.analysis").info(
        "Invariantie getest", extra={"field": "double-well", "alpha": 0.5}
    )

    assert "Invariantie getest" in detailed.read_text(encoding="utf-8")
    lines = (tmp_path / "saddle_analyzer.json.log").read_text(encoding="utf-8").strip().splitlines()
    record = json.loads(lines[-1])
    assert record["message"] == "Invariantie getest"
    assert record["field"] == "double-well"
    assert record["alpha"] == 0.5


def test_formatter_truncates_long_messages() -> None:
    formatter = FullContentFormatter("%(message)s")
    record = logging.LogRecord("x", logging.INFO, __file__, 1, "a" * 1500, None, None)
    output = formatter.format(record)
    assert output.startswith("a" * 1000)
    assert "TRUNCATED - Totaal lengte: 1500" in output
