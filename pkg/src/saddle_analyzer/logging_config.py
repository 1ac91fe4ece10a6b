"""
Logging configuratie voor de Saddle Analyzer.
Console logging naar stderr, optioneel file logging met JSON formatting.
"""
import logging.config
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from .config import settings


class FullContentFormatter(logging.Formatter):
    """Formatter die extreem lange berichten afkapt met een lengte-indicatie."""

    MAX_LENGTH = 1000

    def format(self, record: logging.LogRecord) -> str:
        if isinstance(record.msg, str) and len(record.msg) > self.MAX_LENGTH:
            record.msg = f"{record.msg[:self.MAX_LENGTH]}... [TRUNCATED - Totaal lengte: {len(record.msg)} karakters]"
        return super().format(record)


def setup_logging(
    log_level: str = "INFO",
    log_file: Optional[str] = None,
    console_level: str = "WARNING",
    to_file: Optional[bool] = None,
) -> logging.Logger:
    """
    Configureert logging voor de applicatie.

    Args:
        log_level: Level voor de saddle_analyzer loggers
        log_file: Pad naar het detailed log bestand (default: timestamp in LOG_DIR)
        console_level: Level voor de stderr handler
        to_file: Schrijf ook naar LOG_DIR (default: settings.LOG_TO_FILE)

    Returns:
        logging.Logger: De package logger
    """
    if to_file is None:
        to_file = settings.LOG_TO_FILE

    handlers: Dict[str, Dict[str, Any]] = {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "detailed",
            "stream": "ext://sys.stderr",
            "level": console_level,
        },
    }
    app_handlers = ["console"]

    log_file_path: Optional[Path] = None
    if to_file:
        logs_dir = Path(settings.LOG_DIR)
        logs_dir.mkdir(parents=True, exist_ok=True)
        if log_file is None:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            log_file_path = logs_dir / f"saddle_analyzer_{timestamp}.log"
        else:
            log_file_path = Path(log_file)

        handlers["file_detailed"] = {
            "class": "logging.FileHandler",
            "filename": str(log_file_path),
            "formatter": "detailed",
            "mode": "a",
            "encoding": "utf-8",
            "level": "DEBUG",
        }
        handlers["file_json"] = {
            "class": "logging.FileHandler",
            "filename": str(logs_dir / "saddle_analyzer.json.log"),
            "formatter": "json",
            "mode": "a",
            "encoding": "utf-8",
            "level": "DEBUG",
        }
        app_handlers += ["file_detailed", "file_json"]

    logging_config = {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "detailed": {
                "()": FullContentFormatter,
                "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            },
            "json": {
                "()": "pythonjsonlogger.json.JsonFormatter",
                "format": "%(asctime)s %(name)s %(levelname)s %(message)s %(funcName)s %(lineno)d",
            },
        },
        "handlers": handlers,
        "loggers": {
            "saddle_analyzer": {
                "handlers": app_handlers,
                "level": log_level,
                "propagate": False,
            },
            "fastmcp": {
                "handlers": app_handlers,
                "level": "WARNING",
                "propagate": False,
            },
        },
        "root": {
            "handlers": ["console"],
            "level": "WARNING",
        },
    }

    logging.config.dictConfig(logging_config)

    logger = logging.getLogger("saddle_analyzer")
    logger.debug(
        f"Logging geconfigureerd - Level: {log_level}, File: {log_file_path or 'geen'}",
        extra={"log_level": log_level, "to_file": bool(to_file)},
    )
    return logger
