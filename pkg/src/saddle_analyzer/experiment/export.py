"""JSON rapport en per-trial CSV export."""

import csv
import json
import logging
from pathlib import Path
from typing import Union

from .models import ExperimentReport

logger = logging.getLogger(__name__)


def report_to_dict(report: ExperimentReport, include_wall_clock: bool = True) -> dict:
    """JSON-klare dict zonder de trial lijst."""
    exclude = {"outcomes"} if include_wall_clock else {"outcomes", "wall_clock_seconds"}
    return report.model_dump(mode="json", exclude=exclude)


def write_report_json(report: ExperimentReport, path: Union[str, Path]) -> Path:
    """Schrijf het rapport (zonder trials) als JSON met gesorteerde sleutels."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info(f"Rapport geschreven: {path}", extra={"path": str(path), "trials": report.trials})
    return path


def write_trials_csv(report: ExperimentReport, path: Union[str, Path]) -> Path:
    """Eén rij per trial: trial,x0_1..x0_N,verdict,class,match,final_gradnorm."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["trial", *[f"x0_{i + 1}" for i in range(report.dimension)], "verdict", "class", "match", "final_gradnorm"]
        )
        for o in report.outcomes:
            writer.writerow(
                [
                    o.trial,
                    *[repr(v) for v in o.initial_point],
                    o.verdict.value,
                    o.class_label,
                    "" if o.match is None else o.match,
                    "" if o.final_gradnorm is None else repr(o.final_gradnorm),
                ]
            )
    logger.info(f"Trials geschreven: {path}", extra={"path": str(path), "rows": len(report.outcomes)})
    return path
