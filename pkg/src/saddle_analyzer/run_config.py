"""
RunConfig: JSON configuratiebestand voor het `experiment` subcommando.

Structuur:
    {
      "schema_version": 1,
      "experiment": { ... ExperimentConfig ... },
      "analysis": {"tolerances": {...}, "hessian_grid": [41, 81]},
      "output": {"report": "out/report.json", "trials_csv": "out/trials.csv"}
    }

Onbekende sleutels worden geweigerd; relatieve paden gelden ten opzichte van het
configuratiebestand.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .analysis.models import AnalysisTolerances
from .errors import ConfigError
from .experiment import ExperimentConfig

logger = logging.getLogger(__name__)

RUN_CONFIG_SCHEMA_VERSION = 1


class AnalysisBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tolerances: Optional[AnalysisTolerances] = None
    hessian_grid: Optional[List[int]] = Field(None, description="Grid per as voor de L schatting")


class OutputBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    report: Optional[Path] = None
    trials_csv: Optional[Path] = None


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: int = RUN_CONFIG_SCHEMA_VERSION
    experiment: ExperimentConfig
    analysis: Optional[AnalysisBlock] = None
    output: OutputBlock = Field(default_factory=OutputBlock)

    @field_validator("schema_version")
    @classmethod
    def validate_schema(cls, v: int) -> int:
        if v != RUN_CONFIG_SCHEMA_VERSION:
            raise ValueError(f"Niet ondersteunde schema_version {v}, verwacht {RUN_CONFIG_SCHEMA_VERSION}")
        return v

    def effective_experiment(self) -> ExperimentConfig:
        """ExperimentConfig met de overrides uit het analysis blok."""
        if self.analysis is None:
            return self.experiment
        update: Dict[str, Any] = {}
        if self.analysis.tolerances is not None:
            update["analysis"] = self.analysis.tolerances
        if self.analysis.hessian_grid is not None and self.experiment.auto_grid is None:
            update["auto_grid"] = self.analysis.hessian_grid
        if not update:
            return self.experiment
        merged = {**self.experiment.model_dump(), **update, "workers": self.experiment.workers}
        return ExperimentConfig.model_validate(merged)


def _field_errors(e: ValidationError) -> List[str]:
    return [f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in e.errors()]


def parse_experiment_config(data: Dict[str, Any]) -> ExperimentConfig:
    """Valideer een losse ExperimentConfig dict (MCP tool invoer)."""
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError("Ongeldige experiment configuratie", _field_errors(e)) from e


def parse_run_config(data: Union[str, dict], base_dir: Optional[Path] = None) -> RunConfig:
    """
    Valideer een RunConfig uit JSON tekst of een dict.

    Raises:
        ConfigError: Met één melding per ongeldig veld
    """
    try:
        cfg = RunConfig.model_validate_json(data) if isinstance(data, str) else RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError("Ongeldige configuratie", _field_errors(e)) from e

    if base_dir is not None:
        for name in ("report", "trials_csv"):
            p = getattr(cfg.output, name)
            if p is not None and not p.is_absolute():
                setattr(cfg.output, name, (base_dir / p).resolve())
    return cfg


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """
    Lees een RunConfig uit een JSON bestand.

    Raises:
        ConfigError: Bij een onleesbaar bestand, ongeldige JSON of ongeldige velden
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Kan configuratie niet lezen: {path}", [str(e)]) from e
    try:
        json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Ongeldige JSON in {path}", [f"regel {e.lineno}, kolom {e.colno}: {e.msg}"]) from e

    cfg = parse_run_config(text, base_dir=path.resolve().parent)
    logger.info(f"Configuratie geladen: {path}", extra={"path": str(path), "field": cfg.experiment.field})
    return cfg
