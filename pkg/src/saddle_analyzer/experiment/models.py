"""
Datamodellen voor Monte Carlo experimenten.

ExperimentConfig weigert onbekende sleutels. Het config echo in het rapport en de
SHA-256 in de reproduceerbaarheidsstempel laten `workers` weg, zodat serieel en
parallel draaien byte-identieke rapporten geven.
"""

import hashlib
import json
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..analysis.models import (
    AnalysisTolerances,
    CriticalPointRecord,
    HessianSupEstimate,
    InvarianceVerdict,
    PointClass,
    StepSizePlan,
)
from ..config import settings
from ..domain import BoxDomain
from ..dynamics import DynamicsTolerances, Verdict
from ..fields import KnownCriticalPoint

REPORT_SCHEMA_VERSION = 1
UNCLASSIFIED = "Unclassified"
ExitDetection = Literal["off", "on", "auto"]


class ExperimentConfig(BaseModel):
    """Invoer voor run_experiment."""

    model_config = ConfigDict(extra="forbid")

    field: str = Field(..., description="Builtin naam of expressie tekst")
    variables: Optional[List[str]] = Field(None, description="Variabelen volgorde voor een expressie")
    domain: BoxDomain = Field(..., description="Box waarover startpunten uniform getrokken worden")
    alpha: Union[float, Literal["auto"]] = Field(..., description="Stapgrootte, of 'auto' voor margin / L")
    margin: float = Field(default_factory=lambda: settings.experiment.DEFAULT_MARGIN, gt=0, lt=1)
    auto_grid: Optional[List[int]] = Field(None, description="Grid per as voor de L schatting bij alpha='auto'")
    trials: int = Field(..., ge=1)
    seed: int = Field(0, ge=0, lt=2**64, description="Master seed (64-bit)")
    budget: int = Field(default_factory=lambda: settings.dynamics.BUDGET, ge=1)
    tolerances: DynamicsTolerances = Field(default_factory=DynamicsTolerances)
    analysis: AnalysisTolerances = Field(default_factory=AnalysisTolerances)
    known_points: Optional[List[KnownCriticalPoint]] = Field(
        None, description="Bekende kritieke punten of lijnen; default de analytische punten van een builtin"
    )
    matching_radius: float = Field(default_factory=lambda: settings.experiment.MATCH_RADIUS, gt=0)
    exit_detection: ExitDetection = Field(
        "off", description="off: domein is alleen de prior; on: stop bij verlaten; auto: on tenzij gecertificeerd"
    )
    workers: Optional[int] = Field(
        default_factory=lambda: settings.experiment.WORKERS, ge=1, exclude=True, description="None: automatisch"
    )

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, v: Union[float, str]) -> Union[float, str]:
        if isinstance(v, float) and not (v >= 0 and v < float("inf")):
            raise ValueError(f"alpha moet eindig en >= 0 zijn, kreeg {v}")
        return v

    @model_validator(mode="after")
    def validate_dimensions(self) -> "ExperimentConfig":
        if self.auto_grid is not None and len(self.auto_grid) != self.domain.dimension:
            raise ValueError(f"auto_grid heeft {len(self.auto_grid)} assen, domein heeft {self.domain.dimension}")
        for kp in self.known_points or []:
            if len(kp.point) != self.domain.dimension:
                raise ValueError(f"Bekend punt {kp.point} heeft niet de dimensie van het domein")
        return self

    def canonical_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))

    def sha256(self) -> str:
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()


class TrialOutcome(BaseModel):
    """Resultaat van één trial; limit is aanwezig dan en slechts dan als het verdict Converged is."""

    trial: int
    initial_point: List[float]
    verdict: Verdict
    iterations: int
    final_point: List[float]
    final_gradnorm: Optional[float] = None
    limit: Optional[CriticalPointRecord] = None
    polished: bool = Field(False, description="True als refine_critical het limietpunt verfijnde")
    match: Optional[int] = Field(None, description="Index van het dichtstbijzijnde bekende punt")
    non_finite: bool = False

    @model_validator(mode="after")
    def check_limit(self) -> "TrialOutcome":
        if (self.limit is not None) != (self.verdict is Verdict.CONVERGED):
            raise ValueError("limit moet aanwezig zijn dan en slechts dan als het verdict Converged is")
        return self

    @property
    def class_label(self) -> str:
        return self.limit.classification.value if self.limit is not None else UNCLASSIFIED


class BasinEntry(BaseModel):
    index: int
    label: str
    point: List[float]
    direction: Optional[List[float]] = None
    expected_class: Optional[str] = None
    count: int
    fraction: float


class ReproducibilityStamp(BaseModel):
    seed: int
    version: str
    config_sha256: str


class ExperimentReport(BaseModel):
    """Geaggregeerde basin statistiek; tellingen sommeren tot het aantal trials."""

    schema_version: int = REPORT_SCHEMA_VERSION
    config: Dict[str, Any]
    field_name: str
    dimension: int
    alpha: float
    step_size_plan: Optional[StepSizePlan] = None
    hessian_sup: Optional[HessianSupEstimate] = None
    exit_detection_active: bool
    invariance: Optional[InvarianceVerdict] = None
    trials: int
    verdict_counts: Dict[str, int]
    class_counts: Dict[str, int]
    basins: List[BasinEntry] = Field(default_factory=list)
    unmatched: int
    saddle_hit_fraction: float
    budget_exhausted_fraction: float
    non_finite_count: int
    wall_clock_seconds: float
    stamp: ReproducibilityStamp
    outcomes: List[TrialOutcome] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_conservation(self) -> "ExperimentReport":
        if sum(self.verdict_counts.values()) != self.trials:
            raise ValueError("Verdict tellingen sommeren niet tot het aantal trials")
        if sum(self.class_counts.values()) != self.trials:
            raise ValueError("Klasse tellingen sommeren niet tot het aantal trials")
        return self

    @staticmethod
    def empty_class_counts() -> Dict[str, int]:
        return {c.value: 0 for c in PointClass} | {UNCLASSIFIED: 0}

    @staticmethod
    def empty_verdict_counts() -> Dict[str, int]:
        return {v.value: 0 for v in Verdict}
