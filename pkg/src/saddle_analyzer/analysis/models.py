"""
Datamodellen voor analyse resultaten.

Alle rapporten zijn pydantic modellen zodat ze direct naar JSON serialiseren
(CLI output, MCP tools, experiment rapporten). Lijsten met overtredingen worden
afgekapt op settings.analysis.VIOLATION_LIMIT.
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from ..config import settings
from ..domain import BoxDomain


class PointClass(str, Enum):
    """Tweede-orde classificatie van een punt."""
    LOCAL_MIN = "LocalMin"
    STRICT_SADDLE = "StrictSaddle"
    DEGENERATE = "Degenerate"
    NOT_CRITICAL = "NotCritical"


class AnalysisTolerances(BaseModel):
    eps_crit: float = Field(default_factory=lambda: settings.analysis.EPS_CRIT, gt=0)
    eps_eig_rel: float = Field(default_factory=lambda: settings.analysis.EPS_EIG_REL, gt=0)


class CriticalPointRecord(BaseModel):
    """Classificatie van één punt via gradient norm en Hessiaan spectrum."""
    location: List[float]
    gradient_norm: float
    lambda_min: float
    lambda_max: float
    eigenvalues: List[float] = Field(..., description="Volledig Hessiaan spectrum, oplopend")
    eps_eig: float = Field(..., description="Gebruikte eigenwaarde tolerantie 1e-6·max(1, ‖H‖)")
    classification: PointClass

    @model_validator(mode="after")
    def check_consistency(self) -> "CriticalPointRecord":
        c = self.classification
        if c is PointClass.STRICT_SADDLE and not self.lambda_min < -self.eps_eig:
            raise ValueError("StrictSaddle vereist lambda_min < -eps_eig")
        if c is PointClass.LOCAL_MIN and not self.lambda_min > self.eps_eig:
            raise ValueError("LocalMin vereist lambda_min > eps_eig")
        if c is PointClass.DEGENERATE and abs(self.lambda_min) > self.eps_eig:
            raise ValueError("Degenerate vereist |lambda_min| <= eps_eig")
        return self


class StepSizePlan(BaseModel):
    """Voldoende (α < 1/L) en noodzakelijke (α < 2/γ) stapgrootte grenzen."""
    L_estimate: float = Field(..., gt=0, description="Schatting van sup ‖∇²f‖ over het domein")
    L_is_lower_bound: bool = Field(True, description="True als L uit grid sampling komt (ondergrens)")
    margin: float
    alpha_sufficient: float = Field(..., description="margin / L")
    gamma: Optional[float] = None
    alpha_necessary_sup: Optional[float] = Field(None, description="2 / gamma")

    @model_validator(mode="after")
    def check_bound(self) -> "StepSizePlan":
        if not self.alpha_sufficient * self.L_estimate < 1.0:
            raise ValueError("alpha_sufficient * L_estimate moet < 1 zijn")
        return self


class HessianSupEstimate(BaseModel):
    """Grid schatting van sup ‖∇²f‖; altijd een ondergrens op de afsluiting."""
    value: float
    maximizer: List[float]
    domain: str
    grid: List[int]
    refine_rounds: int
    points_evaluated: int
    lower_bound: bool = True


class InvarianceKind(str, Enum):
    CERTIFIED_INVARIANT = "CertifiedInvariant"
    FALSIFIED_AT = "FalsifiedAt"
    UNDETERMINED = "Undetermined"


class AxisBound(BaseModel):
    """Beeld bereik van één componentmap g_i over [lo_i, hi_i]."""
    axis: int
    lo: float
    hi: float
    image_min: float = Field(..., description="Minimum van g_i op het grid")
    image_max: float = Field(..., description="Maximum van g_i op het grid")
    error_term: float = Field(..., description="max |g_i'| op het grid × grid spacing")
    margin: float = Field(..., description="Afstand van het opgevulde bereik tot de rand (positief = binnen)")

    @property
    def image_abs_max(self) -> float:
        return max(abs(self.image_min), abs(self.image_max))


class InvarianceVerdict(BaseModel):
    kind: InvarianceKind
    mode: str
    domain: str
    alpha: float
    point: Optional[List[float]] = Field(None, description="Punt waarvan het beeld buiten ligt (FalsifiedAt)")
    image: Optional[List[float]] = None
    worst_margin: Optional[float] = Field(None, description="Kleinste marge over alle samples/assen")
    axes: List[AxisBound] = Field(default_factory=list)
    samples_checked: int = 0
    note: str = ""


class PairViolation(BaseModel):
    x: List[float]
    y: List[float]
    ratio: float


class LipschitzReport(BaseModel):
    """Steekproef van ‖∇f(x) − ∇f(y)‖ <= L‖x − y‖."""
    domain: str
    L: float
    pairs_sampled: int
    pairs_skipped: int = Field(..., description="Paren met ‖x − y‖ < 1e-12")
    violation_count: int
    violations: List[PairViolation] = Field(default_factory=list)
    worst_ratio: float
    worst_pair: Optional[PairViolation] = None
    passed: bool


class EigenFailure(BaseModel):
    point: List[float]
    scaled_eigenvalues: List[float] = Field(..., description="Spectrum van α∇²f")
    jacobian_eigenvalues: List[float] = Field(..., description="Spectrum van I − α∇²f")


class Collision(BaseModel):
    x: List[float]
    y: List[float]
    image_distance: float


class DiffeoReport(BaseModel):
    """Lokale inverteerbaarheid (spectrum) en injectiviteit steekproef van g."""
    domain: str
    alpha: float
    points_checked: int
    eigen_failures: int
    first_eigen_failure: Optional[EigenFailure] = None
    max_scaled_eigenvalue: float = Field(..., description="max |αλ| over alle punten")
    eigen_test_passed: bool
    pairs_checked: int
    collisions: int
    first_collision: Optional[Collision] = None
    min_contraction_ratio: Optional[float] = Field(None, description="min ‖g(x) − g(y)‖ / ‖x − y‖")
    injectivity_passed: bool

    @property
    def passed(self) -> bool:
        return self.eigen_test_passed and self.injectivity_passed


class DescentViolation(BaseModel):
    point: List[float]
    value: float
    next_value: float


class DescentReport(BaseModel):
    domain: str
    alpha: float
    samples: int
    violation_count: int
    violations: List[DescentViolation] = Field(default_factory=list)
    passed: bool


class MinimumStability(BaseModel):
    """Stabiliteit van een lokaal minimum als vast punt van g."""
    point: List[float]
    hessian_norm: float
    jacobian_eigenvalues: List[float]
    jacobian_spectral_radius: float
    lower_bound: float = Field(..., description="α‖∇²f‖ − 1, ondergrens voor de spectraal radius")
    unstable: bool = Field(..., description="Spectraal radius > 1: geen generieke convergentie naar dit minimum")


class SplittingReport(BaseModel):
    """Dimensies van de stabiele, centrum en instabiele eigenruimten van Dg(x)."""
    point: List[float]
    alpha: float
    jacobian_eigenvalues: List[float]
    stable: int
    center: int
    unstable: int


class GammaEstimate(BaseModel):
    gamma: float
    points_used: List[List[float]]
    local_minima_only: bool


def cap(items: list) -> list:
    """Afkappen op de violation limiet."""
    return items[: settings.analysis.VIOLATION_LIMIT]


__all__ = [
    "BoxDomain",
    "PointClass",
    "AnalysisTolerances",
    "CriticalPointRecord",
    "StepSizePlan",
    "HessianSupEstimate",
    "InvarianceKind",
    "AxisBound",
    "InvarianceVerdict",
    "PairViolation",
    "LipschitzReport",
    "EigenFailure",
    "Collision",
    "DiffeoReport",
    "DescentViolation",
    "DescentReport",
    "MinimumStability",
    "SplittingReport",
    "GammaEstimate",
    "cap",
]
