"""
Base interface voor builtin kostfuncties.

Elke builtin definieert zijn expressie direct als boom (met letterlijke rationale
coëfficiënten), zodat golden tests niet van de parser afhangen.
"""

import logging
from abc import ABC, abstractmethod
from functools import cached_property
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from ..domain import BoxDomain
from ..expr import Expression, Variable, VariableOrder
from .scalar_field import ScalarField

logger = logging.getLogger(__name__)


class KnownCriticalPoint(BaseModel):
    """Een bekend kritiek punt, of een lijn van kritieke punten (punt + richting)."""

    point: List[float] = Field(..., description="Coördinaten van het punt (of een punt op de lijn)")
    direction: Optional[List[float]] = Field(None, description="Richting van de lijn; None voor een punt")
    label: str = Field("", description="Leesbare naam voor rapporten")
    expected_class: Optional[str] = Field(None, description="Verwachte classificatie (LocalMin, StrictSaddle, ...)")

    @field_validator("direction")
    @classmethod
    def validate_direction(cls, v: Optional[List[float]]) -> Optional[List[float]]:
        if v is not None and not any(c != 0.0 for c in v):
            raise ValueError("Richting van een lijn mag niet de nulvector zijn")
        return v

    @model_validator(mode="after")
    def validate_dimensions(self) -> "KnownCriticalPoint":
        if self.direction is not None and len(self.direction) != len(self.point):
            raise ValueError(f"Richting heeft dimensie {len(self.direction)}, punt heeft {len(self.point)}")
        return self

    @property
    def is_line(self) -> bool:
        return self.direction is not None

    def distance(self, x: np.ndarray) -> float:
        """Euclidische afstand; voor een lijn de punt-tot-lijn afstand."""
        p = np.asarray(self.point, dtype=np.float64)
        diff = np.asarray(x, dtype=np.float64) - p
        if self.direction is None:
            return float(np.linalg.norm(diff))
        d = np.asarray(self.direction, dtype=np.float64)
        d = d / np.linalg.norm(d)
        return float(np.linalg.norm(diff - np.dot(diff, d) * d))

    def representatives(self, parameters: List[float]) -> List[List[float]]:
        """Punten op de lijn voor de gegeven parameters (of alleen het punt)."""
        if self.direction is None:
            return [list(self.point)]
        p = np.asarray(self.point)
        d = np.asarray(self.direction)
        return [list(map(float, p + t * d)) for t in parameters]

    def label_or_default(self) -> str:
        if self.label:
            return self.label
        coords = ",".join(f"{c:g}" for c in self.point)
        if self.direction is None:
            return f"({coords})"
        return f"({coords}) + t({','.join(f'{c:g}' for c in self.direction)})"


class BuiltinFieldDefinition(ABC):
    """
    Basis interface voor builtin velden.

    Een definitie levert:
    - Naam (CLI contract) en leesbare naam
    - De expressie boom en variabelen volgorde
    - De analytisch bekende kritieke punten of lijnen
    - Een referentie domein voor oracle checks en experimenten
    """

    # ==================== METADATA ====================

    @property
    @abstractmethod
    def name(self) -> str:
        """Identifier zoals gebruikt op de command line (bijv. "double-well")."""

    @property
    @abstractmethod
    def display_name(self) -> str:
        """Leesbare naam."""

    @property
    @abstractmethod
    def description(self) -> str:
        """Korte beschrijving met de formule."""

    @property
    @abstractmethod
    def variable_names(self) -> List[str]:
        """Variabelen in coördinaat volgorde."""

    # ==================== WISKUNDE ====================

    @abstractmethod
    def build_expression(self) -> Expression:
        """De kostfunctie als boom, met letterlijke coëfficiënten."""

    @property
    @abstractmethod
    def critical_points(self) -> List[KnownCriticalPoint]:
        """Analytisch bekende kritieke punten (of lijnen)."""

    @property
    @abstractmethod
    def reference_domain(self) -> BoxDomain:
        """Domein voor oracle checks en default experimenten."""

    # ==================== AFGELEID ====================

    @property
    def variables(self) -> VariableOrder:
        return VariableOrder(tuple(self.variable_names))

    def symbols(self) -> List[Variable]:
        return [Variable(name) for name in self.variable_names]

    @cached_property
    def field(self) -> ScalarField:
        """Het gebouwde veld (eenmalig, daarna gedeeld)."""
        return ScalarField(self.build_expression(), self.variables, name=self.name)

    def describe(self) -> Dict[str, Any]:
        """Metadata voor de catalogus resource en het `fields` subcommando."""
        return {
            "name": self.name,
            "display_name": self.display_name,
            "description": self.description,
            "variables": self.variable_names,
            "expression": str(self.field.expression),
            "gradient": [str(g) for g in self.field.gradient_expressions],
            "reference_domain": str(self.reference_domain),
            "critical_points": [
                {
                    "label": cp.label_or_default(),
                    "point": cp.point,
                    "direction": cp.direction,
                    "expected_class": cp.expected_class,
                }
                for cp in self.critical_points
            ],
        }
