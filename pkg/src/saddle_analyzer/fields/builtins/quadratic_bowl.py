"""Kwadratische kom f(x, y) = (x² + y²)/2 met Hessiaan I en uniek minimum in de oorsprong."""

from typing import List

from ...domain import BoxDomain
from ...expr import Expression
from ..base import BuiltinFieldDefinition, KnownCriticalPoint


class QuadraticBowlField(BuiltinFieldDefinition):

    @property
    def name(self) -> str:
        return "quadratic-bowl"

    @property
    def display_name(self) -> str:
        return "Kwadratische kom"

    @property
    def description(self) -> str:
        return "f(x,y) = x^2/2 + y^2/2; uniek minimum in (0,0)"

    @property
    def variable_names(self) -> List[str]:
        return ["x", "y"]

    def build_expression(self) -> Expression:
        x, y = self.symbols()
        return x**2 / 2 + y**2 / 2

    @property
    def critical_points(self) -> List[KnownCriticalPoint]:
        return [KnownCriticalPoint(point=[0.0, 0.0], label="(0,0)", expected_class="LocalMin")]

    @property
    def reference_domain(self) -> BoxDomain:
        return BoxDomain.cube(-1.0, 1.0, 2)
