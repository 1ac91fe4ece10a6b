"""
Dubbele put met één strikt zadelpunt.

f(x, y) = x²/2 + y⁴/4 − y²/2

Kritieke punten: (0, 0) strikt zadel (spectrum {−1, 1}), (0, ±1) lokale minima
(spectrum {1, 2}). Op S = (−1,1)×(−2,2) is sup ‖∇²f‖ = 11, bereikt bij y = ±2.
"""

from typing import List

from ...domain import BoxDomain
from ...expr import Expression
from ..base import BuiltinFieldDefinition, KnownCriticalPoint


class DoubleWellField(BuiltinFieldDefinition):

    @property
    def name(self) -> str:
        return "double-well"

    @property
    def display_name(self) -> str:
        return "Dubbele put"

    @property
    def description(self) -> str:
        return "f(x,y) = x^2/2 + y^4/4 - y^2/2; minima (0,1) en (0,-1), strikt zadel (0,0)"

    @property
    def variable_names(self) -> List[str]:
        return ["x", "y"]

    def build_expression(self) -> Expression:
        x, y = self.symbols()
        return x**2 / 2 + y**4 / 4 - y**2 / 2

    @property
    def critical_points(self) -> List[KnownCriticalPoint]:
        return [
            KnownCriticalPoint(point=[0.0, 1.0], label="(0,1)", expected_class="LocalMin"),
            KnownCriticalPoint(point=[0.0, -1.0], label="(0,-1)", expected_class="LocalMin"),
            KnownCriticalPoint(point=[0.0, 0.0], label="(0,0)", expected_class="StrictSaddle"),
        ]

    @property
    def reference_domain(self) -> BoxDomain:
        return BoxDomain(bounds=[(-1.0, 1.0), (-2.0, 2.0)])
