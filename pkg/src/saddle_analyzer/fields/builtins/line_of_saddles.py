"""
Veld met een lijn van niet-geïsoleerde strikte zadelpunten.

f(x, y, z) = 2xy + 2xz − 2x − y − z

∇f = (2y + 2z − 2, 2x − 1, 2x − 1) is nul precies op de lijn (1/2, w, 1 − w).
De Hessiaan is constant [[0,2,2],[2,0,0],[2,0,0]] met spectrum {−2√2, 0, 2√2}.
Er zijn geen minima; vrijwel alle trajecten laten f naar −∞ gaan.
"""

from typing import List

from ...domain import BoxDomain
from ...expr import Expression
from ..base import BuiltinFieldDefinition, KnownCriticalPoint


class LineOfSaddlesField(BuiltinFieldDefinition):
    """Bilineaire functie op R^3 met een lijn van zadelpunten."""

    @property
    def name(self) -> str:
        return "line-of-saddles"

    @property
    def display_name(self) -> str:
        return "Lijn van zadelpunten"

    @property
    def description(self) -> str:
        return "f(x,y,z) = 2xy + 2xz - 2x - y - z; kritieke punten vormen de lijn (1/2, w, 1-w)"

    @property
    def variable_names(self) -> List[str]:
        return ["x", "y", "z"]

    def build_expression(self) -> Expression:
        x, y, z = self.symbols()
        return 2 * x * y + 2 * x * z - 2 * x - y - z

    @property
    def critical_points(self) -> List[KnownCriticalPoint]:
        return [
            KnownCriticalPoint(
                point=[0.5, 0.0, 1.0],
                direction=[0.0, 1.0, -1.0],
                label="(1/2, w, 1-w)",
                expected_class="StrictSaddle",
            )
        ]

    @property
    def reference_domain(self) -> BoxDomain:
        return BoxDomain.cube(0.0, 1.0, 3)
