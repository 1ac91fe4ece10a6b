"""Builtin velden: de drie referentie voorbeelden."""

from .double_well import DoubleWellField
from .line_of_saddles import LineOfSaddlesField
from .quadratic_bowl import QuadraticBowlField

__all__ = ["DoubleWellField", "LineOfSaddlesField", "QuadraticBowlField"]
