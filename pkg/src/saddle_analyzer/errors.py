"""
Exception hiërarchie voor de Saddle Analyzer.

Library functies raisen deze excepties; de shell (tools, CLI, MCP server) vangt ze
af en vertaalt ze naar exit codes of error dictionaries.
"""

from typing import List, Optional


class SaddleAnalyzerError(Exception):
    """Basis exceptie voor alle fouten uit dit package."""


class ExpressionSyntaxError(SaddleAnalyzerError, ValueError):
    """Ongeldige expressie tekst, met positie van de fout."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} (positie {position})")


class UnknownVariable(ExpressionSyntaxError):
    """Identifier die niet in de variabelen volgorde is gedeclareerd."""

    def __init__(self, name: str, position: int, text: str = ""):
        self.name = name
        super().__init__(f"Onbekende variabele '{name}'", position, text)


class NonIntegerExponent(ExpressionSyntaxError):
    """Exponent van '^' is geen niet-negatief geheel getal."""


class NonFiniteValue(SaddleAnalyzerError, ArithmeticError):
    """Evaluatie leverde een oneindige of ongedefinieerde waarde op."""


class NoConvergence(SaddleAnalyzerError, ArithmeticError):
    """De Jacobi eigensolver haalde de tolerantie niet binnen het sweep budget."""


class InvalidBound(SaddleAnalyzerError, ValueError):
    """Ongeldige begrenzing voor stapgrootte planning (bijv. L <= 0)."""


class ModeUnsupported(SaddleAnalyzerError, ValueError):
    """De gevraagde modus is niet toepasbaar op deze map."""


class ConfigError(SaddleAnalyzerError, ValueError):
    """Ongeldige configuratie, met een melding per veld."""

    def __init__(self, message: str, field_errors: Optional[List[str]] = None):
        self.field_errors = field_errors or []
        detail = "; ".join(self.field_errors)
        super().__init__(f"{message}: {detail}" if detail else message)
