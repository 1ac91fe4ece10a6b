"""
Saddle Analyzer - gradient descent met gecertificeerde stapgrootte.

Onderdelen:
- expr: expressie taal met symbolische differentiatie
- linalg: symmetrische eigensolver (cyclische Jacobi)
- fields: ScalarField en de catalogus van builtin voorbeelden
- dynamics: de map g(x) = x − α∇f(x) en de iteratie daarvan
- analysis: classificatie, stapgrootte, diffeomorfisme en invariantie checks
- experiment: Monte Carlo harness voor bassin statistieken
"""

__version__ = "0.1.0"
__author__ = "Uw Naam"
__email__ = "uw.email@example.com"

__all__ = ["__version__", "__author__", "__email__"]
