"""
Scalaire velden en de catalogus van builtin voorbeelden.

Usage:
    >>> from saddle_analyzer.fields import get_catalog, resolve_field
    >>> field = resolve_field("double-well")
    >>> field.gradient([0.5, 0.5])
    array([ 0.5  , -0.375])
"""

from .base import BuiltinFieldDefinition, KnownCriticalPoint
from .registry import FieldCatalog, get_catalog, register_field, resolve_field
from .scalar_field import CheckReport, ScalarField, build_field, fd_check, grad, hessian

__all__ = [
    "ScalarField",
    "build_field",
    "grad",
    "hessian",
    "fd_check",
    "CheckReport",
    "BuiltinFieldDefinition",
    "KnownCriticalPoint",
    "FieldCatalog",
    "get_catalog",
    "register_field",
    "resolve_field",
]
