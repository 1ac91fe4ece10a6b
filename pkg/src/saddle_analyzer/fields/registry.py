"""
Catalogus van builtin velden.

Beheert alle geregistreerde BuiltinFieldDefinition objecten en voorziet in:
- Registratie en lookup op naam
- Het oplossen van een veld specificatie (builtin naam of expressie tekst)
- Metadata voor het `fields` subcommando en de MCP resources
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Union

from ..expr import VariableOrder, infer_variables
from .base import BuiltinFieldDefinition
from .scalar_field import ScalarField

logger = logging.getLogger(__name__)


class FieldCatalog:
    """Registry van builtin velden, geïndexeerd op CLI naam."""

    def __init__(self) -> None:
        self._fields: Dict[str, BuiltinFieldDefinition] = {}

    def register(self, definition: BuiltinFieldDefinition) -> None:
        """
        Registreer een builtin veld.

        Raises:
            ValueError: Als een veld met deze naam al geregistreerd is
        """
        if definition.name in self._fields:
            raise ValueError(
                f"Veld '{definition.name}' is al geregistreerd. Gebruik unregister() eerst om te vervangen."
            )
        self._fields[definition.name] = definition
        logger.debug(
            f"Veld geregistreerd: {definition.display_name} ({definition.name})", extra={"field": definition.name}
        )

    def unregister(self, name: str) -> bool:
        if name in self._fields:
            del self._fields[name]
            return True
        return False

    def get(self, name: str) -> Optional[BuiltinFieldDefinition]:
        return self._fields.get(name)

    def names(self) -> List[str]:
        return list(self._fields.keys())

    def all(self) -> List[BuiltinFieldDefinition]:
        return list(self._fields.values())

    def describe_all(self) -> List[Dict[str, Any]]:
        return [definition.describe() for definition in self._fields.values()]

    def __contains__(self, name: object) -> bool:
        return name in self._fields


# Global singleton catalog instance
_global_catalog: Optional[FieldCatalog] = None


def get_catalog() -> FieldCatalog:
    """Haal de globale catalogus op; registreert de builtins bij eerste gebruik."""
    global _global_catalog
    if _global_catalog is None:
        from .builtins import DoubleWellField, LineOfSaddlesField, QuadraticBowlField

        _global_catalog = FieldCatalog()
        for definition in (LineOfSaddlesField(), DoubleWellField(), QuadraticBowlField()):
            _global_catalog.register(definition)
    return _global_catalog


def register_field(definition: BuiltinFieldDefinition) -> None:
    """Convenience functie om een veld bij de globale catalogus te registreren."""
    get_catalog().register(definition)


def resolve_field(
    source: str,
    variables: Optional[Union[VariableOrder, Sequence[str]]] = None,
) -> ScalarField:
    """
    Bouw een veld uit een builtin naam of een expressie tekst.

    Args:
        source: Builtin naam ("double-well") of expressie ("x^2 + y^2")
        variables: Variabelen voor een expressie; zonder opgave worden ze afgeleid
            in volgorde van eerste voorkomen

    Raises:
        ExpressionSyntaxError: Als source geen builtin is en niet parseert
    """
    definition = get_catalog().get(source)
    if definition is not None:
        if variables is not None and list(VariableOrder.coerce(variables)) != definition.variable_names:
            raise ValueError(
                f"Builtin '{source}' heeft variabelen {definition.variable_names}, kreeg {list(variables)}"
            )
        return definition.field
    order = infer_variables(source) if variables is None else VariableOrder.coerce(variables)
    return ScalarField.from_text(source, order)
