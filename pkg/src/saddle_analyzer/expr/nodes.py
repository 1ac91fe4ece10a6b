"""
Expressie boom voor multivariate scalaire functies.

Alle nodes zijn immutable (frozen dataclasses) en dus veilig te delen tussen threads.
Operator overloading maakt het mogelijk builtin functies direct als boom op te bouwen
zonder de parser te gebruiken.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterator, Sequence, Tuple, Union

Operand = Union["Expression", float, int]


class Expression:
    """Basis klasse voor alle expressie nodes."""

    precedence: int = 100

    def children(self) -> Tuple["Expression", ...]:
        return ()

    def walk(self) -> Iterator["Expression"]:
        """Pre-order doorloop van de boom."""
        yield self
        for child in self.children():
            yield from child.walk()

    def __add__(self, other: Operand) -> "Expression":
        return Add(self, as_expression(other))

    def __radd__(self, other: Operand) -> "Expression":
        return Add(as_expression(other), self)

    def __sub__(self, other: Operand) -> "Expression":
        return Sub(self, as_expression(other))

    def __rsub__(self, other: Operand) -> "Expression":
        return Sub(as_expression(other), self)

    def __mul__(self, other: Operand) -> "Expression":
        return Mul(self, as_expression(other))

    def __rmul__(self, other: Operand) -> "Expression":
        return Mul(as_expression(other), self)

    def __truediv__(self, other: Operand) -> "Expression":
        return Div(self, as_expression(other))

    def __rtruediv__(self, other: Operand) -> "Expression":
        return Div(as_expression(other), self)

    def __pow__(self, exponent: int) -> "Expression":
        return IntPow(self, exponent)

    def __neg__(self) -> "Expression":
        return Neg(self)

    def _wrap(self, child: "Expression", right_side: bool = False) -> str:
        # Rechter operand met gelijke precedence krijgt haakjes (a - (b - c))
        if child.precedence < self.precedence or (right_side and child.precedence == self.precedence):
            return f"({child})"
        return str(child)


@dataclass(frozen=True)
class Constant(Expression):
    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", float(self.value))

    @property
    def precedence(self) -> int:  # type: ignore[override]
        return 100 if self.value >= 0 else 3

    def __str__(self) -> str:
        v = self.value
        if v.is_integer() and abs(v) < 1e15:
            return str(int(v))
        return repr(v)


@dataclass(frozen=True)
class Variable(Expression):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Neg(Expression):
    child: Expression
    precedence = 3

    def children(self) -> Tuple[Expression, ...]:
        return (self.child,)

    def __str__(self) -> str:
        return f"-{self._wrap(self.child)}"


@dataclass(frozen=True)
class _Binary(Expression):
    left: Expression
    right: Expression
    symbol = "?"

    def children(self) -> Tuple[Expression, ...]:
        return (self.left, self.right)

    def __str__(self) -> str:
        return f"{self._wrap(self.left)} {self.symbol} {self._wrap(self.right, right_side=True)}"


@dataclass(frozen=True)
class Add(_Binary):
    precedence = 1
    symbol = "+"


@dataclass(frozen=True)
class Sub(_Binary):
    precedence = 1
    symbol = "-"


@dataclass(frozen=True)
class Mul(_Binary):
    precedence = 2
    symbol = "*"


@dataclass(frozen=True)
class Div(_Binary):
    precedence = 2
    symbol = "/"


@dataclass(frozen=True)
class IntPow(Expression):
    child: Expression
    exponent: int
    precedence = 4

    def __post_init__(self) -> None:
        if isinstance(self.exponent, bool) or not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError(f"Exponent moet een niet-negatief geheel getal zijn, kreeg {self.exponent!r}")

    def children(self) -> Tuple[Expression, ...]:
        return (self.child,)

    def __str__(self) -> str:
        # Grondtal met precedence <= 4 (ook een IntPow) krijgt haakjes
        base = str(self.child) if self.child.precedence > self.precedence else f"({self.child})"
        return f"{base}^{self.exponent}"


@dataclass(frozen=True)
class _Function(Expression):
    child: Expression
    function_name = "?"

    def children(self) -> Tuple[Expression, ...]:
        return (self.child,)

    def __str__(self) -> str:
        return f"{self.function_name}({self.child})"


@dataclass(frozen=True)
class Sin(_Function):
    function_name = "sin"


@dataclass(frozen=True)
class Cos(_Function):
    function_name = "cos"


@dataclass(frozen=True)
class Exp(_Function):
    function_name = "exp"


FUNCTIONS = {"sin": Sin, "cos": Cos, "exp": Exp}

ZERO = Constant(0.0)
ONE = Constant(1.0)


def as_expression(value: Operand) -> Expression:
    """Converteer een getal naar Constant; expressies blijven ongewijzigd."""
    if isinstance(value, Expression):
        return value
    return Constant(float(value))


def free_variables(e: Expression) -> FrozenSet[str]:
    """Namen van alle variabelen die in de boom voorkomen."""
    return frozenset(node.name for node in e.walk() if isinstance(node, Variable))


def is_zero(e: Expression) -> bool:
    return isinstance(e, Constant) and e.value == 0.0


def is_one(e: Expression) -> bool:
    return isinstance(e, Constant) and e.value == 1.0


@dataclass(frozen=True)
class VariableOrder:
    """
    Geordende lijst van unieke variabelen namen.

    De positie in de lijst bepaalt de coördinaat index voor gradient en Hessiaan.
    """
    names: Tuple[str, ...]

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"Variabelen namen moeten uniek zijn: {list(names)}")
        for name in names:
            if not name.isidentifier() or name in FUNCTIONS:
                raise ValueError(f"Ongeldige variabele naam: '{name}'")

    @classmethod
    def of(cls, *names: str) -> "VariableOrder":
        return cls(tuple(names))

    @classmethod
    def coerce(cls, value: Union["VariableOrder", Sequence[str]]) -> "VariableOrder":
        if isinstance(value, VariableOrder):
            return value
        return cls(tuple(value))

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __str__(self) -> str:
        return ",".join(self.names)
