"""
Recursive descent parser voor de expressie taal.

Grammatica (precedence oplopend):
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # rechts-associatief
    atom   := NUMBER | NAME | FUNC '(' expr ')' | '(' expr ')'

De exponent van '^' wordt constant gevouwen en moet een niet-negatief geheel getal zijn.
"""

import logging
import re
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Union

from ..errors import ExpressionSyntaxError, NonIntegerExponent, UnknownVariable
from .nodes import (
    FUNCTIONS,
    Add,
    Constant,
    Div,
    Expression,
    IntPow,
    Mul,
    Neg,
    Sub,
    Variable,
    VariableOrder,
)

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
    | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
    | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
    | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # number | name | op | end
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """Splits de tekst in tokens; onbekende tekens geven een ExpressionSyntaxError."""
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ExpressionSyntaxError(f"Onverwacht teken '{text[pos]}'", pos, text)
        kind = match.lastgroup or ""
        if kind != "ws":
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: VariableOrder):
        self.text = text
        self.variables = variables
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "end":
            self.index += 1
        return token

    def accept(self, symbol: str) -> bool:
        if self.current.kind == "op" and self.current.text == symbol:
            self.advance()
            return True
        return False

    def expect(self, symbol: str) -> None:
        if not self.accept(symbol):
            found = self.current.text or "einde van de invoer"
            raise ExpressionSyntaxError(f"Verwacht '{symbol}', gevonden '{found}'", self.current.position, self.text)

    def parse(self) -> Expression:
        if self.current.kind == "end":
            raise ExpressionSyntaxError("Lege expressie", 0, self.text)
        result = self.expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(f"Onverwacht token '{self.current.text}'", self.current.position, self.text)
        return result

    def expr(self) -> Expression:
        left = self.term()
        while True:
            if self.accept("+"):
                left = Add(left, self.term())
            elif self.accept("-"):
                left = Sub(left, self.term())
            else:
                return left

    def term(self) -> Expression:
        left = self.unary()
        while True:
            if self.accept("*"):
                left = Mul(left, self.unary())
            elif self.accept("/"):
                left = Div(left, self.unary())
            else:
                return left

    def unary(self) -> Expression:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expression:
        base = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            position = self.advance().position
            exponent_expr = self.unary()
            return IntPow(base, self._integer_exponent(exponent_expr, position))
        return base

    def _integer_exponent(self, e: Expression, position: int) -> int:
        value = _fold_constant(e)
        if value is None:
            raise NonIntegerExponent("Exponent moet een constante zijn", position, self.text)
        if not value.is_integer() or value < 0:
            raise NonIntegerExponent(
                f"Exponent moet een niet-negatief geheel getal zijn, kreeg {value!r}", position, self.text
            )
        return int(value)

    def atom(self) -> Expression:
        token = self.current
        if token.kind == "number":
            self.advance()
            return Constant(float(token.text))
        if token.kind == "name":
            self.advance()
            if token.text in FUNCTIONS:
                self.expect("(")
                argument = self.expr()
                self.expect(")")
                return FUNCTIONS[token.text](argument)
            if token.text not in self.variables:
                raise UnknownVariable(token.text, token.position, self.text)
            return Variable(token.text)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        found = token.text or "einde van de invoer"
        message = f"Verwacht een getal, variabele of '(', gevonden '{found}'"
        raise ExpressionSyntaxError(message, token.position, self.text)


def _fold_constant(e: Expression) -> Optional[float]:
    """Evalueert een variabele-vrije boom; None als er een variabele in zit."""
    from .evaluate import evaluate

    if any(isinstance(node, Variable) for node in e.walk()):
        return None
    return evaluate(e, (), VariableOrder(()))


def parse(text: str, variables: Union[VariableOrder, Sequence[str]]) -> Expression:
    """
    Parse expressie tekst naar een AST.

    Args:
        text: Infix expressie, bijv. "x^2/2 + y^4/4 - y^2/2"
        variables: Gedeclareerde variabelen (volgorde bepaalt coördinaat index)

    Returns:
        Expression: De unieke boom voor de tekst

    Raises:
        ExpressionSyntaxError: Bij ongeldige syntax (met positie)
        UnknownVariable: Bij niet-gedeclareerde identifiers
        NonIntegerExponent: Bij een fractionele of negatieve exponent
    """
    order = VariableOrder.coerce(variables)
    result = _Parser(text, order).parse()
    logger.debug("Expressie geparsed", extra={"expression": text, "variables": list(order)})
    return result


def _identifiers(text: str) -> Iterator[str]:
    for token in tokenize(text):
        if token.kind == "name" and token.text not in FUNCTIONS:
            yield token.text


def infer_variables(text: str) -> VariableOrder:
    """Identifiers in volgorde van eerste voorkomen, functienamen uitgezonderd."""
    seen: List[str] = []
    for name in _identifiers(text):
        if name not in seen:
            seen.append(name)
    return VariableOrder(tuple(seen))
