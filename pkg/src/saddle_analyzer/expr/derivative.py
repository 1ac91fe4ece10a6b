"""
Symbolische differentiatie en conservatieve vereenvoudiging.

Vereenvoudiging gebeurt via smart constructors: constant folding plus identiteiten
(0·a→0, 1·a→a, 0+a→a, a−0→a, 0−a→−a, a/1→a, 0/a→0, a^1→a, a^0→1, −(−a)→a).
Er is geen term collectie; de vorm van de boom blijft dicht bij de invoer.
"""

import math
from functools import singledispatch

from .nodes import (
    ONE,
    ZERO,
    Add,
    Constant,
    Cos,
    Div,
    Exp,
    Expression,
    IntPow,
    Mul,
    Neg,
    Sin,
    Sub,
    Variable,
    is_one,
    is_zero,
)


def make_neg(a: Expression) -> Expression:
    if isinstance(a, Constant):
        return Constant(-a.value)
    if isinstance(a, Neg):
        return a.child
    return Neg(a)


def make_add(a: Expression, b: Expression) -> Expression:
    if isinstance(a, Constant) and isinstance(b, Constant):
        return Constant(a.value + b.value)
    if is_zero(a):
        return b
    if is_zero(b):
        return a
    return Add(a, b)


def make_sub(a: Expression, b: Expression) -> Expression:
    if isinstance(a, Constant) and isinstance(b, Constant):
        return Constant(a.value - b.value)
    if is_zero(b):
        return a
    if is_zero(a):
        return make_neg(b)
    return Sub(a, b)


def make_mul(a: Expression, b: Expression) -> Expression:
    if isinstance(a, Constant) and isinstance(b, Constant):
        return Constant(a.value * b.value)
    if is_zero(a) or is_zero(b):
        return ZERO
    if is_one(a):
        return b
    if is_one(b):
        return a
    return Mul(a, b)


def make_div(a: Expression, b: Expression) -> Expression:
    if isinstance(a, Constant) and isinstance(b, Constant) and b.value != 0.0:
        return Constant(a.value / b.value)
    if is_one(b):
        return a
    if is_zero(a) and not is_zero(b):
        return ZERO
    return Div(a, b)


def make_pow(a: Expression, exponent: int) -> Expression:
    if exponent == 0:
        return ONE
    if exponent == 1:
        return a
    if isinstance(a, Constant):
        try:
            return Constant(a.value ** exponent)
        except OverflowError:
            return IntPow(a, exponent)
    return IntPow(a, exponent)


def _fold_unary(node: Expression, child: Expression) -> Expression:
    if isinstance(child, Constant):
        try:
            value = {Sin: math.sin, Cos: math.cos, Exp: math.exp}[type(node)](child.value)
        except OverflowError:
            return type(node)(child)  # type: ignore[call-arg]
        return Constant(value)
    return type(node)(child)  # type: ignore[call-arg]


@singledispatch
def simplify(e: Expression) -> Expression:
    """Bottom-up herbouw met de conservatieve regels."""
    raise TypeError(f"Onbekend node type: {type(e).__name__}")


@simplify.register
def _(e: Constant) -> Expression:
    return e


@simplify.register
def _(e: Variable) -> Expression:
    return e


@simplify.register
def _(e: Neg) -> Expression:
    return make_neg(simplify(e.child))


@simplify.register
def _(e: Add) -> Expression:
    return make_add(simplify(e.left), simplify(e.right))


@simplify.register
def _(e: Sub) -> Expression:
    return make_sub(simplify(e.left), simplify(e.right))


@simplify.register
def _(e: Mul) -> Expression:
    return make_mul(simplify(e.left), simplify(e.right))


@simplify.register
def _(e: Div) -> Expression:
    return make_div(simplify(e.left), simplify(e.right))


@simplify.register
def _(e: IntPow) -> Expression:
    return make_pow(simplify(e.child), e.exponent)


@simplify.register(Sin)
@simplify.register(Cos)
@simplify.register(Exp)
def _(e: Expression) -> Expression:
    return _fold_unary(e, simplify(e.children()[0]))


@singledispatch
def differentiate(e: Expression, v: str) -> Expression:
    """
    Partiële afgeleide ∂e/∂v, vereenvoudigd.

    Args:
        e: Expressie boom
        v: Naam van de variabele (moet in de variabelen volgorde van het veld staan)

    Returns:
        Expression: De afgeleide als nieuwe boom
    """
    raise TypeError(f"Onbekend node type: {type(e).__name__}")


@differentiate.register
def _(e: Constant, v: str) -> Expression:
    return ZERO


@differentiate.register
def _(e: Variable, v: str) -> Expression:
    return ONE if e.name == v else ZERO


@differentiate.register
def _(e: Neg, v: str) -> Expression:
    return make_neg(differentiate(e.child, v))


@differentiate.register
def _(e: Add, v: str) -> Expression:
    return make_add(differentiate(e.left, v), differentiate(e.right, v))


@differentiate.register
def _(e: Sub, v: str) -> Expression:
    return make_sub(differentiate(e.left, v), differentiate(e.right, v))


@differentiate.register
def _(e: Mul, v: str) -> Expression:
    u, w = simplify(e.left), simplify(e.right)
    return make_add(
        make_mul(differentiate(e.left, v), w),
        make_mul(u, differentiate(e.right, v)),
    )


@differentiate.register
def _(e: Div, v: str) -> Expression:
    u, w = simplify(e.left), simplify(e.right)
    du, dw = differentiate(e.left, v), differentiate(e.right, v)
    if is_zero(dw):
        return make_div(du, w)
    return make_div(make_sub(make_mul(du, w), make_mul(u, dw)), make_pow(w, 2))


@differentiate.register
def _(e: IntPow, v: str) -> Expression:
    if e.exponent == 0:
        return ZERO
    du = differentiate(e.child, v)
    u = simplify(e.child)
    return make_mul(make_mul(Constant(e.exponent), make_pow(u, e.exponent - 1)), du)


@differentiate.register
def _(e: Sin, v: str) -> Expression:
    u = simplify(e.child)
    return make_mul(_fold_unary(Cos(u), u), differentiate(e.child, v))


@differentiate.register
def _(e: Cos, v: str) -> Expression:
    u = simplify(e.child)
    return make_mul(make_neg(_fold_unary(Sin(u), u)), differentiate(e.child, v))


@differentiate.register
def _(e: Exp, v: str) -> Expression:
    u = simplify(e.child)
    return make_mul(_fold_unary(Exp(u), u), differentiate(e.child, v))
