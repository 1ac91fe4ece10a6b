"""
Evaluatie van expressie bomen.

compile_expression vertaalt een boom eenmalig naar geneste closures. De scalaire
variant controleert elke tussenwaarde op eindigheid; de gevectoriseerde variant
rekent met numpy arrays (grids) en controleert het eindresultaat.
"""

import math
from functools import singledispatch
from typing import Any, Callable, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from ..errors import NonFiniteValue
from .nodes import (
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
    VariableOrder,
)

ScalarFn = Callable[[Sequence[float]], float]
ArrayFn = Callable[[Sequence[NDArray[np.float64]]], NDArray[np.float64]]


def _finite(value: float, node: Expression) -> float:
    if not math.isfinite(value):
        raise NonFiniteValue(f"Niet-eindige tussenwaarde {value} in '{node}'")
    return value


def _guarded(fn: ScalarFn, node: Expression) -> ScalarFn:
    def run(x: Sequence[float]) -> float:
        try:
            return _finite(fn(x), node)
        except (ZeroDivisionError, OverflowError, ValueError) as e:
            raise NonFiniteValue(f"Evaluatie van '{node}' mislukt: {e}") from e

    return run


@singledispatch
def _compile(e: Expression, variables: VariableOrder) -> ScalarFn:
    raise TypeError(f"Onbekend node type: {type(e).__name__}")


@_compile.register
def _(e: Constant, variables: VariableOrder) -> ScalarFn:
    value = e.value
    return lambda x: value


@_compile.register
def _(e: Variable, variables: VariableOrder) -> ScalarFn:
    try:
        i = variables.index(e.name)
    except ValueError:
        raise ValueError(f"Variabele '{e.name}' ontbreekt in de variabelen volgorde ({variables})") from None
    return lambda x: float(x[i])


@_compile.register
def _(e: Neg, variables: VariableOrder) -> ScalarFn:
    a = _compile(e.child, variables)
    return lambda x: -a(x)


@_compile.register
def _(e: Add, variables: VariableOrder) -> ScalarFn:
    a, b = _compile(e.left, variables), _compile(e.right, variables)
    return _guarded(lambda x: a(x) + b(x), e)


@_compile.register
def _(e: Sub, variables: VariableOrder) -> ScalarFn:
    a, b = _compile(e.left, variables), _compile(e.right, variables)
    return _guarded(lambda x: a(x) - b(x), e)


@_compile.register
def _(e: Mul, variables: VariableOrder) -> ScalarFn:
    a, b = _compile(e.left, variables), _compile(e.right, variables)
    return _guarded(lambda x: a(x) * b(x), e)


@_compile.register
def _(e: Div, variables: VariableOrder) -> ScalarFn:
    a, b = _compile(e.left, variables), _compile(e.right, variables)
    return _guarded(lambda x: a(x) / b(x), e)


@_compile.register
def _(e: IntPow, variables: VariableOrder) -> ScalarFn:
    a = _compile(e.child, variables)
    n = e.exponent
    return _guarded(lambda x: a(x) ** n, e)


@_compile.register
def _(e: Sin, variables: VariableOrder) -> ScalarFn:
    a = _compile(e.child, variables)
    return _guarded(lambda x: math.sin(a(x)), e)


@_compile.register
def _(e: Cos, variables: VariableOrder) -> ScalarFn:
    a = _compile(e.child, variables)
    return _guarded(lambda x: math.cos(a(x)), e)


@_compile.register
def _(e: Exp, variables: VariableOrder) -> ScalarFn:
    a = _compile(e.child, variables)
    return _guarded(lambda x: math.exp(a(x)), e)


@singledispatch
def _compile_array(e: Expression, variables: VariableOrder) -> ArrayFn:
    raise TypeError(f"Onbekend node type: {type(e).__name__}")


@_compile_array.register
def _(e: Constant, variables: VariableOrder) -> ArrayFn:
    value = e.value
    return lambda x: np.full(np.shape(x[0]) if len(x) else (), value)


@_compile_array.register
def _(e: Variable, variables: VariableOrder) -> ArrayFn:
    i = variables.index(e.name)
    return lambda x: np.asarray(x[i], dtype=np.float64)


@_compile_array.register
def _(e: Neg, variables: VariableOrder) -> ArrayFn:
    a = _compile_array(e.child, variables)
    return lambda x: -a(x)


@_compile_array.register
def _(e: Add, variables: VariableOrder) -> ArrayFn:
    a, b = _compile_array(e.left, variables), _compile_array(e.right, variables)
    return lambda x: a(x) + b(x)


@_compile_array.register
def _(e: Sub, variables: VariableOrder) -> ArrayFn:
    a, b = _compile_array(e.left, variables), _compile_array(e.right, variables)
    return lambda x: a(x) - b(x)


@_compile_array.register
def _(e: Mul, variables: VariableOrder) -> ArrayFn:
    a, b = _compile_array(e.left, variables), _compile_array(e.right, variables)
    return lambda x: a(x) * b(x)


@_compile_array.register
def _(e: Div, variables: VariableOrder) -> ArrayFn:
    a, b = _compile_array(e.left, variables), _compile_array(e.right, variables)
    return lambda x: a(x) / b(x)


@_compile_array.register
def _(e: IntPow, variables: VariableOrder) -> ArrayFn:
    a = _compile_array(e.child, variables)
    n = e.exponent
    return lambda x: a(x) ** n


@_compile_array.register
def _(e: Sin, variables: VariableOrder) -> ArrayFn:
    a = _compile_array(e.child, variables)
    return lambda x: np.sin(a(x))


@_compile_array.register
def _(e: Cos, variables: VariableOrder) -> ArrayFn:
    a = _compile_array(e.child, variables)
    return lambda x: np.cos(a(x))


@_compile_array.register
def _(e: Exp, variables: VariableOrder) -> ArrayFn:
    a = _compile_array(e.child, variables)
    return lambda x: np.exp(a(x))


def compile_expression(
    e: Expression,
    variables: Union[VariableOrder, Sequence[str]],
    vectorized: bool = False,
) -> Callable[..., Any]:
    """
    Compileer een boom naar een callable.

    Args:
        e: Expressie boom
        variables: Variabelen volgorde; positie i leest x[i]
        vectorized: Als True accepteert de callable een lijst van numpy arrays
            (één per variabele) en evalueert elementsgewijs

    Returns:
        Callable: float(x) of ndarray(xs); raist NonFiniteValue bij inf/nan
    """
    order = VariableOrder.coerce(variables)
    if not vectorized:
        return _guarded(_compile(e, order), e)

    inner = _compile_array(e, order)

    def run(xs: Sequence[NDArray[np.float64]]) -> NDArray[np.float64]:
        with np.errstate(all="ignore"):
            out = np.asarray(inner(xs), dtype=np.float64)
        if not np.all(np.isfinite(out)):
            raise NonFiniteValue(f"Niet-eindige waarde bij grid evaluatie van '{e}'")
        return out

    return run


def evaluate(e: Expression, point: Sequence[float], variables: Union[VariableOrder, Sequence[str]]) -> float:
    """
    Evalueer e in een punt.

    Raises:
        ValueError: Als de lengte van het punt niet overeenkomt met de variabelen
        NonFiniteValue: Als een tussenwaarde oneindig of ongedefinieerd is
    """
    order = VariableOrder.coerce(variables)
    if len(point) != len(order):
        raise ValueError(f"Punt heeft dimensie {len(point)}, verwacht {len(order)}")
    fn = _guarded(_compile(e, order), e)
    return fn([float(v) for v in point])
