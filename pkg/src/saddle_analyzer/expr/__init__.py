"""
Expressie taal voor multivariate scalaire functies.

Usage:
    >>> from saddle_analyzer.expr import parse, differentiate, evaluate, VariableOrder
    >>> xy = VariableOrder.of("x", "y")
    >>> f = parse("x^2/2 + y^4/4 - y^2/2", xy)
    >>> evaluate(differentiate(f, "y"), [0.5, 0.5], xy)
    -0.375
"""

from .derivative import differentiate, simplify
from .evaluate import compile_expression, evaluate
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
    free_variables,
)
from .parser import infer_variables, parse, tokenize

__all__ = [
    # Nodes
    "Expression",
    "Constant",
    "Variable",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "IntPow",
    "Sin",
    "Cos",
    "Exp",
    "VariableOrder",
    "free_variables",
    # Operaties
    "parse",
    "tokenize",
    "infer_variables",
    "differentiate",
    "simplify",
    "evaluate",
    "compile_expression",
]
