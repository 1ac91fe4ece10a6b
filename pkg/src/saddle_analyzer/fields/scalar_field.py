"""
ScalarField: kostfunctie met exacte (symbolische) gradient en Hessiaan.

Alle afgeleide expressies worden eenmalig bij het bouwen berekend en gecompileerd.
Na constructie is een veld immutable en veilig voor gelijktijdige evaluatie.
"""

import logging
import math
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, Field

from ..config import settings
from ..errors import NonFiniteValue
from ..expr import Expression, VariableOrder, compile_expression, differentiate, parse, simplify
from ..expr.nodes import is_zero
from ..linalg import SymmetricMatrix, Vector, as_vector

logger = logging.getLogger(__name__)


class ScalarField:
    """
    Twee keer differentieerbare functie f: R^N -> R.

    Attributes:
        name: Naam voor logging en rapporten (builtin naam of expressie tekst)
        variables: Variabelen volgorde (positie = coördinaat index)
        expression: De boom van f
    """

    def __init__(self, expression: Expression, variables: Union[VariableOrder, Sequence[str]], name: str = ""):
        self._variables = VariableOrder.coerce(variables)
        self._expression = simplify(expression)
        self._name = name or str(expression)
        n = len(self._variables)
        if n < 1:
            raise ValueError("Een veld heeft minstens één variabele nodig")

        self._gradient: Tuple[Expression, ...] = tuple(differentiate(expression, v) for v in self._variables)
        upper: List[Expression] = []
        for i in range(n):
            for j in range(i, n):
                upper.append(differentiate(self._gradient[i], self._variables.names[j]))
        self._hessian_upper: Tuple[Expression, ...] = tuple(upper)

        self._value_fn = compile_expression(self._expression, self._variables)
        self._gradient_fns = [compile_expression(g, self._variables) for g in self._gradient]
        self._hessian_fns = [compile_expression(h, self._variables) for h in self._hessian_upper]
        self._gradient_grid_fns = [compile_expression(g, self._variables, vectorized=True) for g in self._gradient]
        self._hessian_grid_fns = [
            compile_expression(h, self._variables, vectorized=True) for h in self._hessian_upper
        ]

        logger.debug(
            f"Veld gebouwd: {self._name}",
            extra={"field": self._name, "dimension": n, "hessian_entries": len(upper)},
        )

    @classmethod
    def from_text(cls, text: str, variables: Union[VariableOrder, Sequence[str]], name: str = "") -> "ScalarField":
        order = VariableOrder.coerce(variables)
        return cls(parse(text, order), order, name=name or text)

    @property
    def name(self) -> str:
        return self._name

    @property
    def variables(self) -> VariableOrder:
        return self._variables

    @property
    def dimension(self) -> int:
        return len(self._variables)

    @property
    def expression(self) -> Expression:
        return self._expression

    @property
    def gradient_expressions(self) -> Tuple[Expression, ...]:
        return self._gradient

    def _packed_index(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        n = self.dimension
        return i * n - i * (i - 1) // 2 + (j - i)

    def hessian_expression(self, i: int, j: int) -> Expression:
        return self._hessian_upper[self._packed_index(i, j)]

    def is_separable(self) -> bool:
        """True als alle symbolische off-diagonaal Hessiaan entries de nul constante zijn."""
        n = self.dimension
        return all(is_zero(self.hessian_expression(i, j)) for i in range(n) for j in range(i + 1, n))

    def _checked_point(self, point: ArrayLike) -> List[float]:
        x = as_vector(point)
        if x.shape != (self.dimension,):
            raise ValueError(f"Punt heeft dimensie {x.size}, verwacht {self.dimension}")
        return [float(v) for v in x]

    def value(self, point: ArrayLike) -> float:
        return float(self._value_fn(self._checked_point(point)))

    def gradient(self, point: ArrayLike) -> Vector:
        x = self._checked_point(point)
        return np.array([fn(x) for fn in self._gradient_fns], dtype=np.float64)

    def hessian(self, point: ArrayLike) -> SymmetricMatrix:
        x = self._checked_point(point)
        return SymmetricMatrix(self.dimension, np.array([fn(x) for fn in self._hessian_fns], dtype=np.float64))

    def value_and_gradient(self, point: ArrayLike) -> Tuple[float, Vector]:
        x = self._checked_point(point)
        return float(self._value_fn(x)), np.array([fn(x) for fn in self._gradient_fns], dtype=np.float64)

    def gradient_component_on_grid(self, i: int, values: Sequence[NDArray[np.float64]]) -> NDArray[np.float64]:
        """Gevectoriseerde evaluatie van (∇f)_i; values bevat één array per variabele."""
        return np.asarray(self._gradient_grid_fns[i](values))

    def gradient_at_points(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        """
        Gradienten voor een (n, N) array punten.

        Rijen waarvan de evaluatie niet eindig is worden NaN in plaats van een exceptie.
        """
        pts = np.asarray(points, dtype=np.float64)
        columns = [pts[:, i] for i in range(self.dimension)]
        try:
            return np.stack([self.gradient_component_on_grid(i, columns) for i in range(self.dimension)], axis=1)
        except NonFiniteValue:
            out = np.full(pts.shape, np.nan)
            for row, x in enumerate(pts):
                try:
                    out[row] = self.gradient(x)
                except NonFiniteValue:
                    pass
            return out

    def hessian_entry_on_grid(self, i: int, j: int, values: Sequence[NDArray[np.float64]]) -> NDArray[np.float64]:
        return np.asarray(self._hessian_grid_fns[self._packed_index(i, j)](values))

    def packed_hessians_at_points(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        """Gepakte bovendriehoek van de Hessiaan per punt, shape (n, N(N+1)/2)."""
        pts = np.asarray(points, dtype=np.float64)
        columns = [pts[:, i] for i in range(self.dimension)]
        n = self.dimension
        entries = [self.hessian_entry_on_grid(i, j, columns) for i in range(n) for j in range(i, n)]
        return np.stack([np.broadcast_to(e, pts.shape[:1]) for e in entries], axis=1)

    def describe(self) -> Dict[str, Any]:
        return {
            "name": self._name,
            "variables": list(self._variables),
            "expression": str(self._expression),
            "gradient": [str(g) for g in self._gradient],
            "separable": self.is_separable(),
        }

    def __repr__(self) -> str:
        return f"ScalarField({self._name!r}, variables={list(self._variables)})"


def build_field(f_text: str, variables: Union[VariableOrder, Sequence[str]]) -> ScalarField:
    """
    Bouw een veld uit expressie tekst.

    Raises:
        ExpressionSyntaxError: Bij ongeldige tekst (inclusief UnknownVariable, NonIntegerExponent)
    """
    return ScalarField.from_text(f_text, variables)


def grad(field: ScalarField, point: ArrayLike) -> Vector:
    """Componentgewijze evaluatie van de gradient expressies."""
    return field.gradient(point)


def hessian(field: ScalarField, point: ArrayLike) -> SymmetricMatrix:
    """Geëvalueerde Hessiaan als SymmetricMatrix."""
    return field.hessian(point)


class NonFinitePoint(BaseModel):
    index: int = Field(..., description="Index van het punt in de invoer")
    message: str = Field(..., description="Foutmelding van de evaluatie")


class CheckReport(BaseModel):
    """Resultaat van de finite-difference vergelijking."""
    field: str = Field(..., description="Naam van het veld")
    points_checked: int = Field(..., description="Aantal punten met eindige evaluatie")
    max_gradient_error: float = Field(0.0, description="Maximale relatieve fout van de gradient")
    max_hessian_error: float = Field(0.0, description="Maximale relatieve fout van de Hessiaan")
    gradient_tol: float
    hessian_tol: float
    gradient_step: float
    hessian_step: float
    passed: bool
    failing_points: List[int] = Field(default_factory=list, description="Indices van punten boven tolerantie")
    non_finite: List[NonFinitePoint] = Field(default_factory=list)


def _relative_error(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _fd_gradient(f: Callable[[Vector], float], x: Vector, h: float) -> Vector:
    out = np.empty_like(x)
    for i in range(x.size):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        # Werkelijk genomen stap, na afronding
        out[i] = (f(xp) - f(xm)) / (xp[i] - xm[i])
    return out


def _fd_hessian(f: Callable[[Vector], float], x: Vector, h: float) -> NDArray[np.float64]:
    n = x.size
    out = np.empty((n, n))
    fx = f(x)
    for i in range(n):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        hi = (xp[i] - xm[i]) / 2.0
        out[i, i] = (f(xp) - 2.0 * fx + f(xm)) / (hi * hi)
        for j in range(i + 1, n):
            corners = []
            for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                y = x.copy()
                y[i] += si * h
                y[j] += sj * h
                corners.append(f(y))
            yi, yj = x.copy(), x.copy()
            yi[i] += h
            yj[j] += h
            step_i, step_j = yi[i] - x[i], yj[j] - x[j]
            out[i, j] = out[j, i] = (corners[0] - corners[1] - corners[2] + corners[3]) / (4.0 * step_i * step_j)
    return out


def fd_check(
    field: ScalarField,
    points: Sequence[ArrayLike],
    h: Optional[float] = None,
    tol: float = 1e-5,
    hessian_h: Optional[float] = None,
    hessian_tol: float = 1e-4,
) -> CheckReport:
    """
    Vergelijk de symbolische gradient en Hessiaan met centrale differenties van f.

    Args:
        field: Het te controleren veld
        points: Evaluatiepunten
        h: Stap voor de gradient (default settings.analysis.FD_H_GRADIENT)
        tol: Tolerantie voor de relatieve gradient fout
        hessian_h: Stap voor de Hessiaan (default settings.analysis.FD_H_HESSIAN)
        hessian_tol: Tolerantie voor de relatieve Hessiaan fout

    Returns:
        CheckReport: Maxima per afgeleide orde en pass/fail; niet-eindige punten per punt vastgelegd
    """
    h = settings.analysis.FD_H_GRADIENT if h is None else h
    hessian_h = settings.analysis.FD_H_HESSIAN if hessian_h is None else hessian_h
    if h <= 0 or hessian_h <= 0:
        raise ValueError(f"Stapgrootte moet positief zijn (h={h}, hessian_h={hessian_h})")

    max_grad = 0.0
    max_hess = 0.0
    checked = 0
    failing: List[int] = []
    non_finite: List[NonFinitePoint] = []

    for index, point in enumerate(points):
        x = as_vector(point)
        try:
            symbolic_grad = field.gradient(x)
            symbolic_hess = field.hessian(x).to_dense()
            numeric_grad = _fd_gradient(field.value, x, h)
            numeric_hess = _fd_hessian(field.value, x, hessian_h)
        except NonFiniteValue as e:
            non_finite.append(NonFinitePoint(index=index, message=str(e)))
            continue

        checked += 1
        grad_err = max(_relative_error(a, b) for a, b in zip(symbolic_grad, numeric_grad))
        hess_err = max(
            _relative_error(a, b) for a, b in zip(symbolic_hess.ravel(), numeric_hess.ravel())
        )
        if not (math.isfinite(grad_err) and math.isfinite(hess_err)):
            non_finite.append(NonFinitePoint(index=index, message="Niet-eindige finite-difference waarde"))
            continue
        max_grad = max(max_grad, grad_err)
        max_hess = max(max_hess, hess_err)
        if grad_err > tol or hess_err > hessian_tol:
            failing.append(index)

    passed = not failing
    log = logger.info if passed else logger.warning
    log(
        f"fd_check {field.name}: {'geslaagd' if passed else 'gefaald'}",
        extra={
            "field": field.name,
            "points_checked": checked,
            "max_gradient_error": max_grad,
            "max_hessian_error": max_hess,
            "non_finite": len(non_finite),
        },
    )
    return CheckReport(
        field=field.name,
        points_checked=checked,
        max_gradient_error=max_grad,
        max_hessian_error=max_hess,
        gradient_tol=tol,
        hessian_tol=hessian_tol,
        gradient_step=h,
        hessian_step=hessian_h,
        passed=passed,
        failing_points=failing[: settings.analysis.VIOLATION_LIMIT],
        non_finite=non_finite[: settings.analysis.VIOLATION_LIMIT],
    )
