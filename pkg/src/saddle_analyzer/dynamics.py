"""
Gradient descent map g(x) = x − α∇f(x) en de iteratie daarvan.

iterate stopt bij de eerste van: Converged, Diverged, ExitedDomain, Cycling,
BudgetExhausted. Periode-2 gedrag wordt gecertificeerd voor de volledige vector of
voor een deelverzameling coördinaten (de overige coördinaten mogen op een begrensde
baan blijven zwerven).
"""

import csv
import json
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Deque, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, Field

from . import __version__
from .config import settings
from .domain import BoxDomain
from .errors import NonFiniteValue
from .fields import ScalarField
from .linalg import Vector, as_vector

logger = logging.getLogger(__name__)

TRAJECTORY_SCHEMA_VERSION = 1


class Verdict(str, Enum):
    """Reden waarom een traject stopte."""
    CONVERGED = "Converged"
    DIVERGED = "Diverged"
    EXITED_DOMAIN = "ExitedDomain"
    CYCLING = "Cycling"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class GDMap:
    """
    De gradient descent map voor een veld en stapgrootte.

    alpha = 0 is toegestaan en geeft de identiteit (randgeval voor diagnostiek).
    """
    field: ScalarField
    alpha: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.alpha) or self.alpha < 0:
            raise ValueError(f"Stapgrootte moet eindig en >= 0 zijn, kreeg {self.alpha}")

    def __call__(self, x: ArrayLike) -> Vector:
        return step(self, x)


class DynamicsTolerances(BaseModel):
    """Stopcriteria; defaults komen uit settings.dynamics."""
    eps_grad: float = Field(default_factory=lambda: settings.dynamics.EPS_GRAD, gt=0)
    eps_step: float = Field(default_factory=lambda: settings.dynamics.EPS_STEP, gt=0)
    r_div: float = Field(default_factory=lambda: settings.dynamics.R_DIV, gt=0)
    f_div: float = Field(default_factory=lambda: settings.dynamics.F_DIV)
    eps_cycle: float = Field(default_factory=lambda: settings.dynamics.EPS_CYCLE, gt=0)
    cycle_window: int = Field(default_factory=lambda: settings.dynamics.CYCLE_WINDOW, ge=1)


class CycleCertificate(BaseModel):
    """Bewijs van periode-2 gedrag over `persistence` opeenvolgende k."""
    period: int = 2
    coordinates: List[int] = Field(..., description="Coördinaten die exact alterneren (alle bij volledige vector)")
    full_vector: bool = Field(..., description="True als de hele vector periode 2 heeft")
    pair: Tuple[List[float], List[float]] = Field(..., description="Laatste twee iterates (representatief paar)")
    persistence: int
    max_return_distance: float = Field(..., description="max |x_{k+2} − x_k| over het venster")
    min_step: float = Field(..., description="min |x_{k+1} − x_k| over het venster")


class Termination(BaseModel):
    verdict: Verdict
    step_index: Optional[int] = Field(None, description="Iteratie index waarop het domein verlaten werd")
    limit: Optional[List[float]] = Field(None, description="Limietpunt bij Converged")
    cycle: Optional[CycleCertificate] = None
    non_finite: bool = Field(False, description="Diverged door een niet-eindige evaluatie")
    non_convergent: bool = Field(False, description="Budget op zonder convergentie")
    message: str = ""


@dataclass
class Trajectory:
    """Opgenomen iterates van één run, met de reden van stoppen."""
    field_name: str
    alpha: float
    initial_point: Vector
    indices: List[int]
    iterates: List[Vector]
    values: List[float]
    gradnorms: List[float]
    iterations: int
    stride: int
    termination: Termination
    final_point: Vector
    final_value: float
    final_gradnorm: float
    dimension: int = field(init=False)

    def __post_init__(self) -> None:
        self.dimension = int(self.initial_point.size)

    @property
    def verdict(self) -> Verdict:
        return self.termination.verdict


class TrajectorySummary(BaseModel):
    """JSON sidecar naast de CSV export."""
    schema_version: int = TRAJECTORY_SCHEMA_VERSION
    version: str = __version__
    field_name: str
    alpha: float
    initial_point: List[float]
    iterations: int
    stride: int
    recorded: int
    termination: Termination
    final_point: List[float]
    final_value: Optional[float]
    final_gradnorm: Optional[float]

    @classmethod
    def from_trajectory(cls, t: Trajectory) -> "TrajectorySummary":
        return cls(
            field_name=t.field_name,
            alpha=t.alpha,
            initial_point=t.initial_point.tolist(),
            iterations=t.iterations,
            stride=t.stride,
            recorded=len(t.indices),
            termination=t.termination,
            final_point=t.final_point.tolist(),
            final_value=t.final_value if math.isfinite(t.final_value) else None,
            final_gradnorm=t.final_gradnorm if math.isfinite(t.final_gradnorm) else None,
        )


def step(m: GDMap, x: ArrayLike) -> Vector:
    """
    Eén stap x − α∇f(x).

    Raises:
        NonFiniteValue: Als de gradient of het resultaat niet eindig is
    """
    xv = as_vector(x)
    if not np.all(np.isfinite(xv)):
        raise NonFiniteValue(f"Niet-eindig punt {xv.tolist()}")
    out = xv - m.alpha * m.field.gradient(xv)
    if not np.all(np.isfinite(out)):
        raise NonFiniteValue(f"Stap vanuit {xv.tolist()} gaf een niet-eindig resultaat")
    return out


def detect_cycle(
    window: Sequence[ArrayLike],
    eps_cycle: Optional[float] = None,
    persistence: Optional[int] = None,
) -> Optional[CycleCertificate]:
    """
    Zoek periode-2 gedrag in de laatste iterates.

    Een certificaat wordt uitgegeven als voor de laatste `persistence` waarden van k
    geldt: |x_{k+2} − x_k| <= ε en |x_{k+1} − x_k| > 10ε. Eerst voor de volledige
    vector (normen), anders per coördinaat.

    Args:
        window: Opeenvolgende iterates, oudste eerst
        eps_cycle: ε (default settings.dynamics.EPS_CYCLE)
        persistence: Aantal opeenvolgende k (default settings.dynamics.CYCLE_WINDOW)

    Returns:
        Optional[CycleCertificate]: None als er geen periode-2 gedrag is
    """
    eps = settings.dynamics.EPS_CYCLE if eps_cycle is None else eps_cycle
    w = settings.dynamics.CYCLE_WINDOW if persistence is None else persistence
    if len(window) < max(4, w + 2):
        return None

    xs = np.array([as_vector(v) for v in window[-(w + 2):]])
    returns = np.abs(xs[2:] - xs[:-2])  # (w, N): |x_{k+2} − x_k|
    steps = np.abs(xs[1:-1] - xs[:-2])  # (w, N): |x_{k+1} − x_k|
    pair = (xs[-2].tolist(), xs[-1].tolist())

    return_norms = np.linalg.norm(returns, axis=1)
    step_norms = np.linalg.norm(steps, axis=1)
    if np.all(return_norms <= eps) and np.all(step_norms > 10 * eps):
        return CycleCertificate(
            coordinates=list(range(xs.shape[1])),
            full_vector=True,
            pair=pair,
            persistence=w,
            max_return_distance=float(return_norms.max()),
            min_step=float(step_norms.min()),
        )

    cycling = np.all(returns <= eps, axis=0) & np.all(steps > 10 * eps, axis=0)
    if not np.any(cycling):
        return None
    coords = [int(i) for i in np.flatnonzero(cycling)]
    return CycleCertificate(
        coordinates=coords,
        full_vector=False,
        pair=pair,
        persistence=w,
        max_return_distance=float(returns[:, coords].max()),
        min_step=float(steps[:, coords].min()),
    )


class CycleMonitor:
    """
    Incrementele vorm van detect_cycle voor gebruik binnen iterate.

    Houdt per coördinaat (en voor de volledige vector) bij hoeveel opeenvolgende k
    aan de voorwaarde voldoen; bij voldoende lengte bevestigt detect_cycle.
    """

    def __init__(self, eps_cycle: float, persistence: int):
        self.eps = eps_cycle
        self.persistence = persistence
        self.window: Deque[Vector] = deque(maxlen=max(4, persistence + 2))
        self._coord_streak: Optional[np.ndarray] = None
        self._full_streak = 0

    def push(self, x: Vector) -> Optional[CycleCertificate]:
        self.window.append(x)
        if len(self.window) < 3:
            return None
        x0, x1, x2 = self.window[-3], self.window[-2], self.window[-1]
        ret = np.abs(x2 - x0)
        stp = np.abs(x1 - x0)
        ok = (ret <= self.eps) & (stp > 10 * self.eps)
        if self._coord_streak is None:
            self._coord_streak = np.zeros(x.size, dtype=np.int64)
        self._coord_streak = np.where(ok, self._coord_streak + 1, 0)
        full_ok = float(np.linalg.norm(ret)) <= self.eps and float(np.linalg.norm(stp)) > 10 * self.eps
        self._full_streak = self._full_streak + 1 if full_ok else 0

        if self._full_streak >= self.persistence or int(self._coord_streak.max()) >= self.persistence:
            return detect_cycle(list(self.window), self.eps, self.persistence)
        return None


def record_stride(dimension: int, budget: int) -> int:
    """Stride 1 zolang N·budget <= MAX_RECORDED_VALUES, anders evenredig groter."""
    limit = settings.dynamics.MAX_RECORDED_VALUES
    return max(1, math.ceil(dimension * budget / limit))


def iterate(
    m: GDMap,
    x0: ArrayLike,
    domain: Optional[BoxDomain] = None,
    budget: Optional[int] = None,
    tolerances: Optional[DynamicsTolerances] = None,
    stride: Optional[int] = None,
) -> Trajectory:
    """
    Itereer de map vanaf x0 tot een stopcriterium.

    Args:
        m: Gradient descent map
        x0: Startpunt
        domain: Optioneel domein; verlaten van de afsluiting geeft ExitedDomain
        budget: Maximaal aantal stappen (default settings.dynamics.BUDGET)
        tolerances: Stopcriteria (default uit settings)
        stride: Opname stride (default record_stride)

    Returns:
        Trajectory: Opgenomen iterates (elke stride-de plus de laatste twee) en verdict
    """
    budget = settings.dynamics.BUDGET if budget is None else budget
    if budget < 1:
        raise ValueError(f"Budget moet >= 1 zijn, kreeg {budget}")
    tol = tolerances or DynamicsTolerances()
    x = as_vector(x0)
    n = x.size
    if n != m.field.dimension:
        raise ValueError(f"Startpunt heeft dimensie {n}, veld heeft {m.field.dimension}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"Startpunt is niet eindig: {x.tolist()}")
    stride = record_stride(n, budget) if stride is None else stride

    indices: List[int] = []
    iterates: List[Vector] = []
    values: List[float] = []
    gradnorms: List[float] = []
    tail: Deque[Tuple[int, Vector, float, float]] = deque(maxlen=2)

    def record(k: int, point: Vector, f: float, gnorm: float) -> None:
        tail.append((k, point, f, gnorm))
        if k % stride == 0:
            indices.append(k)
            iterates.append(point)
            values.append(f)
            gradnorms.append(gnorm)

    monitor = CycleMonitor(tol.eps_cycle, tol.cycle_window)
    monitor.push(x)
    alpha = m.alpha
    field_ = m.field
    k = 0
    step_norm = math.inf
    certificate: Optional[CycleCertificate] = None
    termination: Termination
    f = gnorm = math.nan

    while True:
        try:
            f, g = field_.value_and_gradient(x)
        except NonFiniteValue as e:
            f = gnorm = math.nan
            record(k, x, f, gnorm)
            termination = Termination(verdict=Verdict.DIVERGED, non_finite=True, message=str(e))
            break
        gnorm = math.sqrt(float(g @ g))
        record(k, x, f, gnorm)

        if k >= 1 and gnorm <= tol.eps_grad and step_norm <= tol.eps_step:
            termination = Termination(verdict=Verdict.CONVERGED, limit=x.tolist())
            break
        if math.sqrt(float(x @ x)) > tol.r_div or f < tol.f_div:
            termination = Termination(verdict=Verdict.DIVERGED, message="Drempel voor divergentie overschreden")
            break
        if domain is not None and not domain.contains_closed(x):
            termination = Termination(verdict=Verdict.EXITED_DOMAIN, step_index=k)
            break
        if certificate is not None:
            termination = Termination(verdict=Verdict.CYCLING, cycle=certificate)
            break
        if k >= budget:
            termination = Termination(
                verdict=Verdict.BUDGET_EXHAUSTED,
                non_convergent=True,
                message=f"Geen stopcriterium binnen {budget} stappen",
            )
            break

        x_next = x - alpha * g
        if not np.all(np.isfinite(x_next)):
            k += 1
            record(k, x_next, math.nan, math.nan)
            x = x_next
            f = gnorm = math.nan
            termination = Termination(verdict=Verdict.DIVERGED, non_finite=True, message="Niet-eindige iterate")
            break
        diff = x_next - x
        step_norm = math.sqrt(float(diff @ diff))
        x = x_next
        k += 1
        certificate = monitor.push(x)

    # Laatste twee iterates altijd opnemen
    for k_t, x_t, f_t, g_t in tail:
        if not indices or k_t > indices[-1]:
            indices.append(k_t)
            iterates.append(x_t)
            values.append(f_t)
            gradnorms.append(g_t)

    trajectory = Trajectory(
        field_name=field_.name,
        alpha=alpha,
        initial_point=as_vector(x0),
        indices=indices,
        iterates=iterates,
        values=values,
        gradnorms=gradnorms,
        iterations=k,
        stride=stride,
        termination=termination,
        final_point=x,
        final_value=f,
        final_gradnorm=gnorm,
    )
    logger.debug(
        f"Traject beëindigd: {termination.verdict.value} na {k} stappen",
        extra={"field": field_.name, "alpha": alpha, "verdict": termination.verdict.value, "iterations": k},
    )
    return trajectory


def replay(m: GDMap, trajectory: Trajectory) -> float:
    """
    Pas step opnieuw toe op opeenvolgende opgenomen iterates.

    Returns:
        float: Maximale afwijking ‖step(x_k) − x_{k+1}‖_max (0.0 bij een exacte replay)
    """
    worst = 0.0
    for (k0, x0), (k1, x1) in zip(
        zip(trajectory.indices, trajectory.iterates), zip(trajectory.indices[1:], trajectory.iterates[1:])
    ):
        if k1 != k0 + 1 or not np.all(np.isfinite(x1)):
            continue
        worst = max(worst, float(np.max(np.abs(step(m, x0) - x1))))
    return worst


def write_trajectory_csv(trajectory: Trajectory, path: Union[str, Path]) -> Path:
    """
    Schrijf de opgenomen iterates als CSV plus een JSON sidecar met het verdict.

    Returns:
        Path: Pad van de JSON sidecar
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n = trajectory.dimension
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["iter", *[f"x{i + 1}" for i in range(n)], "f", "gradnorm"])
        for k, x, f, gnorm in zip(trajectory.indices, trajectory.iterates, trajectory.values, trajectory.gradnorms):
            writer.writerow([k, *[repr(float(v)) for v in x], repr(float(f)), repr(float(gnorm))])

    sidecar = path.with_suffix(".json")
    summary = TrajectorySummary.from_trajectory(trajectory)
    sidecar.write_text(json.dumps(summary.model_dump(mode="json"), indent=2), encoding="utf-8")
    logger.info(
        f"Traject geschreven: {path} ({len(trajectory.indices)} rijen)",
        extra={"path": str(path), "sidecar": str(sidecar), "rows": len(trajectory.indices)},
    )
    return sidecar
