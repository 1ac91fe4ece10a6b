"""
Gladheid: schatting van sup ‖∇²f‖, stapgrootte planning en steekproef checks.

estimate_hessian_sup levert een ondergrens op de afsluiting van het domein (grid
plus lokale verfijning rond de lopende maximizer). De marge in plan_stepsize vangt
de schattingsfout op; een analytische L mag altijd direct worden opgegeven.
"""

import logging
import math
import time
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config import settings
from ..domain import BoxDomain, make_rng
from ..errors import InvalidBound, NonFiniteValue
from ..fields import ScalarField
from ..linalg import SymmetricMatrix, eigen_symmetric
from .models import (
    DescentReport,
    DescentViolation,
    HessianSupEstimate,
    LipschitzReport,
    PairViolation,
    StepSizePlan,
    cap,
)

logger = logging.getLogger(__name__)

MAX_GRID_POINTS = 10_000_000
PAIR_SKIP_DISTANCE = 1e-12


def spectral_radii(field: ScalarField, points: np.ndarray) -> np.ndarray:
    """‖∇²f‖ per punt; de eigensolver draait alleen per unieke Hessiaan."""
    packed = field.packed_hessians_at_points(points)
    unique, inverse = np.unique(packed, axis=0, return_inverse=True)
    radii = np.array([eigen_symmetric(SymmetricMatrix(field.dimension, row)).spectral_radius for row in unique])
    return np.asarray(radii[inverse.reshape(-1)])


def _norms_on_grid(field: ScalarField, axes: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.ravel() for m in mesh], axis=1)
    return spectral_radii(field, points), points


def hessian_sup_report(
    field: ScalarField,
    domain: BoxDomain,
    grid: Optional[Sequence[int]] = None,
    refine_rounds: int = 3,
) -> HessianSupEstimate:
    """
    Grid schatting van sup ‖∇²f‖ over de afsluiting van het domein.

    Args:
        field: Het veld
        domain: Box domein (randpunten worden meegenomen)
        grid: Aantal punten per as (default settings.experiment.AUTO_GRID per as)
        refine_rounds: Rondes lokale verfijning rond de maximizer

    Returns:
        HessianSupEstimate: Waarde (ondergrens), maximizer en aantal evaluaties
    """
    if domain.dimension != field.dimension:
        raise ValueError(f"Domein heeft dimensie {domain.dimension}, veld heeft {field.dimension}")
    counts = list(grid) if grid is not None else [settings.experiment.AUTO_GRID] * field.dimension
    if math.prod(counts) > MAX_GRID_POINTS:
        raise ValueError(f"Grid van {math.prod(counts)} punten overschrijdt het maximum van {MAX_GRID_POINTS}")

    start = time.time()
    axes = domain.grid(counts)
    norms, points = _norms_on_grid(field, axes)
    best = int(np.argmax(norms))
    best_value, maximizer = float(norms[best]), points[best]
    evaluated = norms.size

    lo, hi = domain.lower, domain.upper
    spacing = (hi - lo) / (np.asarray(counts) - 1)
    for _ in range(refine_rounds):
        sub_lo = np.maximum(lo, maximizer - spacing)
        sub_hi = np.minimum(hi, maximizer + spacing)
        axes = [np.linspace(a, b, c) for a, b, c in zip(sub_lo, sub_hi, counts)]
        norms, points = _norms_on_grid(field, axes)
        evaluated += norms.size
        idx = int(np.argmax(norms))
        if norms[idx] > best_value:
            best_value, maximizer = float(norms[idx]), points[idx]
        spacing = (sub_hi - sub_lo) / (np.asarray(counts) - 1)

    logger.info(
        f"Hessiaan sup geschat: {best_value:.6g} (ondergrens)",
        extra={
            "field": field.name,
            "domain": str(domain),
            "value": best_value,
            "points": evaluated,
            "duration": time.time() - start,
        },
    )
    return HessianSupEstimate(
        value=best_value,
        maximizer=maximizer.tolist(),
        domain=str(domain),
        grid=counts,
        refine_rounds=refine_rounds,
        points_evaluated=evaluated,
    )


def estimate_hessian_sup(
    field: ScalarField,
    domain: BoxDomain,
    grid: Optional[Sequence[int]] = None,
    refine_rounds: int = 3,
) -> float:
    """Ondergrens voor sup ‖∇²f‖ over het domein; zie hessian_sup_report."""
    return hessian_sup_report(field, domain, grid, refine_rounds).value


def plan_stepsize(
    L: float,
    margin: Optional[float] = None,
    gamma: Optional[float] = None,
    L_is_lower_bound: bool = True,
) -> StepSizePlan:
    """
    Stapgrootte grenzen: α = margin/L (voldoende), 2/γ (noodzakelijk supremum).

    Raises:
        InvalidBound: Als L <= 0, margin buiten (0, 1) of gamma <= 0
    """
    margin = settings.experiment.DEFAULT_MARGIN if margin is None else margin
    if not (math.isfinite(L) and L > 0):
        raise InvalidBound(f"L moet eindig en > 0 zijn, kreeg {L}")
    if not 0 < margin < 1:
        raise InvalidBound(f"Marge moet in (0, 1) liggen, kreeg {margin}")
    if gamma is not None and not (math.isfinite(gamma) and gamma > 0):
        raise InvalidBound(f"Gamma moet eindig en > 0 zijn, kreeg {gamma}")

    return StepSizePlan(
        L_estimate=L,
        L_is_lower_bound=L_is_lower_bound,
        margin=margin,
        alpha_sufficient=margin / L,
        gamma=gamma,
        alpha_necessary_sup=None if gamma is None else 2.0 / gamma,
    )


def check_lipschitz(
    field: ScalarField,
    domain: BoxDomain,
    L: float,
    pair_samples: int = 100_000,
    rng_seed: int = 0,
) -> LipschitzReport:
    """
    Steekproef van de Lipschitz conditie voor ∇f op een box.

    Paren met ‖x − y‖ < 1e-12 worden overgeslagen. Een paar is een overtreding als
    ‖∇f(x) − ∇f(y)‖ > L‖x − y‖(1 + 1e-10).
    """
    rng = make_rng(rng_seed)
    xs = domain.sample(rng, pair_samples)
    ys = domain.sample(rng, pair_samples)
    gx = field.gradient_at_points(xs)
    gy = field.gradient_at_points(ys)

    dist = np.linalg.norm(xs - ys, axis=1)
    finite = np.all(np.isfinite(gx), axis=1) & np.all(np.isfinite(gy), axis=1)
    usable = (dist >= PAIR_SKIP_DISTANCE) & finite
    ratios = np.zeros(pair_samples)
    ratios[usable] = np.linalg.norm(gx[usable] - gy[usable], axis=1) / dist[usable]

    bad = np.flatnonzero(usable & (ratios > L * (1 + 1e-10)))
    violations = [PairViolation(x=xs[i].tolist(), y=ys[i].tolist(), ratio=float(ratios[i])) for i in cap(list(bad))]
    worst_index = int(np.argmax(ratios)) if np.any(usable) else None
    worst_pair = None
    if worst_index is not None:
        worst_pair = PairViolation(
            x=xs[worst_index].tolist(), y=ys[worst_index].tolist(), ratio=float(ratios[worst_index])
        )

    report = LipschitzReport(
        domain=str(domain),
        L=L,
        pairs_sampled=pair_samples,
        pairs_skipped=int(np.sum(~usable)),
        violation_count=int(bad.size),
        violations=violations,
        worst_ratio=float(ratios.max()) if pair_samples else 0.0,
        worst_pair=worst_pair,
        passed=bad.size == 0,
    )
    logger.info(
        f"Lipschitz check: {report.violation_count} overtredingen, slechtste ratio {report.worst_ratio:.6g}",
        extra={"field": field.name, "domain": str(domain), "L": L, "violations": report.violation_count},
    )
    return report


def check_descent(
    field: ScalarField,
    alpha: float,
    domain: BoxDomain,
    samples: int = 10_000,
    seed: int = 0,
) -> DescentReport:
    """Steekproef van f(g(x)) <= f(x) + 1e-12·max(1, |f(x)|)."""
    rng = make_rng(seed)
    points = domain.sample(rng, samples)
    violations: List[DescentViolation] = []
    count = 0
    for x in points:
        try:
            fx, g = field.value_and_gradient(x)
            f_next = field.value(x - alpha * g)
        except NonFiniteValue:
            count += 1
            continue
        if f_next > fx + 1e-12 * max(1.0, abs(fx)):
            count += 1
            if len(violations) < settings.analysis.VIOLATION_LIMIT:
                violations.append(DescentViolation(point=x.tolist(), value=fx, next_value=f_next))
    return DescentReport(
        domain=str(domain),
        alpha=alpha,
        samples=samples,
        violation_count=count,
        violations=violations,
        passed=count == 0,
    )
