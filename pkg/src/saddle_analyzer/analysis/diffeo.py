"""
Diffeomorfisme diagnostiek voor g(x) = x − α∇f(x).

(a) lokale inverteerbaarheid: max |αλ| < 1 in elk steekproefpunt, zodat het
    spectrum van Dg = I − α∇²f in (0, 2) ligt;
(b) injectiviteit: voor steekproefparen x ≠ y moet g(x) ≠ g(y).
"""

import logging
import time
from typing import Optional, Tuple

import numpy as np

from ..domain import BoxDomain, make_rng
from ..fields import ScalarField
from ..linalg import SymmetricMatrix, eigen_symmetric
from .models import Collision, DiffeoReport, EigenFailure

logger = logging.getLogger(__name__)

COLLISION_DISTANCE = 1e-12


def _eigen_test(field: ScalarField, alpha: float, points: np.ndarray) -> Tuple[int, Optional[EigenFailure], float]:
    packed = field.packed_hessians_at_points(points)
    unique, inverse = np.unique(packed, axis=0, return_inverse=True)
    spectra = [eigen_symmetric(SymmetricMatrix(field.dimension, row)).eigenvalues for row in unique]
    scaled_max = np.array([float(np.max(np.abs(alpha * lam))) for lam in spectra])[inverse.reshape(-1)]

    failing = np.flatnonzero(~(scaled_max < 1.0))
    first: Optional[EigenFailure] = None
    if failing.size:
        idx = int(failing[0])
        lam = spectra[int(inverse.reshape(-1)[idx])]
        first = EigenFailure(
            point=points[idx].tolist(),
            scaled_eigenvalues=(alpha * lam).tolist(),
            jacobian_eigenvalues=np.sort(1.0 - alpha * lam).tolist(),
        )
    max_scaled = float(scaled_max.max()) if scaled_max.size else 0.0
    return int(failing.size), first, max_scaled


def check_diffeomorphism(
    field: ScalarField,
    alpha: float,
    domain: BoxDomain,
    point_samples: int = 10_000,
    pair_samples: int = 10_000,
    rng_seed: int = 0,
) -> DiffeoReport:
    """
    Steekproef diagnostiek of g een diffeomorfisme is op het domein.

    Args:
        field: Het veld
        alpha: Stapgrootte (>= 0; α = 0 geeft de identiteit)
        domain: Box domein
        point_samples: Aantal punten voor de eigenwaarde test
        pair_samples: Aantal paren voor de injectiviteit test
        rng_seed: Seed voor de steekproeven

    Returns:
        DiffeoReport: Aantallen en de eerste fout van elk soort
    """
    if not alpha >= 0:
        raise ValueError(f"Alpha moet >= 0 zijn, kreeg {alpha}")
    start = time.time()
    rng = make_rng(rng_seed)

    points = domain.sample(rng, point_samples)
    eigen_failures, first_failure, max_scaled = _eigen_test(field, alpha, points)

    xs = domain.sample(rng, pair_samples)
    ys = domain.sample(rng, pair_samples)
    gx = xs - alpha * field.gradient_at_points(xs)
    gy = ys - alpha * field.gradient_at_points(ys)
    dist = np.linalg.norm(xs - ys, axis=1)
    image_dist = np.linalg.norm(gx - gy, axis=1)
    distinct = dist > COLLISION_DISTANCE

    with np.errstate(invalid="ignore"):
        collided = distinct & (image_dist <= COLLISION_DISTANCE)
    collisions = np.flatnonzero(collided)
    first_collision = None
    if collisions.size:
        i = int(collisions[0])
        first_collision = Collision(x=xs[i].tolist(), y=ys[i].tolist(), image_distance=float(image_dist[i]))

    ratios = image_dist[distinct] / dist[distinct]
    ratios = ratios[np.isfinite(ratios)]
    min_ratio = float(ratios.min()) if ratios.size else None

    report = DiffeoReport(
        domain=str(domain),
        alpha=alpha,
        points_checked=point_samples,
        eigen_failures=eigen_failures,
        first_eigen_failure=first_failure,
        max_scaled_eigenvalue=max_scaled,
        eigen_test_passed=eigen_failures == 0,
        pairs_checked=int(np.sum(distinct)),
        collisions=int(collisions.size),
        first_collision=first_collision,
        min_contraction_ratio=min_ratio,
        injectivity_passed=collisions.size == 0,
    )
    logger.info(
        f"Diffeomorfisme check: eigen {'ok' if report.eigen_test_passed else 'gefaald'}, "
        f"injectiviteit {'ok' if report.injectivity_passed else 'gefaald'}",
        extra={
            "field": field.name,
            "alpha": alpha,
            "eigen_failures": eigen_failures,
            "collisions": report.collisions,
            "duration": time.time() - start,
        },
    )
    return report
