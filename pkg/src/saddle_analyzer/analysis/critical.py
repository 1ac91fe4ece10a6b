"""
Kritieke punten: classificatie, Newton verfijning en stabiliteit onder g.

Een punt is kritiek als ‖∇f‖ <= ε_crit. De tweede-orde test gebruikt de relatieve
tolerantie ε_eig = 1e-6·max(1, ‖∇²f‖), zodat echte nul eigenwaarden (lijnen van
kritieke punten) niet als ruis worden gezien en andersom.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

from ..config import settings
from ..errors import NonFiniteValue
from ..fields import ScalarField
from ..linalg import SymmetricMatrix, Vector, as_vector, eigen_symmetric
from .models import (
    AnalysisTolerances,
    CriticalPointRecord,
    GammaEstimate,
    MinimumStability,
    PointClass,
    SplittingReport,
)

logger = logging.getLogger(__name__)


def classify(
    field: ScalarField,
    x: ArrayLike,
    tolerances: Optional[AnalysisTolerances] = None,
) -> CriticalPointRecord:
    """
    Classificeer een punt als LocalMin, StrictSaddle, Degenerate of NotCritical.

    Raises:
        NonFiniteValue: Bij niet-eindige evaluatie
        NoConvergence: Als de eigensolver faalt
    """
    tol = tolerances or AnalysisTolerances()
    point = as_vector(x)
    if not np.all(np.isfinite(point)):
        raise ValueError(f"Punt is niet eindig: {point.tolist()}")

    g = field.gradient(point)
    gnorm = float(np.linalg.norm(g))
    spectrum = eigen_symmetric(field.hessian(point))
    eps_eig = tol.eps_eig_rel * max(1.0, spectrum.spectral_radius)

    if gnorm > tol.eps_crit:
        cls = PointClass.NOT_CRITICAL
    elif spectrum.lambda_min < -eps_eig:
        cls = PointClass.STRICT_SADDLE
    elif spectrum.lambda_min > eps_eig:
        cls = PointClass.LOCAL_MIN
    else:
        cls = PointClass.DEGENERATE

    return CriticalPointRecord(
        location=point.tolist(),
        gradient_norm=gnorm,
        lambda_min=spectrum.lambda_min,
        lambda_max=spectrum.lambda_max,
        eigenvalues=spectrum.eigenvalues.tolist(),
        eps_eig=eps_eig,
        classification=cls,
    )


def _half_grad_sq(field: ScalarField, x: Vector) -> float:
    g = field.gradient(x)
    return 0.5 * float(g @ g)


def _backtrack(field: ScalarField, x: Vector, direction: Vector, phi0: float) -> Optional[Vector]:
    """Halveer de stap tot ½‖∇f‖² afneemt; None als dat niet lukt."""
    t = 1.0
    for _ in range(40):
        candidate = x + t * direction
        try:
            if np.all(np.isfinite(candidate)) and _half_grad_sq(field, candidate) < phi0:
                return candidate
        except NonFiniteValue:
            pass
        t *= 0.5
    return None


def _newton_direction(field: ScalarField, x: Vector, g: Vector) -> Optional[Vector]:
    """Pseudo-inverse Newton stap; eigenwaarden met |λ| <= tol·max(1, ‖H‖) worden genegeerd."""
    spectrum = eigen_symmetric(field.hessian(x))
    cutoff = settings.analysis.SINGULAR_TOL * max(1.0, spectrum.spectral_radius)
    keep = np.abs(spectrum.eigenvalues) > cutoff
    if not np.any(keep):
        return None
    q = spectrum.vectors[:, keep]
    return np.asarray(-(q @ ((q.T @ g) / spectrum.eigenvalues[keep])))


def refine_critical(
    field: ScalarField,
    seed: ArrayLike,
    budget: Optional[int] = None,
    eps_crit: Optional[float] = None,
) -> Optional[Vector]:
    """
    Gedempte Newton iteratie op ∇f = 0.

    Valt terug op steepest descent van ½‖∇f‖² als de Hessiaan (bijna) singulier is
    of de Newton richting niet helpt. Na het halen van ε_crit volgen nog enkele
    polijst stappen zolang ‖∇f‖ afneemt.

    Returns:
        Optional[Vector]: Punt met ‖∇f‖ <= ε_crit, of None bij falen
    """
    budget = settings.analysis.REFINE_BUDGET if budget is None else budget
    eps = settings.analysis.EPS_CRIT if eps_crit is None else eps_crit
    x = as_vector(seed)

    try:
        g = field.gradient(x)
        if float(np.linalg.norm(g)) <= eps:
            return x

        for _ in range(budget):
            phi = 0.5 * float(g @ g)
            nxt: Optional[Vector] = None
            direction = _newton_direction(field, x, g)
            if direction is not None:
                nxt = _backtrack(field, x, direction, phi)
            if nxt is None:
                h = field.hessian(x).to_dense()
                nxt = _backtrack(field, x, -(h @ g), phi)
            if nxt is None:
                logger.debug("Verfijning vastgelopen", extra={"field": field.name, "point": x.tolist()})
                return None
            x = nxt
            g = field.gradient(x)
            if float(np.linalg.norm(g)) <= eps:
                return _polish(field, x, g)
    except NonFiniteValue as e:
        logger.debug(f"Verfijning afgebroken: {e}", extra={"field": field.name})
        return None
    return None


def _polish(field: ScalarField, x: Vector, g: Vector, steps: int = 3) -> Vector:
    best, best_norm = x, float(np.linalg.norm(g))
    for _ in range(steps):
        if best_norm == 0.0:
            break
        direction = _newton_direction(field, best, field.gradient(best))
        if direction is None:
            break
        candidate = best + direction
        try:
            norm = float(np.linalg.norm(field.gradient(candidate)))
        except NonFiniteValue:
            break
        if not norm < best_norm:
            break
        best, best_norm = candidate, norm
    return best


def estimate_gamma(
    field: ScalarField,
    points: Sequence[ArrayLike],
    local_minima_only: bool = False,
    tolerances: Optional[AnalysisTolerances] = None,
) -> GammaEstimate:
    """
    γ als minimum van ‖∇²f‖ over een lijst punten.

    Met local_minima_only=True tellen alleen punten die als LocalMin classificeren.

    Raises:
        ValueError: Als er geen bruikbare punten zijn
    """
    used: List[List[float]] = []
    norms: List[float] = []
    for p in points:
        x = as_vector(p)
        if local_minima_only and classify(field, x, tolerances).classification is not PointClass.LOCAL_MIN:
            continue
        used.append(x.tolist())
        norms.append(eigen_symmetric(field.hessian(x)).spectral_radius)
    if not norms:
        raise ValueError("Geen punten om gamma over te bepalen")
    return GammaEstimate(gamma=min(norms), points_used=used, local_minima_only=local_minima_only)


def _jacobian(field: ScalarField, x: Vector, alpha: float) -> SymmetricMatrix:
    h = field.hessian(x)
    return SymmetricMatrix.from_dense(np.eye(h.n) - alpha * h.to_dense())


def check_minimum_stability(
    field: ScalarField,
    alpha: float,
    points: Sequence[ArrayLike],
    tolerances: Optional[AnalysisTolerances] = None,
) -> List[MinimumStability]:
    """
    Spectraal radius van Dg = I − α∇²f in elk lokaal minimum.

    Punten die niet als LocalMin classificeren worden overgeslagen.
    """
    results: List[MinimumStability] = []
    for p in points:
        x = as_vector(p)
        if classify(field, x, tolerances).classification is not PointClass.LOCAL_MIN:
            continue
        hessian_norm = eigen_symmetric(field.hessian(x)).spectral_radius
        jac = eigen_symmetric(_jacobian(field, x, alpha))
        rho = jac.spectral_radius
        results.append(
            MinimumStability(
                point=x.tolist(),
                hessian_norm=hessian_norm,
                jacobian_eigenvalues=jac.eigenvalues.tolist(),
                jacobian_spectral_radius=rho,
                lower_bound=alpha * hessian_norm - 1.0,
                unstable=rho > 1.0,
            )
        )
        if rho > 1.0:
            logger.info(
                f"Minimum {x.tolist()} instabiel onder g (radius {rho:.3f})",
                extra={"field": field.name, "alpha": alpha, "spectral_radius": rho},
            )
    return results


def fixed_point_splitting(
    field: ScalarField,
    x: ArrayLike,
    alpha: float,
    tol: float = 1e-9,
) -> SplittingReport:
    """Tel eigenwaarden van Dg(x) met modulus < 1, ≈ 1 en > 1."""
    point = as_vector(x)
    mu = eigen_symmetric(_jacobian(field, point, alpha)).eigenvalues
    moduli = np.abs(mu)
    return SplittingReport(
        point=point.tolist(),
        alpha=alpha,
        jacobian_eigenvalues=mu.tolist(),
        stable=int(np.sum(moduli < 1.0 - tol)),
        center=int(np.sum(np.abs(moduli - 1.0) <= tol)),
        unstable=int(np.sum(moduli > 1.0 + tol)),
    )