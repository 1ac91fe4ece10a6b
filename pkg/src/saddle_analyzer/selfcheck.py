"""
Zelfcontrole: finite-difference oracle over alle builtins en de eigensolver oracle suite.
"""

import logging
import math
import time
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field

from .domain import make_rng
from .fields import CheckReport, fd_check, get_catalog
from .linalg import SymmetricMatrix, closed_form_2x2, eigen_symmetric

logger = logging.getLogger(__name__)

ORTHOGONALITY_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-10
TRACE_TOL = 1e-10
CLOSED_FORM_TOL = 1e-12


class EigenOracleReport(BaseModel):
    """Invarianten van de Jacobi solver op willekeurige symmetrische matrices."""
    matrices: int
    max_dimension: int
    max_orthogonality_error: float = Field(..., description="max ‖QᵀQ − I‖_max")
    max_reconstruction_error: float = Field(..., description="max ‖A − QΛQᵀ‖_max / max(1, ‖A‖_max)")
    max_trace_error: float = Field(..., description="max |Σλ − tr A| / max(1, |tr A|)")
    closed_form_matrices: int
    max_closed_form_error: float
    unsorted: int = Field(0, description="Aantal spectra dat niet oplopend was")
    golden_error: float = Field(0.0, description="Afwijking op de constante Hessiaan van line-of-saddles")
    passed: bool


def golden_spectrum_error() -> float:
    """Afwijking van het Jacobi spectrum van [[0,2,2],[2,0,0],[2,0,0]] tot {−2√2, 0, 2√2}."""
    a = SymmetricMatrix.from_dense([[0.0, 2.0, 2.0], [2.0, 0.0, 0.0], [2.0, 0.0, 0.0]])
    expected = np.array([-2.0 * math.sqrt(2.0), 0.0, 2.0 * math.sqrt(2.0)])
    return float(np.max(np.abs(eigen_symmetric(a).eigenvalues - expected)))


class SelfCheckReport(BaseModel):
    fd_checks: List[CheckReport]
    eigen: EigenOracleReport
    duration_seconds: float
    passed: bool


def eigen_oracle_suite(matrices: int = 1000, max_dimension: int = 10, seed: int = 0) -> EigenOracleReport:
    """
    Reconstructie, orthogonaliteit, spoor identiteit en de 2x2 gesloten vorm.

    Entries zijn uniform in [−10, 10], N uniform in {1, ..., max_dimension}.
    """
    rng = make_rng(seed)
    max_orth = max_rec = max_trace = 0.0
    unsorted = 0
    for _ in range(matrices):
        n = int(rng.integers(1, max_dimension + 1))
        a = SymmetricMatrix(n, rng.uniform(-10.0, 10.0, n * (n + 1) // 2))
        spectrum = eigen_symmetric(a)
        max_orth = max(max_orth, spectrum.orthogonality_error())
        max_rec = max(max_rec, spectrum.reconstruction_error(a) / max(1.0, a.max_abs()))
        trace = a.trace()
        max_trace = max(max_trace, abs(float(np.sum(spectrum.eigenvalues)) - trace) / max(1.0, abs(trace)))
        unsorted += int(np.any(np.diff(spectrum.eigenvalues) < 0))

    max_closed = 0.0
    for _ in range(matrices):
        a = SymmetricMatrix(2, rng.uniform(-10.0, 10.0, 3))
        lo, hi = closed_form_2x2(a)
        spectrum = eigen_symmetric(a)
        max_closed = max(max_closed, abs(spectrum.lambda_min - lo), abs(spectrum.lambda_max - hi))

    golden = golden_spectrum_error()
    passed = (
        max_orth <= ORTHOGONALITY_TOL
        and max_rec <= RECONSTRUCTION_TOL
        and max_trace <= TRACE_TOL
        and max_closed <= CLOSED_FORM_TOL
        and unsorted == 0
        and golden <= 1e-12
    )
    return EigenOracleReport(
        matrices=matrices,
        max_dimension=max_dimension,
        max_orthogonality_error=max_orth,
        max_reconstruction_error=max_rec,
        max_trace_error=max_trace,
        closed_form_matrices=matrices,
        max_closed_form_error=max_closed,
        unsorted=unsorted,
        golden_error=golden,
        passed=passed,
    )


def run_selfcheck(
    points: int = 1000,
    matrices: int = 1000,
    seed: int = 0,
    gradient_tol: float = 1e-6,
    hessian_tol: float = 1e-4,
    fields: Optional[List[str]] = None,
) -> SelfCheckReport:
    """fd_check over elke builtin in zijn referentie domein plus de eigensolver suite."""
    start = time.time()
    catalog = get_catalog()
    reports: List[CheckReport] = []
    for index, definition in enumerate(catalog.all()):
        if fields is not None and definition.name not in fields:
            continue
        sample = definition.reference_domain.sample(make_rng(seed, index), points)
        reports.append(fd_check(definition.field, list(sample), tol=gradient_tol, hessian_tol=hessian_tol))

    eigen = eigen_oracle_suite(matrices=matrices, seed=seed)
    passed = eigen.passed and all(r.passed for r in reports)
    duration = time.time() - start
    log = logger.info if passed else logger.warning
    log(
        f"Selfcheck {'geslaagd' if passed else 'gefaald'} in {duration:.2f}s",
        extra={"fields": len(reports), "matrices": matrices, "passed": passed, "duration": duration},
    )
    return SelfCheckReport(fd_checks=reports, eigen=eigen, duration_seconds=round(duration, 6), passed=passed)

