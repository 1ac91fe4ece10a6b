"""
Dense lineaire algebra voor Hessianen van bescheiden dimensie.

SymmetricMatrix bewaart alleen de bovendriehoek, zodat entry(i, j) == entry(j, i)
door de representatie geldt en niet door een tolerantie. eigen_symmetric is een
cyclische Jacobi iteratie met vaste sweep volgorde (deterministisch).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .config import settings
from .errors import NoConvergence

logger = logging.getLogger(__name__)

Vector = NDArray[np.float64]


def as_vector(values: ArrayLike) -> Vector:
    """Converteer naar een 1-D float64 array (kopie)."""
    out = np.array(values, dtype=np.float64)
    if out.ndim != 1:
        raise ValueError(f"Verwacht een vector, kreeg shape {out.shape}")
    return out


def _packed_index(n: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return i * n - i * (i - 1) // 2 + (j - i)


@dataclass(frozen=True)
class SymmetricMatrix:
    """N×N symmetrische matrix in gepakte bovendriehoek opslag (rij voor rij)."""

    n: int
    packed: NDArray[np.float64] = field(repr=False)

    def __post_init__(self) -> None:
        packed = np.array(self.packed, dtype=np.float64)
        if self.n < 1:
            raise ValueError(f"Dimensie moet >= 1 zijn, kreeg {self.n}")
        if packed.shape != (self.n * (self.n + 1) // 2,):
            raise ValueError(f"Gepakte opslag heeft lengte {packed.size}, verwacht {self.n * (self.n + 1) // 2}")
        packed.setflags(write=False)
        object.__setattr__(self, "packed", packed)

    @classmethod
    def from_upper(cls, n: int, upper: Sequence[float]) -> "SymmetricMatrix":
        """Bouw uit de bovendriehoek in rij-volgorde: (0,0), (0,1), ..., (1,1), ..."""
        return cls(n, np.asarray(upper, dtype=np.float64))

    @classmethod
    def from_dense(cls, dense: ArrayLike) -> "SymmetricMatrix":
        """Bouw uit een volle matrix; weigert niet-symmetrische invoer."""
        m = np.asarray(dense, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"Verwacht een vierkante matrix, kreeg shape {m.shape}")
        if not np.array_equal(m, m.T):
            raise ValueError("Matrix is niet symmetrisch")
        n = m.shape[0]
        return cls(n, m[np.triu_indices(n)])

    @classmethod
    def identity(cls, n: int) -> "SymmetricMatrix":
        return cls.from_dense(np.eye(n))

    @classmethod
    def zeros(cls, n: int) -> "SymmetricMatrix":
        return cls(n, np.zeros(n * (n + 1) // 2))

    def entry(self, i: int, j: int) -> float:
        return float(self.packed[_packed_index(self.n, i, j)])

    def to_dense(self) -> NDArray[np.float64]:
        m = np.zeros((self.n, self.n))
        m[np.triu_indices(self.n)] = self.packed
        return m + np.triu(m, 1).T

    def scaled(self, c: float) -> "SymmetricMatrix":
        return SymmetricMatrix(self.n, self.packed * c)

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.to_dense()))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.packed)))

    def trace(self) -> float:
        return float(sum(self.entry(i, i) for i in range(self.n)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymmetricMatrix):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.packed, other.packed))

    def __hash__(self) -> int:
        return hash((self.n, self.packed.tobytes()))


@dataclass(frozen=True)
class SymmetricSpectrum:
    """Eigenwaarden (oplopend) en orthonormale eigenvectoren; kolom i hoort bij eigenvalues[i]."""

    eigenvalues: NDArray[np.float64]
    vectors: NDArray[np.float64] = field(repr=False)

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues)))

    def reconstruct(self) -> NDArray[np.float64]:
        """Q Λ Qᵀ."""
        q = self.vectors
        return np.asarray((q * self.eigenvalues) @ q.T)

    def orthogonality_error(self) -> float:
        """‖QᵀQ − I‖_max."""
        q = self.vectors
        return float(np.max(np.abs(q.T @ q - np.eye(q.shape[0]))))

    def reconstruction_error(self, a: SymmetricMatrix) -> float:
        """‖A − QΛQᵀ‖_max."""
        return float(np.max(np.abs(a.to_dense() - self.reconstruct())))


def _off_norm(a: NDArray[np.float64]) -> float:
    """Frobenius norm van het deel buiten de diagonaal, direct uit de bovendriehoek."""
    return math.sqrt(2.0) * float(np.linalg.norm(np.triu(a, 1)))



def _rotate(a: NDArray[np.float64], v: NDArray[np.float64], p: int, q: int) -> None:
    """Eén Jacobi rotatie die a[p, q] annuleert (in place)."""
    apq = a[p, q]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    col_p, col_q = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p, row_q = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = a[q, p] = 0.0

    vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
    v[:, p] = c * vec_p - s * vec_q
    v[:, q] = s * vec_p + c * vec_q


def eigen_symmetric(
    a: SymmetricMatrix,
    tol_rel: Optional[float] = None,
    max_sweeps: Optional[int] = None,
) -> SymmetricSpectrum:
    """
    Volledig spectrum van een symmetrische matrix via cyclische Jacobi rotaties.

    Args:
        a: Symmetrische matrix met eindige entries
        tol_rel: Stopt als de off-diagonaal norm <= tol_rel * ‖A‖_F (default uit settings)
        max_sweeps: Maximaal aantal sweeps (default uit settings)

    Returns:
        SymmetricSpectrum: Eigenwaarden oplopend, eigenvectoren als kolommen

    Raises:
        NoConvergence: Als de tolerantie niet binnen het sweep budget wordt gehaald
    """
    tol_rel = settings.analysis.JACOBI_TOL_REL if tol_rel is None else tol_rel
    max_sweeps = settings.analysis.JACOBI_MAX_SWEEPS if max_sweeps is None else max_sweeps

    work = a.to_dense()
    if not np.all(np.isfinite(work)):
        raise ValueError("Matrix bevat niet-eindige entries")
    n = a.n
    v = np.eye(n)
    threshold = tol_rel * float(np.linalg.norm(work))

    sweeps = 0
    while _off_norm(work) > threshold:
        if sweeps >= max_sweeps:
            logger.error(
                "Jacobi iteratie niet geconvergeerd",
                extra={"dimension": n, "sweeps": sweeps, "off_norm": _off_norm(work)},
            )
            raise NoConvergence(
                f"Jacobi niet geconvergeerd na {max_sweeps} sweeps (off-norm {_off_norm(work):.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                if work[p, q] != 0.0:
                    _rotate(work, v, p, q)
        sweeps += 1

    order = np.argsort(np.diag(work), kind="stable")
    eigenvalues = np.diag(work)[order].copy()
    vectors = v[:, order].copy()
    eigenvalues.setflags(write=False)
    vectors.setflags(write=False)
    return SymmetricSpectrum(eigenvalues, vectors)


def spectral_norm(a: SymmetricMatrix) -> float:
    """max |λᵢ|; voor symmetrische matrices gelijk aan de spectraalnorm."""
    return eigen_symmetric(a).spectral_radius


def closed_form_2x2(a: SymmetricMatrix) -> Tuple[float, float]:
    """Eigenwaarden van [[a, b], [b, c]] via de kwadratische formule (oracle)."""
    if a.n != 2:
        raise ValueError(f"closed_form_2x2 verwacht een 2x2 matrix, kreeg {a.n}x{a.n}")
    p, b, c = a.entry(0, 0), a.entry(0, 1), a.entry(1, 1)
    mean = (p + c) / 2.0
    radius = math.hypot((p - c) / 2.0, b)
    return mean - radius, mean + radius
