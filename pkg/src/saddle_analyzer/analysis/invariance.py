"""
Voorwaartse invariantie g(S) ⊆ S voor box domeinen.

Twee modi:
- "sample": uniforme punten plus een schil van breedte SHELL_WIDTH langs elke zijde.
  Levert FalsifiedAt bij het eerste beeld buiten de gesloten box, anders
  Undetermined met de slechtste marge. Nooit een certificaat.
- "separable-certify": alleen voor maps waarvan g_i alleen van x_i afhangt
  (symbolische off-diagonaal Hessiaan entries zijn nul). Per as wordt g_i op een
  dicht grid geëvalueerd en opgevuld met max |g_i'| × grid spacing.

Open boxen worden als hun afsluiting getest.
"""

import logging
import time
from typing import List, Literal, Optional

import numpy as np

from ..config import settings
from ..domain import BoxDomain, make_rng
from ..dynamics import GDMap
from ..errors import ModeUnsupported, NonFiniteValue
from .models import AxisBound, InvarianceKind, InvarianceVerdict

logger = logging.getLogger(__name__)

InvarianceMode = Literal["sample", "separable-certify"]
MODES = ("sample", "separable-certify")
MIN_CERTIFY_DENSITY = 10


def _shell_points(domain: BoxDomain, rng: np.random.Generator, per_face: int, width: float) -> np.ndarray:
    """Punten in de gesloten box met één coördinaat binnen `width` van een zijde."""
    lo, hi = domain.lower, domain.upper
    blocks = []
    for axis in range(domain.dimension):
        w = min(width, (hi[axis] - lo[axis]) / 2.0)
        for side in (0, 1):
            pts = lo + (hi - lo) * rng.random((per_face, domain.dimension))
            offset = w * rng.random(per_face)
            pts[:, axis] = lo[axis] + offset if side == 0 else hi[axis] - offset
            blocks.append(pts)
    return np.concatenate(blocks) if blocks else np.empty((0, domain.dimension))


def _margins(domain: BoxDomain, images: np.ndarray) -> np.ndarray:
    """Kleinste afstand tot de rand per beeld; negatief of NaN betekent buiten."""
    return np.minimum(images - domain.lower, domain.upper - images).min(axis=1)


def _sample_mode(m: GDMap, domain: BoxDomain, samples: int, rng_seed: int) -> InvarianceVerdict:
    rng = make_rng(rng_seed)
    per_face = max(1, samples // (4 * domain.dimension))
    points = np.concatenate(
        [domain.sample(rng, samples), _shell_points(domain, rng, per_face, settings.analysis.SHELL_WIDTH)]
    )
    images = points - m.alpha * m.field.gradient_at_points(points)
    with np.errstate(invalid="ignore"):
        margins = _margins(domain, images)
    outside = np.flatnonzero(~(margins >= 0.0))

    if outside.size:
        i = int(outside[0])
        return InvarianceVerdict(
            kind=InvarianceKind.FALSIFIED_AT,
            mode="sample",
            domain=str(domain),
            alpha=m.alpha,
            point=points[i].tolist(),
            image=images[i].tolist(),
            worst_margin=float(np.nanmin(margins)) if np.any(np.isfinite(margins)) else None,
            samples_checked=int(points.shape[0]),
            note="Beeld buiten de gesloten box" if np.all(np.isfinite(images[i])) else "Niet-eindig beeld",
        )
    return InvarianceVerdict(
        kind=InvarianceKind.UNDETERMINED,
        mode="sample",
        domain=str(domain),
        alpha=m.alpha,
        worst_margin=float(margins.min()),
        samples_checked=int(points.shape[0]),
        note="Geen tegenvoorbeeld gevonden; steekproef geeft geen certificaat",
    )


def _certify_mode(m: GDMap, domain: BoxDomain, density: int) -> InvarianceVerdict:
    field, alpha = m.field, m.alpha
    if not field.is_separable():
        raise ModeUnsupported(
            f"separable-certify vereist een coördinaat-separabele map; '{field.name}' heeft "
            "niet-nul off-diagonaal Hessiaan entries"
        )
    if density < MIN_CERTIFY_DENSITY:
        raise ValueError(f"Dichtheid moet >= {MIN_CERTIFY_DENSITY} zijn per as, kreeg {density}")

    center = domain.center
    axes: List[AxisBound] = []
    falsified: Optional[tuple] = None
    for i, (lo, hi) in enumerate(domain.bounds):
        t = np.linspace(lo, hi, density)
        columns = [t if j == i else np.full(density, center[j]) for j in range(field.dimension)]
        image = t - alpha * field.gradient_component_on_grid(i, columns)
        slope = 1.0 - alpha * field.hessian_entry_on_grid(i, i, columns)
        error = float(np.max(np.abs(slope))) * (hi - lo) / (density - 1)
        image_min, image_max = float(image.min()), float(image.max())
        margin = min(image_min - error - lo, hi - (image_max + error))
        axes.append(
            AxisBound(
                axis=i, lo=lo, hi=hi, image_min=image_min, image_max=image_max, error_term=error, margin=margin
            )
        )
        bad = np.flatnonzero((image < lo) | (image > hi))
        if falsified is None and bad.size:
            falsified = (i, int(bad[0]), columns)

    worst = min(a.margin for a in axes)
    common = {"mode": "separable-certify", "domain": str(domain), "alpha": alpha, "axes": axes}
    if worst > 0:
        return InvarianceVerdict(kind=InvarianceKind.CERTIFIED_INVARIANT, worst_margin=worst, **common)
    if falsified is not None:
        axis, k, columns = falsified
        point = np.array([c[k] for c in columns])
        return InvarianceVerdict(
            kind=InvarianceKind.FALSIFIED_AT,
            point=point.tolist(),
            image=m(point).tolist(),
            worst_margin=worst,
            note=f"Grid punt op as {axis} heeft een beeld buiten het interval",
            **common,
        )
    return InvarianceVerdict(
        kind=InvarianceKind.UNDETERMINED,
        worst_margin=worst,
        note="Opgevuld beeld bereik raakt of overschrijdt de rand",
        **common,
    )


def check_forward_invariance(
    m: GDMap,
    domain: BoxDomain,
    mode: InvarianceMode = "sample",
    density: Optional[int] = None,
    rng_seed: int = 0,
    samples: int = 100_000,
) -> InvarianceVerdict:
    """
    Test of g de (afsluiting van de) box op zichzelf afbeeldt.

    Args:
        m: De gradient descent map
        domain: Box domein
        mode: "sample" of "separable-certify"
        density: Grid punten per as voor separable-certify (default settings.analysis.CERTIFY_DENSITY)
        rng_seed: Seed voor sample mode
        samples: Aantal uniforme punten voor sample mode (de schil komt erbij)

    Returns:
        InvarianceVerdict: CertifiedInvariant, FalsifiedAt of Undetermined

    Raises:
        ModeUnsupported: separable-certify op een niet-separabele map
    """
    if mode not in MODES:
        raise ValueError(f"Onbekende modus '{mode}', kies uit {', '.join(MODES)}")
    if domain.dimension != m.field.dimension:
        raise ValueError(f"Domein heeft dimensie {domain.dimension}, veld heeft {m.field.dimension}")

    start = time.time()
    if m.alpha == 0.0:
        # Identiteit beeldt de afsluiting exact op zichzelf af
        verdict = InvarianceVerdict(
            kind=InvarianceKind.CERTIFIED_INVARIANT,
            mode=mode,
            domain=str(domain),
            alpha=0.0,
            worst_margin=0.0,
            note="alpha = 0: g is de identiteit",
        )
    elif mode == "sample":
        verdict = _sample_mode(m, domain, samples, rng_seed)
    else:
        try:
            verdict = _certify_mode(m, domain, settings.analysis.CERTIFY_DENSITY if density is None else density)
        except NonFiniteValue as e:
            verdict = InvarianceVerdict(
                kind=InvarianceKind.UNDETERMINED,
                mode=mode,
                domain=str(domain),
                alpha=m.alpha,
                note=f"Niet-eindige evaluatie op het grid: {e}",
            )

    logger.info(
        f"Invariantie {verdict.mode}: {verdict.kind.value}",
        extra={
            "field": m.field.name,
            "alpha": m.alpha,
            "domain": str(domain),
            "verdict": verdict.kind.value,
            "worst_margin": verdict.worst_margin,
            "duration": time.time() - start,
        },
    )
    return verdict
