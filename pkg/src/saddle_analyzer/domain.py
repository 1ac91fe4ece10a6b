"""
BoxDomain: product van open intervallen (lo_i, hi_i).

Tekst syntax "(a,b)x(c,d)x..." is round-trip stabiel via parse() en str().
"""

import math
import re
from typing import List, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, Field, field_validator, model_validator

_INTERVAL_RE = re.compile(r"\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)")


def _format_bound(value: float) -> str:
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


class BoxDomain(BaseModel):
    """Per-coördinaat open intervallen; voor invariantie wordt de afsluiting gebruikt."""

    bounds: List[Tuple[float, float]] = Field(..., description="Lijst van (lo, hi) per coördinaat")

    @field_validator("bounds")
    @classmethod
    def validate_bounds(cls, v: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
        if not v:
            raise ValueError("Domein heeft minstens één interval nodig")
        for i, (lo, hi) in enumerate(v):
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError(f"Interval {i} heeft niet-eindige grenzen ({lo}, {hi})")
            if not lo < hi:
                raise ValueError(f"Interval {i} moet lo < hi hebben, kreeg ({lo}, {hi})")
        return [(float(lo), float(hi)) for lo, hi in v]

    @model_validator(mode="before")
    @classmethod
    def accept_text(cls, data: object) -> object:
        # Config bestanden mogen het domein als tekst geven
        if isinstance(data, str):
            return {"bounds": _parse_bounds(data)}
        return data

    @classmethod
    def parse(cls, text: str) -> "BoxDomain":
        """Parse "(a,b)x(c,d)"; ValueError bij ongeldige syntax."""
        return cls(bounds=_parse_bounds(text))

    @classmethod
    def cube(cls, lo: float, hi: float, dimension: int) -> "BoxDomain":
        return cls(bounds=[(lo, hi)] * dimension)

    def __str__(self) -> str:
        return "x".join(f"({_format_bound(lo)},{_format_bound(hi)})" for lo, hi in self.bounds)

    @property
    def dimension(self) -> int:
        return len(self.bounds)

    @property
    def lower(self) -> NDArray[np.float64]:
        return np.array([lo for lo, _ in self.bounds])

    @property
    def upper(self) -> NDArray[np.float64]:
        return np.array([hi for _, hi in self.bounds])

    @property
    def center(self) -> NDArray[np.float64]:
        return (self.lower + self.upper) / 2.0

    def contains(self, point: ArrayLike) -> bool:
        """Open box."""
        x = np.asarray(point, dtype=np.float64)
        return bool(np.all(x > self.lower) and np.all(x < self.upper))

    def contains_closed(self, point: ArrayLike) -> bool:
        x = np.asarray(point, dtype=np.float64)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def grid(self, counts: Sequence[int]) -> List[NDArray[np.float64]]:
        """Per-as linspace inclusief de randpunten van de afsluiting."""
        if len(counts) != self.dimension:
            raise ValueError(f"Verwacht {self.dimension} grid aantallen, kreeg {len(counts)}")
        if any(c < 2 for c in counts):
            raise ValueError(f"Grid aantallen moeten >= 2 zijn, kreeg {list(counts)}")
        return [np.linspace(lo, hi, int(c)) for (lo, hi), c in zip(self.bounds, counts)]

    def clip_open(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        """Duw punten op of buiten de rand één ulp naar binnen."""
        lo, hi = self.lower, self.upper
        x = np.where(x <= lo, np.nextafter(lo, hi), x)
        return np.where(x >= hi, np.nextafter(hi, lo), x)

    def sample(self, rng: np.random.Generator, n: int) -> NDArray[np.float64]:
        """n uniforme punten strikt binnen de open box, shape (n, N)."""
        u = rng.random((n, self.dimension))
        return self.clip_open(self.lower + (self.upper - self.lower) * u)


def _parse_bounds(text: str) -> List[Tuple[float, float]]:
    parts = [p for p in re.split(r"\s*[xX×]\s*(?=\()", text.strip()) if p]
    if not parts:
        raise ValueError(f"Ongeldig domein '{text}': verwacht '(a,b)x(c,d)'")
    bounds: List[Tuple[float, float]] = []
    for part in parts:
        match = _INTERVAL_RE.fullmatch(part.strip())
        if match is None:
            raise ValueError(f"Ongeldig interval '{part}' in domein '{text}': verwacht '(a,b)'")
        try:
            bounds.append((float(match.group(1)), float(match.group(2))))
        except ValueError:
            raise ValueError(f"Ongeldige grens in '{part}' van domein '{text}'") from None
    return bounds


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    """Counter-based generator (Philox) als pure functie van (seed, keys)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, keys)])))
