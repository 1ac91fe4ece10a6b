"""Startpunten voor trials: uniform over de open box, per trial een eigen RNG stroom."""

from ..domain import BoxDomain, make_rng
from ..linalg import Vector


def sample_uniform(domain: BoxDomain, trial_index: int, master_seed: int) -> Vector:
    """
    Uniform punt in de open box.

    De stroom is een pure functie van (master_seed, trial_index) via een Philox
    generator, dus onafhankelijk van de volgorde waarin trials draaien.
    """
    if trial_index < 0:
        raise ValueError(f"Trial index moet >= 0 zijn, kreeg {trial_index}")
    return domain.sample(make_rng(master_seed, trial_index), 1)[0]
