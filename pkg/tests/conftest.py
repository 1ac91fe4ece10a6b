"""
Gedeelde fixtures en configuratie voor tests.
"""

import sys
from pathlib import Path

import pytest

# Voeg de src directory toe aan het Python pad
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from saddle_analyzer.domain import BoxDomain  # noqa: E402
from saddle_analyzer.fields import ScalarField, resolve_field  # noqa: E402
from saddle_analyzer.monitoring.metrics import metrics_collector  # noqa: E402


@pytest.fixture(scope="session")
def double_well() -> ScalarField:
    """f(x, y) = x²/2 + y⁴/4 − y²/2."""
    return resolve_field("double-well")


@pytest.fixture(scope="session")
def line_of_saddles() -> ScalarField:
    """f(x, y, z) = 2xy + 2xz − 2x − y − z."""
    return resolve_field("line-of-saddles")


@pytest.fixture(scope="session")
def quadratic_bowl() -> ScalarField:
    """f(x, y) = x²/2 + y²/2."""
    return resolve_field("quadratic-bowl")


@pytest.fixture(scope="session")
def double_well_box() -> BoxDomain:
    return BoxDomain.parse("(-1,1)x(-2,2)")


@pytest.fixture(scope="session")
def project_root() -> Path:
    """Project root directory."""
    return Path(__file__).parent.parent


@pytest.fixture
def clean_metrics():
    """Globale metrics collector zonder historie, zonder schrijven naar schijf."""
    persist = metrics_collector.persist
    metrics_collector.persist = False
    metrics_collector.reset()
    yield metrics_collector
    metrics_collector.reset()
    metrics_collector.persist = persist
