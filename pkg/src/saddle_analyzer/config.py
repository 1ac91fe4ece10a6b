"""
Configuratiebeheer voor de Saddle Analyzer.

Alle defaults (toleranties, budgetten, grid dichtheden) komen uit deze settings.
Elke operatie accepteert expliciete overrides zodat library resultaten nooit van
verborgen state afhangen.
"""
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class DynamicsSettings(BaseSettings):
    """Configuratie voor de gradient descent iteratie."""
    model_config = SettingsConfigDict(env_prefix="DYNAMICS_")
    EPS_GRAD: float = 1e-8
    EPS_STEP: float = 1e-10
    R_DIV: float = 1e8
    F_DIV: float = -1e12
    EPS_CYCLE: float = 1e-9
    CYCLE_WINDOW: int = 20
    BUDGET: int = 100_000
    MAX_RECORDED_VALUES: int = 1_000_000  # N * budget waarboven de record stride groeit


class AnalysisSettings(BaseSettings):
    """Configuratie voor classificatie, stapgrootte en certificering."""
    model_config = SettingsConfigDict(env_prefix="ANALYSIS_")
    EPS_CRIT: float = 1e-8
    EPS_EIG_REL: float = 1e-6
    FD_H_GRADIENT: float = 1e-5
    FD_H_HESSIAN: float = 1e-4
    JACOBI_TOL_REL: float = 1e-14
    JACOBI_MAX_SWEEPS: int = 100
    CERTIFY_DENSITY: int = 10_001
    SHELL_WIDTH: float = 1e-3
    SINGULAR_TOL: float = 1e-10
    REFINE_BUDGET: int = 50
    VIOLATION_LIMIT: int = 100


class ExperimentSettings(BaseSettings):
    """Configuratie voor Monte Carlo experimenten."""
    model_config = SettingsConfigDict(env_prefix="EXPERIMENT_")
    WORKERS: Optional[int] = None  # None: alle cores vanaf PARALLEL_MIN_TRIALS trials, anders serieel
    PARALLEL_MIN_TRIALS: int = 1000
    MATCH_RADIUS: float = 1e-4
    DEFAULT_MARGIN: float = 0.9
    AUTO_GRID: int = 41  # Grid punten per as voor L schatting bij alpha="auto"


class AppSettings(BaseSettings):
    """Definieert de applicatieconfiguratie via omgevingsvariabelen."""
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = "logs"
    LOG_TO_FILE: bool = False
    dynamics: DynamicsSettings = DynamicsSettings()
    analysis: AnalysisSettings = AnalysisSettings()
    experiment: ExperimentSettings = ExperimentSettings()


settings = AppSettings()
