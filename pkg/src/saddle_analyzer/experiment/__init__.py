"""
Monte Carlo experimenten: empirische basin statistiek en saddle-hit fractie.

Usage:
    >>> from saddle_analyzer.experiment import ExperimentConfig, run_experiment
    >>> cfg = ExperimentConfig(field="double-well", domain="(-1,1)x(-2,2)", alpha=1 / 12, trials=100)
    >>> report = run_experiment(cfg)
    >>> report.saddle_hit_fraction
    0.0
"""

from .export import report_to_dict, write_report_json, write_trials_csv
from .models import (
    BasinEntry,
    ExperimentConfig,
    ExperimentReport,
    ReproducibilityStamp,
    TrialOutcome,
)
from .runner import aggregate, match_limit, resolve_workers, run_experiment, run_trial
from .sampling import sample_uniform

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "TrialOutcome",
    "BasinEntry",
    "ReproducibilityStamp",
    "sample_uniform",
    "run_experiment",
    "run_trial",
    "aggregate",
    "match_limit",
    "resolve_workers",
    "write_report_json",
    "write_trials_csv",
    "report_to_dict",
]
