"""
Analyse van kritieke punten, stapgrootte en de gradient descent map.

Usage:
    >>> from saddle_analyzer.analysis import classify, estimate_hessian_sup, plan_stepsize
    >>> from saddle_analyzer.fields import resolve_field
    >>> field = resolve_field("double-well")
    >>> classify(field, [0.0, 0.0]).classification.value
    'StrictSaddle'
    >>> plan_stepsize(11.0, margin=11 / 12).alpha_sufficient
    0.08333333333333333
"""

from .critical import (
    check_minimum_stability,
    classify,
    estimate_gamma,
    fixed_point_splitting,
    refine_critical,
)
from .diffeo import check_diffeomorphism
from .invariance import MODES, check_forward_invariance
from .models import (
    AnalysisTolerances,
    AxisBound,
    BoxDomain,
    CriticalPointRecord,
    DescentReport,
    DiffeoReport,
    GammaEstimate,
    HessianSupEstimate,
    InvarianceKind,
    InvarianceVerdict,
    LipschitzReport,
    MinimumStability,
    PointClass,
    SplittingReport,
    StepSizePlan,
)
from .smoothness import (
    check_descent,
    check_lipschitz,
    estimate_hessian_sup,
    hessian_sup_report,
    plan_stepsize,
    spectral_radii,
)

__all__ = [
    "BoxDomain",
    "PointClass",
    "AnalysisTolerances",
    "CriticalPointRecord",
    "StepSizePlan",
    "HessianSupEstimate",
    "InvarianceKind",
    "InvarianceVerdict",
    "AxisBound",
    "LipschitzReport",
    "DiffeoReport",
    "DescentReport",
    "MinimumStability",
    "SplittingReport",
    "GammaEstimate",
    "classify",
    "refine_critical",
    "estimate_gamma",
    "check_minimum_stability",
    "fixed_point_splitting",
    "estimate_hessian_sup",
    "hessian_sup_report",
    "spectral_radii",
    "plan_stepsize",
    "check_lipschitz",
    "check_descent",
    "check_diffeomorphism",
    "check_forward_invariance",
    "MODES",
]
