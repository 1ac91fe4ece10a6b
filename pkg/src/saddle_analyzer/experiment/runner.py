"""
Monte Carlo runner: sample, itereer, polijst en classificeer limieten, aggregeer.

Elke trial hangt alleen af van (config, trial index). Bij meer dan één worker draaien
aaneengesloten batches in een ProcessPoolExecutor; uitkomsten worden in trial
volgorde samengevoegd, zodat het rapport gelijk is aan een seriële run.
"""

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike
from pydantic import ValidationError

from .. import __version__
from ..config import settings
from ..analysis import (
    check_forward_invariance,
    classify,
    hessian_sup_report,
    plan_stepsize,
    refine_critical,
)
from ..analysis.models import HessianSupEstimate, InvarianceKind, InvarianceVerdict, PointClass, StepSizePlan
from ..domain import BoxDomain
from ..dynamics import GDMap, Verdict, iterate
from ..errors import ConfigError, InvalidBound, NoConvergence, NonFiniteValue, SaddleAnalyzerError
from ..fields import KnownCriticalPoint, ScalarField, get_catalog, resolve_field
from .models import BasinEntry, ExperimentConfig, ExperimentReport, ReproducibilityStamp, TrialOutcome
from .sampling import sample_uniform

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, int], None]


def match_limit(
    limit: ArrayLike,
    known: Sequence[Union[KnownCriticalPoint, ArrayLike]],
    radius: float,
) -> Optional[int]:
    """
    Index van het dichtstbijzijnde bekende punt binnen radius.

    Lijnen (KnownCriticalPoint met direction) gebruiken de punt-tot-lijn afstand.
    Bij gelijke afstand wint de laagste index.
    """
    if not radius > 0:
        raise ValueError(f"Radius moet > 0 zijn, kreeg {radius}")
    x = np.asarray(limit, dtype=np.float64)
    best: Optional[int] = None
    best_distance = float("inf")
    for i, k in enumerate(known):
        if isinstance(k, KnownCriticalPoint):
            d = k.distance(x)
        else:
            d = float(np.linalg.norm(x - np.asarray(k, dtype=np.float64)))
        if d <= radius and d < best_distance:
            best, best_distance = i, d
    return best


@dataclass(frozen=True)
class _TrialContext:
    config: ExperimentConfig
    gd_map: GDMap
    exit_domain: Optional[BoxDomain]
    known: List[KnownCriticalPoint]


def _resolve(cfg: ExperimentConfig) -> ScalarField:
    try:
        field = resolve_field(cfg.field, cfg.variables)
    except (SaddleAnalyzerError, ValueError) as e:
        raise ConfigError("Ongeldig veld", [f"field: {e}"]) from e
    if field.dimension != cfg.domain.dimension:
        raise ConfigError(
            "Dimensies komen niet overeen",
            [f"domain: {cfg.domain.dimension} assen, veld '{field.name}' heeft {field.dimension} variabelen"],
        )
    return field


def _known_points(cfg: ExperimentConfig) -> List[KnownCriticalPoint]:
    if cfg.known_points is not None:
        return list(cfg.known_points)
    definition = get_catalog().get(cfg.field)
    return list(definition.critical_points) if definition is not None else []


def run_trial(ctx: _TrialContext, index: int) -> TrialOutcome:
    """Eén trial; evaluatiefouten worden Diverged met vlag, nooit fataal."""
    cfg = ctx.config
    field = ctx.gd_map.field
    x0 = sample_uniform(cfg.domain, index, cfg.seed)
    # Alleen begin en staart opnemen; de runner gebruikt alleen het eindpunt
    trajectory = iterate(
        ctx.gd_map, x0, domain=ctx.exit_domain, budget=cfg.budget, tolerances=cfg.tolerances, stride=cfg.budget + 1
    )
    verdict = trajectory.verdict
    non_finite = trajectory.termination.non_finite
    final = trajectory.final_point
    gradnorm = trajectory.final_gradnorm if np.isfinite(trajectory.final_gradnorm) else None

    limit = None
    polished = False
    match = None
    if verdict is Verdict.CONVERGED:
        try:
            refined = refine_critical(field, final, eps_crit=cfg.analysis.eps_crit)
            polished = refined is not None
            point = refined if refined is not None else final
            limit = classify(field, point, cfg.analysis)
            match = match_limit(point, ctx.known, cfg.matching_radius)
        except (NonFiniteValue, NoConvergence) as e:
            logger.warning(f"Trial {index}: classificatie van het limietpunt mislukt: {e}", extra={"trial": index})
            verdict, non_finite, limit, match = Verdict.DIVERGED, True, None, None

    return TrialOutcome(
        trial=index,
        initial_point=x0.tolist(),
        verdict=verdict,
        iterations=trajectory.iterations,
        final_point=[float(v) for v in final],
        final_gradnorm=gradnorm,
        limit=limit,
        polished=polished,
        match=match,
        non_finite=non_finite,
    )


def _build_context(cfg: ExperimentConfig, alpha: float, exit_active: bool) -> _TrialContext:
    field = _resolve(cfg)
    return _TrialContext(
        config=cfg,
        gd_map=GDMap(field, alpha),
        exit_domain=cfg.domain if exit_active else None,
        known=_known_points(cfg),
    )


def _run_batch(payload: str, alpha: float, exit_active: bool, start: int, stop: int) -> List[TrialOutcome]:
    """Worker entry point; bouwt het veld opnieuw op omdat gecompileerde closures niet picklen."""
    cfg = ExperimentConfig.model_validate_json(payload)
    ctx = _build_context(cfg, alpha, exit_active)
    return [run_trial(ctx, i) for i in range(start, stop)]


def resolve_workers(cfg: ExperimentConfig) -> int:
    """Aantal processen; zonder expliciete waarde alle cores voor grote experimenten."""
    if cfg.workers is not None:
        return cfg.workers
    if cfg.trials < settings.experiment.PARALLEL_MIN_TRIALS:
        return 1
    return max(1, min(os.cpu_count() or 1, cfg.trials))


def _batches(trials: int, workers: int) -> List[Tuple[int, int]]:
    size = max(1, -(-trials // (workers * 4)))
    return [(s, min(trials, s + size)) for s in range(0, trials, size)]


def _choose_alpha(
    cfg: ExperimentConfig, field: ScalarField
) -> Tuple[float, Optional[StepSizePlan], Optional[HessianSupEstimate]]:
    if cfg.alpha != "auto":
        return float(cfg.alpha), None, None
    estimate = hessian_sup_report(field, cfg.domain, grid=cfg.auto_grid)
    try:
        plan = plan_stepsize(estimate.value, margin=cfg.margin)
    except InvalidBound as e:
        raise ConfigError("alpha='auto' vereist een L schatting > 0", [f"alpha: {e}"]) from e
    return plan.alpha_sufficient, plan, estimate


def _exit_detection(cfg: ExperimentConfig, gd_map: GDMap) -> Tuple[bool, Optional[InvarianceVerdict]]:
    if cfg.exit_detection == "off":
        return False, None
    if cfg.exit_detection == "on" or not gd_map.field.is_separable():
        return True, None
    verdict = check_forward_invariance(gd_map, cfg.domain, mode="separable-certify")
    return verdict.kind is not InvarianceKind.CERTIFIED_INVARIANT, verdict


def run_experiment(cfg: ExperimentConfig, progress: Optional[ProgressCallback] = None) -> ExperimentReport:
    """
    Voer een Monte Carlo experiment uit.

    Args:
        cfg: Experiment configuratie
        progress: Optionele callback (klaar, totaal) na elke batch

    Returns:
        ExperimentReport: Tellingen per verdict en klasse, basins en fracties

    Raises:
        ConfigError: Bij een ongeldig veld, dimensie conflict of onbruikbare alpha='auto'
    """
    start = time.time()
    field = _resolve(cfg)
    alpha, plan, estimate = _choose_alpha(cfg, field)
    gd_map = GDMap(field, alpha)
    exit_active, invariance = _exit_detection(cfg, gd_map)
    workers = resolve_workers(cfg)

    logger.info(
        f"🎲 Experiment gestart: {cfg.trials} trials op {field.name}",
        extra={
            "field": field.name,
            "alpha": alpha,
            "trials": cfg.trials,
            "seed": cfg.seed,
            "workers": workers,
            "exit_detection": exit_active,
        },
    )

    outcomes: List[TrialOutcome] = []
    if workers <= 1:
        ctx = _TrialContext(
            config=cfg, gd_map=gd_map, exit_domain=cfg.domain if exit_active else None, known=_known_points(cfg)
        )
        for i in range(cfg.trials):
            outcomes.append(run_trial(ctx, i))
            if progress is not None and (i + 1) % 100 == 0:
                progress(i + 1, cfg.trials)
    else:
        payload = cfg.model_dump_json()
        batches = _batches(cfg.trials, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_batch, payload, alpha, exit_active, s, e) for s, e in batches]
            # Samenvoegen in trial volgorde
            for future in futures:
                outcomes.extend(future.result())
                if progress is not None:
                    progress(len(outcomes), cfg.trials)

    report = aggregate(cfg, field, alpha, outcomes, plan, estimate, exit_active, invariance, time.time() - start)
    logger.info(
        f"✅ Experiment klaar: saddle-hit fractie {report.saddle_hit_fraction}",
        extra={
            "field": field.name,
            "trials": cfg.trials,
            "verdict_counts": report.verdict_counts,
            "class_counts": report.class_counts,
            "duration": report.wall_clock_seconds,
        },
    )
    return report


def aggregate(
    cfg: ExperimentConfig,
    field: ScalarField,
    alpha: float,
    outcomes: List[TrialOutcome],
    plan: Optional[StepSizePlan] = None,
    estimate: Optional[HessianSupEstimate] = None,
    exit_active: bool = False,
    invariance: Optional[InvarianceVerdict] = None,
    wall_clock: float = 0.0,
) -> ExperimentReport:
    """Tel uitkomsten per verdict, klasse en bekend punt."""
    verdicts = ExperimentReport.empty_verdict_counts()
    classes = ExperimentReport.empty_class_counts()
    known = _known_points(cfg)
    basin_counts = [0] * len(known)
    unmatched = 0
    non_finite = 0
    for o in outcomes:
        verdicts[o.verdict.value] += 1
        classes[o.class_label] += 1
        non_finite += int(o.non_finite)
        if o.limit is not None:
            if o.match is None:
                unmatched += 1
            else:
                basin_counts[o.match] += 1

    n = len(outcomes)
    basins = [
        BasinEntry(
            index=i,
            label=kp.label_or_default(),
            point=kp.point,
            direction=kp.direction,
            expected_class=kp.expected_class,
            count=count,
            fraction=count / n if n else 0.0,
        )
        for i, (kp, count) in enumerate(zip(known, basin_counts))
    ]
    try:
        return ExperimentReport(
            config=cfg.model_dump(mode="json"),
            field_name=field.name,
            dimension=field.dimension,
            alpha=alpha,
            step_size_plan=plan,
            hessian_sup=estimate,
            exit_detection_active=exit_active,
            invariance=invariance,
            trials=n,
            verdict_counts=verdicts,
            class_counts=classes,
            basins=basins,
            unmatched=unmatched,
            saddle_hit_fraction=classes[PointClass.STRICT_SADDLE.value] / n if n else 0.0,
            budget_exhausted_fraction=verdicts[Verdict.BUDGET_EXHAUSTED.value] / n if n else 0.0,
            non_finite_count=non_finite,
            wall_clock_seconds=wall_clock,
            stamp=ReproducibilityStamp(seed=cfg.seed, version=__version__, config_sha256=cfg.sha256()),
            outcomes=outcomes,
        )
    except ValidationError as e:
        raise ConfigError("Rapport is inconsistent", [err["msg"] for err in e.errors()]) from e
