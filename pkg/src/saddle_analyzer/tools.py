"""
Gedeelde tools voor de CLI en de MCP server.

Elke tool is een dunne async adapter over een library functie:
- CPU werk draait via asyncio.to_thread
- Het resultaat is een JSON-klare dict {"success", "negative", "result", "duration"}
- Fouten worden gelogd en als {"success": False, "error", "error_type", "usage_error"} teruggegeven
- Elke aanroep wordt in de metrics collector geregistreerd

"negative" betekent: de analyse liep, maar vond een negatief resultaat (bijv. FalsifiedAt).
"""

import asyncio
import logging
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel

from .analysis import (
    InvarianceKind,
    check_diffeomorphism,
    check_forward_invariance,
    check_lipschitz,
    classify,
    hessian_sup_report,
    plan_stepsize,
)
from .analysis.invariance import InvarianceMode
from .domain import BoxDomain
from .dynamics import GDMap, TrajectorySummary, iterate, write_trajectory_csv
from .errors import ConfigError, SaddleAnalyzerError
from .experiment import report_to_dict, run_experiment, write_report_json, write_trials_csv
from .fields import get_catalog, resolve_field
from .monitoring.metrics import metrics_collector
from .run_config import load_run_config, parse_experiment_config
from .selfcheck import run_selfcheck

logger = logging.getLogger(__name__)


def is_usage_error(error: BaseException) -> bool:
    """Config en invoer fouten (exit code 2) tegenover analyse fouten."""
    return isinstance(error, (ConfigError, ValueError, TypeError))


def _jsonable(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    return value


async def _run_tool(
    operation: str,
    fn: Callable[[], Any],
    negative: Callable[[Any], bool] = lambda _: False,
) -> Dict[str, Any]:
    start = time.time()
    try:
        result = await asyncio.to_thread(fn)
    except Exception as e:
        duration = time.time() - start
        if isinstance(e, (SaddleAnalyzerError, ValueError, OSError)):
            logger.error(f"{operation} mislukt: {e}", exc_info=True, extra={"operation": operation})
        else:
            logger.error(
                f"{operation} onverwachte fout: {type(e).__name__}: {e}",
                exc_info=True,
                extra={"operation": operation, "error_type": type(e).__name__},
            )
        metrics_collector.record_call(operation, False, duration, type(e).__name__)
        return {
            "success": False,
            "error": str(e),
            "error_type": type(e).__name__,
            "field_errors": getattr(e, "field_errors", []),
            "usage_error": is_usage_error(e),
            "duration": duration,
        }

    duration = time.time() - start
    is_negative = bool(negative(result))
    metrics_collector.record_call(operation, True, duration, negative=is_negative)
    logger.info(
        f"{operation} voltooid in {duration:.3f}s",
        extra={"operation": operation, "negative": is_negative, "duration": duration},
    )
    return {"success": True, "negative": is_negative, "result": _jsonable(result), "duration": duration}


def parse_point(text: str) -> List[float]:
    """Komma-gescheiden coördinaten, bijv. "0.3,0.1"."""
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"Ongeldig punt '{text}': verwacht komma-gescheiden getallen") from None


async def classify_point(field: str, point: Sequence[float], variables: Optional[List[str]] = None) -> Dict[str, Any]:
    """
    Classificeer een punt als LocalMin, StrictSaddle, Degenerate of NotCritical.

    Args:
        field: Builtin naam of expressie
        point: Coördinaten
        variables: Variabelen volgorde voor een expressie
    """
    logger.info(f"classify_point: {field} in {list(point)}")
    return await _run_tool("classify", lambda: classify(resolve_field(field, variables), point))


async def plan_step_size(
    field: str,
    domain: str,
    margin: Optional[float] = None,
    gamma: Optional[float] = None,
    lipschitz: Optional[float] = None,
    grid: Optional[List[int]] = None,
    variables: Optional[List[str]] = None,
) -> Dict[str, Any]:
    """
    Voldoende en noodzakelijke stapgrootte grenzen.

    Zonder `lipschitz` wordt L geschat als sup ‖∇²f‖ op een grid (ondergrens).
    """

    def work() -> Dict[str, Any]:
        f = resolve_field(field, variables)
        box = BoxDomain.parse(domain)
        estimate = None
        L = lipschitz
        if L is None:
            estimate = hessian_sup_report(f, box, grid=grid)
            L = estimate.value
        plan = plan_stepsize(L, margin=margin, gamma=gamma, L_is_lower_bound=lipschitz is None)
        return {"plan": _jsonable(plan), "hessian_sup": _jsonable(estimate)}

    return await _run_tool("stepsize", work)


async def check_invariance(
    field: str,
    domain: str,
    alpha: float,
    certify: bool = False,
    density: Optional[int] = None,
    samples: int = 100_000,
    seed: int = 0,
    variables: Optional[List[str]] = None,
) -> Dict[str, Any]:
    """Voorwaartse invariantie van de box onder g; FalsifiedAt telt als negatief."""

    def work() -> Any:
        m = GDMap(resolve_field(field, variables), alpha)
        mode: InvarianceMode = "separable-certify" if certify else "sample"
        box = BoxDomain.parse(domain)
        return check_forward_invariance(m, box, mode=mode, density=density, rng_seed=seed, samples=samples)

    return await _run_tool("invariance", work, negative=lambda v: v.kind is InvarianceKind.FALSIFIED_AT)


async def check_diffeo(
    field: str,
    domain: str,
    alpha: float,
    point_samples: int = 10_000,
    pair_samples: int = 10_000,
    seed: int = 0,
    variables: Optional[List[str]] = None,
) -> Dict[str, Any]:
    """Eigenwaarde en injectiviteit diagnostiek van g."""

    def work() -> Any:
        return check_diffeomorphism(
            resolve_field(field, variables), alpha, BoxDomain.parse(domain), point_samples, pair_samples, seed
        )

    return await _run_tool("diffeo", work, negative=lambda r: not r.passed)


async def verify_lipschitz(
    field: str,
    domain: str,
    lipschitz: float,
    pair_samples: int = 100_000,
    seed: int = 0,
    variables: Optional[List[str]] = None,
) -> Dict[str, Any]:
    """Steekproef van de Lipschitz conditie voor ∇f."""

    def work() -> Any:
        return check_lipschitz(resolve_field(field, variables), BoxDomain.parse(domain), lipschitz, pair_samples, seed)

    return await _run_tool("lipschitz", work, negative=lambda r: not r.passed)


async def run_trajectory(
    field: str,
    alpha: float,
    x0: Sequence[float],
    domain: Optional[str] = None,
    budget: Optional[int] = None,
    out: Optional[str] = None,
    variables: Optional[List[str]] = None,
) -> Dict[str, Any]:
    """Eén traject; met `out` ook CSV plus JSON sidecar."""

    def work() -> Dict[str, Any]:
        m = GDMap(resolve_field(field, variables), alpha)
        box = BoxDomain.parse(domain) if domain else None
        trajectory = iterate(m, x0, domain=box, budget=budget)
        summary = TrajectorySummary.from_trajectory(trajectory).model_dump(mode="json")
        if out:
            summary["csv"] = str(Path(out))
            summary["sidecar"] = str(write_trajectory_csv(trajectory, out))
        return summary

    return await _run_tool("run", work)


async def run_monte_carlo(
    config_path: Optional[str] = None,
    config: Optional[Dict[str, Any]] = None,
    out: Optional[str] = None,
    trials_csv: Optional[str] = None,
    workers: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Monte Carlo experiment uit een RunConfig bestand of een ExperimentConfig dict.

    Returns:
        Dict met het rapport zonder trial lijst
    """

    def work() -> Dict[str, Any]:
        report_path: Optional[Path] = Path(out) if out else None
        csv_path: Optional[Path] = Path(trials_csv) if trials_csv else None
        if config_path is not None:
            run_cfg = load_run_config(config_path)
            cfg = run_cfg.effective_experiment()
            report_path = report_path or run_cfg.output.report
            csv_path = csv_path or run_cfg.output.trials_csv
        elif config is not None:
            cfg = parse_experiment_config(config)
        else:
            raise ConfigError("Geen configuratie opgegeven", ["config: geef config_path of config"])
        if workers is not None:
            cfg = cfg.model_copy(update={"workers": workers})

        report = run_experiment(cfg)
        metrics_collector.record_experiment(
            report.trials,
            report.class_counts["StrictSaddle"],
            report.verdict_counts["BudgetExhausted"],
            report.verdict_counts["Diverged"],
            report.wall_clock_seconds,
        )
        payload = report_to_dict(report)
        if report_path is not None:
            payload["report_path"] = str(write_report_json(report, report_path))
        if csv_path is not None:
            payload["trials_csv"] = str(write_trials_csv(report, csv_path))
        return payload

    return await _run_tool("experiment", work)


async def selfcheck(points: int = 1000, matrices: int = 1000, seed: int = 0) -> Dict[str, Any]:
    """fd_check over alle builtins en de eigensolver oracle suite."""
    return await _run_tool("selfcheck", lambda: run_selfcheck(points, matrices, seed), negative=lambda r: not r.passed)


async def list_fields() -> Dict[str, Any]:
    """Catalogus van builtin velden."""
    return await _run_tool("fields", lambda: {"fields": get_catalog().describe_all()})


async def get_metrics() -> Dict[str, Any]:
    """Huidige gebruik en performance metrics."""
    try:
        return metrics_collector.get_comprehensive_metrics()
    except Exception as e:
        logger.error(f"Fout bij ophalen metrics: {e}", exc_info=True)
        return {"error": str(e)}
