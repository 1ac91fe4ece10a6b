"""
Metrics collector voor de Saddle Analyzer.
Verzamelt gebruik en performance statistieken van de tools en experimenten.
"""
import json
import logging
import time
from collections import deque
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from pathlib import Path
from typing import Any, Deque, Dict, List, Optional

from ..config import settings

logger = logging.getLogger(__name__)

# Metrics bestand voor sharing tussen processen
METRICS_FILE = Path(settings.LOG_DIR) / "metrics_live.json"


def _percentile(values: Deque[float], percentile: float) -> float:
    if not values:
        return 0.0
    ordered = sorted(values)
    index = min(len(ordered) - 1, int(len(ordered) * percentile / 100))
    return ordered[index]


@dataclass
class AnalysisMetrics:
    """Metrics voor analyse operaties (classify, stepsize, invariance, ...)."""
    total_calls: int = 0
    successful_calls: int = 0
    failed_calls: int = 0
    total_time: float = 0.0
    average_time: float = 0.0

    # Per operatie
    calls_per_operation: Dict[str, int] = field(default_factory=dict)

    # Negatieve uitkomsten (bijv. FalsifiedAt) zijn geen fouten
    negative_results: int = 0

    error_counts: Dict[str, int] = field(default_factory=dict)
    durations: Deque[float] = field(default_factory=lambda: deque(maxlen=100))

    def record(
        self,
        operation: str,
        success: bool,
        duration: float,
        error_type: Optional[str] = None,
        negative: bool = False,
    ) -> None:
        self.total_calls += 1
        self.total_time += duration
        self.durations.append(duration)
        self.average_time = self.total_time / self.total_calls
        self.calls_per_operation[operation] = self.calls_per_operation.get(operation, 0) + 1
        if success:
            self.successful_calls += 1
            self.negative_results += int(negative)
        else:
            self.failed_calls += 1
            key = error_type or "unknown"
            self.error_counts[key] = self.error_counts.get(key, 0) + 1

    def get_success_rate(self) -> float:
        if self.total_calls == 0:
            return 0.0
        return (self.successful_calls / self.total_calls) * 100


@dataclass
class ExperimentMetrics:
    """Metrics voor Monte Carlo runs."""
    runs: int = 0
    trials: int = 0
    saddle_hits: int = 0
    budget_exhausted: int = 0
    diverged: int = 0
    total_time: float = 0.0
    run_times: Deque[float] = field(default_factory=lambda: deque(maxlen=100))

    def record_run(self, trials: int, saddle_hits: int, budget_exhausted: int, diverged: int, duration: float) -> None:
        self.runs += 1
        self.trials += trials
        self.saddle_hits += saddle_hits
        self.budget_exhausted += budget_exhausted
        self.diverged += diverged
        self.total_time += duration
        self.run_times.append(duration)

    def trials_per_second(self) -> float:
        if self.total_time <= 0:
            return 0.0
        return self.trials / self.total_time


@dataclass
class SystemMetrics:
    """Uptime van het proces."""
    start_time: datetime = field(default_factory=datetime.now)
    uptime: timedelta = field(default_factory=lambda: timedelta(0))

    def update_uptime(self) -> None:
        self.uptime = datetime.now() - self.start_time

    def get_uptime_formatted(self) -> str:
        total_seconds = int(self.uptime.total_seconds())
        hours = total_seconds // 3600
        minutes = (total_seconds % 3600) // 60
        seconds = total_seconds % 60
        return f"{hours:02d}:{minutes:02d}:{seconds:02d}"


class MetricsCollector:
    """Hoofdklasse voor het verzamelen en beheren van alle metrics."""

    def __init__(self, persist: Optional[bool] = None) -> None:
        self.analysis = AnalysisMetrics()
        self.experiments = ExperimentMetrics()
        self.system = SystemMetrics()
        self.persist = settings.LOG_TO_FILE if persist is None else persist
        self._start_times: Dict[str, float] = {}
        logger.debug("Metrics collector geïnitialiseerd")

    def start_timer(self, operation: str) -> None:
        self._start_times[operation] = time.time()

    def stop_timer(self, operation: str) -> float:
        """Stop de timer en geef de duur; 0.0 als er geen timer liep."""
        if operation not in self._start_times:
            return 0.0
        return time.time() - self._start_times.pop(operation)

    def record_call(
        self,
        operation: str,
        success: bool,
        duration: float,
        error_type: Optional[str] = None,
        negative: bool = False,
    ) -> None:
        self.analysis.record(operation, success, duration, error_type, negative)
        logger.debug(f"Call geregistreerd: {operation}, success: {success}, tijd: {duration:.3f}s")
        self._save_metrics_to_file()

    def record_experiment(
        self, trials: int, saddle_hits: int, budget_exhausted: int, diverged: int, duration: float
    ) -> None:
        self.experiments.record_run(trials, saddle_hits, budget_exhausted, diverged, duration)
        self._save_metrics_to_file()

    def reset(self) -> None:
        self.analysis = AnalysisMetrics()
        self.experiments = ExperimentMetrics()
        self.system = SystemMetrics()

    def get_comprehensive_metrics(self) -> Dict[str, Any]:
        self.system.update_uptime()
        return {
            "timestamp": datetime.now().isoformat(),
            "system": {"uptime": self.system.get_uptime_formatted()},
            "analysis": {
                "total_calls": self.analysis.total_calls,
                "successful_calls": self.analysis.successful_calls,
                "failed_calls": self.analysis.failed_calls,
                "negative_results": self.analysis.negative_results,
                "success_rate_percent": round(self.analysis.get_success_rate(), 2),
                "average_time": round(self.analysis.average_time, 4),
                "p95_time": round(_percentile(self.analysis.durations, 95), 4),
                "p99_time": round(_percentile(self.analysis.durations, 99), 4),
                "calls_per_operation": dict(self.analysis.calls_per_operation),
                "error_breakdown": dict(self.analysis.error_counts),
            },
            "experiments": {
                "runs": self.experiments.runs,
                "trials": self.experiments.trials,
                "saddle_hits": self.experiments.saddle_hits,
                "budget_exhausted": self.experiments.budget_exhausted,
                "diverged": self.experiments.diverged,
                "trials_per_second": round(self.experiments.trials_per_second(), 2),
            },
        }

    def export_metrics(self, format: str = "json") -> str:
        metrics = self.get_comprehensive_metrics()
        if format.lower() == "json":
            return json.dumps(metrics, indent=2, default=str)
        if format.lower() == "prometheus":
            return self._to_prometheus_format()
        raise ValueError(f"Niet ondersteund formaat: {format}")

    def _to_prometheus_format(self) -> str:
        lines: List[str] = []

        def metric(name: str, kind: str, help_text: str, value: float) -> None:
            lines.append(f"# HELP {name} {help_text}")
            lines.append(f"# TYPE {name} {kind}")
            lines.append(f"{name} {value}")

        metric("saddle_uptime_seconds", "gauge", "Process uptime in seconds", self.system.uptime.total_seconds())
        metric("saddle_calls_total", "counter", "Total tool calls", self.analysis.total_calls)
        metric("saddle_calls_failed", "counter", "Failed tool calls", self.analysis.failed_calls)
        metric("saddle_negative_results", "counter", "Negative analysis results", self.analysis.negative_results)
        metric("saddle_experiment_trials_total", "counter", "Monte Carlo trials", self.experiments.trials)
        metric("saddle_experiment_saddle_hits_total", "counter", "Strict saddle limits", self.experiments.saddle_hits)

        lines.append("# HELP saddle_call_duration_seconds Tool call duration")
        lines.append("# TYPE saddle_call_duration_seconds histogram")
        for bound in ("0.1", "1.0", "10.0", "60.0"):
            count = len([t for t in self.analysis.durations if t <= float(bound)])
            lines.append(f'saddle_call_duration_seconds_bucket{{le="{bound}"}} {count}')
        lines.append(f'saddle_call_duration_seconds_bucket{{le="+Inf"}} {len(self.analysis.durations)}')
        return "\n".join(lines)

    def _save_metrics_to_file(self) -> None:
        """Sla metrics op naar bestand voor live sharing tussen processen."""
        if not self.persist:
            return
        try:
            METRICS_FILE.parent.mkdir(parents=True, exist_ok=True)
            with open(METRICS_FILE, "w", encoding="utf-8") as f:
                json.dump(self.get_comprehensive_metrics(), f, indent=2, default=str)
        except OSError as e:
            logger.error(f"Fout bij opslaan metrics naar bestand: {e}")

    @staticmethod
    def load_metrics_from_file() -> Optional[Dict[str, Any]]:
        try:
            if METRICS_FILE.exists():
                with open(METRICS_FILE, "r", encoding="utf-8") as f:
                    parsed: Dict[str, Any] = json.load(f)
                    return parsed
            return None
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Fout bij laden metrics uit bestand: {e}")
            return None


# Global metrics collector instance
metrics_collector = MetricsCollector()
