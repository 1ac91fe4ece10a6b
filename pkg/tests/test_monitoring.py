"""
Tests voor de metrics collector.
"""

import json

import pytest

from saddle_analyzer.monitoring import metrics
from saddle_analyzer.monitoring.metrics import MetricsCollector


class TestMetricsCollector:
    """Test het registreren en exporteren van metrics."""

    def test_record_calls(self) -> None:
        collector = MetricsCollector(persist=False)
        collector.record_call("classify", True, 0.1)
        collector.record_call("check_invariance", True, 0.2, negative=True)
        collector.record_call("classify", False, 0.05, error_type="ExpressionSyntaxError")

        analysis = collector.analysis
        assert analysis.total_calls == 3
        assert analysis.successful_calls == 2
        assert analysis.failed_calls == 1
        assert analysis.negative_results == 1
        assert analysis.calls_per_operation == {"classify": 2, "check_invariance": 1}
        assert analysis.error_counts == {"ExpressionSyntaxError": 1}
        assert analysis.get_success_rate() == pytest.approx(200 / 3)

    def test_failed_call_is_never_negative(self) -> None:
        collector = MetricsCollector(persist=False)
        collector.record_call("check_diffeo", False, 0.1, error_type="ValueError", negative=True)
        assert collector.analysis.negative_results == 0

    def test_record_experiment(self) -> None:
        collector = MetricsCollector(persist=False)
        collector.record_experiment(trials=100, saddle_hits=0, budget_exhausted=2, diverged=3, duration=2.0)
        collector.record_experiment(trials=50, saddle_hits=1, budget_exhausted=0, diverged=0, duration=1.0)
        assert collector.experiments.runs == 2
        assert collector.experiments.trials == 150
        assert collector.experiments.saddle_hits == 1
        assert collector.experiments.trials_per_second() == 50.0

    def test_timer(self) -> None:
        collector = MetricsCollector(persist=False)
        assert collector.stop_timer("onbekend") == 0.0
        collector.start_timer("run")
        assert collector.stop_timer("run") >= 0.0
        assert collector.stop_timer("run") == 0.0

    def test_comprehensive_metrics(self) -> None:
        collector = MetricsCollector(persist=False)
        collector.record_call("classify", True, 0.5)
        data = collector.get_comprehensive_metrics()
        print(f"📊 Metrics: {json.dumps(data, indent=2)}")
        assert set(data) == {"timestamp", "system", "analysis", "experiments"}
        assert data["analysis"]["success_rate_percent"] == 100.0
        assert data["analysis"]["p95_time"] == 0.5
        assert data["experiments"]["trials_per_second"] == 0.0

    def test_reset(self) -> None:
        collector = MetricsCollector(persist=False)
        collector.record_call("classify", True, 0.1)
        collector.reset()
        assert collector.analysis.total_calls == 0
        assert collector.experiments.runs == 0


class TestExport:
    """Test de export formaten."""

    def test_json(self) -> None:
        collector = MetricsCollector(persist=False)
        collector.record_call("classify", True, 0.1)
        data = json.loads(collector.export_metrics("json"))
        assert data["analysis"]["total_calls"] == 1

    def test_prometheus(self) -> None:
        collector = MetricsCollector(persist=False)
        collector.record_call("classify", True, 0.5)
        collector.record_call("classify", True, 5.0)
        text = collector.export_metrics("prometheus")
        assert "saddle_calls_total 2" in text
        assert '# TYPE saddle_call_duration_seconds histogram' in text
        assert 'saddle_call_duration_seconds_bucket{le="1.0"} 1' in text
        assert 'saddle_call_duration_seconds_bucket{le="+Inf"} 2' in text

    def test_unknown_format(self) -> None:
        with pytest.raises(ValueError, match="Niet ondersteund"):
            MetricsCollector(persist=False).export_metrics("xml")


class TestPersistence:
    """Test het delen van metrics via een bestand."""

    def test_persist_and_load(self, tmp_path, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setattr(metrics, "METRICS_FILE", tmp_path / "metrics_live.json")
        collector = MetricsCollector(persist=True)
        collector.record_experiment(trials=10, saddle_hits=0, budget_exhausted=0, diverged=0, duration=0.5)

        loaded = MetricsCollector.load_metrics_from_file()
        assert loaded is not None
        assert loaded["experiments"]["trials"] == 10

    def test_no_file_without_persist(self, tmp_path, monkeypatch: pytest.MonkeyPatch) -> None:
        target = tmp_path / "metrics_live.json"
        monkeypatch.setattr(metrics, "METRICS_FILE", target)
        MetricsCollector(persist=False).record_call("classify", True, 0.1)
        assert not target.exists()
        assert MetricsCollector.load_metrics_from_file() is None

    def test_corrupt_file(self, tmp_path, monkeypatch: pytest.MonkeyPatch) -> None:
        target = tmp_path / "metrics_live.json"
        target.write_text("{kapot", encoding="utf-8")
        monkeypatch.setattr(metrics, "METRICS_FILE", target)
        assert MetricsCollector.load_metrics_from_file() is None
