"""
Tests voor de gradient descent map, iterate en de stopcriteria.
"""

import csv
import json

import numpy as np
import pytest
from pydantic import ValidationError

from saddle_analyzer.domain import BoxDomain
from saddle_analyzer.errors import NonFiniteValue
from saddle_analyzer.fields import ScalarField, build_field
from saddle_analyzer.dynamics import (
    CycleMonitor,
    DynamicsTolerances,
    GDMap,
    TrajectorySummary,
    Verdict,
    detect_cycle,
    iterate,
    record_stride,
    replay,
    step,
    write_trajectory_csv,
)


class TestStep:
    """Test één stap van de map."""

    def test_double_well_alpha_two(self, double_well: ScalarField) -> None:
        # g(x, y) = (−x, 3y − 2y³)
        actual = step(GDMap(double_well, 2.0), [0.3, 0.5])
        np.testing.assert_allclose(actual, [-0.3, 1.25])

    def test_zero_alpha_is_identity(self, double_well: ScalarField) -> None:
        np.testing.assert_array_equal(step(GDMap(double_well, 0.0), [0.3, 0.5]), [0.3, 0.5])

    def test_negative_alpha_rejected(self, double_well: ScalarField) -> None:
        with pytest.raises(ValueError, match="Stapgrootte"):
            GDMap(double_well, -0.1)

    def test_non_finite_point(self, double_well: ScalarField) -> None:
        with pytest.raises(NonFiniteValue):
            step(GDMap(double_well, 0.1), [float("nan"), 0.0])

    def test_map_is_callable(self, quadratic_bowl: ScalarField) -> None:
        np.testing.assert_allclose(GDMap(quadratic_bowl, 0.5)([2.0, -4.0]), [1.0, -2.0])


class TestIterate:
    """Test de stopcriteria van iterate."""

    def test_quadratic_bowl_exact_step(self, quadratic_bowl: ScalarField) -> None:
        # α = 1 landt na één stap exact in de oorsprong; convergentie pas zodra ook de stap klein is
        trajectory = iterate(GDMap(quadratic_bowl, 1.0), [0.7, -0.2])
        assert trajectory.verdict == Verdict.CONVERGED
        assert trajectory.iterations == 2, f"Expected 2 iteraties, got {trajectory.iterations}"
        assert trajectory.termination.limit == [0.0, 0.0]

    def test_quadratic_bowl_converges(self, quadratic_bowl: ScalarField) -> None:
        trajectory = iterate(GDMap(quadratic_bowl, 0.5), [1.0, 1.0])
        assert trajectory.verdict == Verdict.CONVERGED
        assert trajectory.final_gradnorm <= 1e-8
        assert np.linalg.norm(trajectory.final_point) <= 1e-8

    def test_no_convergence_at_start(self, quadratic_bowl: ScalarField) -> None:
        # In een kritiek punt starten telt niet als convergentie op k = 0
        trajectory = iterate(GDMap(quadratic_bowl, 0.5), [0.0, 0.0])
        assert trajectory.verdict == Verdict.CONVERGED
        assert trajectory.iterations == 1

    def test_line_of_saddles_diverges(self, line_of_saddles: ScalarField) -> None:
        trajectory = iterate(GDMap(line_of_saddles, 0.1), [0.6, 0.3, 0.8], budget=10_000)
        assert trajectory.verdict == Verdict.DIVERGED
        assert not trajectory.termination.non_finite
        assert trajectory.iterations < 1000, f"Expected snelle divergentie, got {trajectory.iterations}"

    def test_exits_domain(self, double_well: ScalarField, double_well_box: BoxDomain) -> None:
        # y = 1.5 valt buiten [−√2, √2] en springt naar −2.25
        trajectory = iterate(GDMap(double_well, 2.0), [0.3, 1.5], domain=double_well_box)
        assert trajectory.verdict == Verdict.EXITED_DOMAIN
        assert trajectory.termination.step_index == 1

    def test_boundary_counts_as_inside(self, double_well: ScalarField) -> None:
        box = BoxDomain.parse("(-1,1)x(-2,2)")
        trajectory = iterate(GDMap(double_well, 0.0), [1.0, 2.0], domain=box, budget=3)
        assert trajectory.verdict == Verdict.BUDGET_EXHAUSTED

    def test_budget_exhausted(self, quadratic_bowl: ScalarField) -> None:
        trajectory = iterate(GDMap(quadratic_bowl, 0.01), [1.0, 1.0], budget=10)
        assert trajectory.verdict == Verdict.BUDGET_EXHAUSTED
        assert trajectory.termination.non_convergent
        assert trajectory.iterations == 10

    def test_invalid_budget(self, quadratic_bowl: ScalarField) -> None:
        with pytest.raises(ValueError, match="Budget"):
            iterate(GDMap(quadratic_bowl, 0.1), [1.0, 1.0], budget=0)

    def test_dimension_mismatch(self, quadratic_bowl: ScalarField) -> None:
        with pytest.raises(ValueError, match="dimensie"):
            iterate(GDMap(quadratic_bowl, 0.1), [1.0, 1.0, 1.0])

    def test_non_finite_evaluation(self) -> None:
        field = build_field("exp(x)", ["x"])
        trajectory = iterate(GDMap(field, 1.0), [1000.0])
        assert trajectory.verdict == Verdict.DIVERGED
        assert trajectory.termination.non_finite

    def test_cycle_full_vector(self, double_well: ScalarField) -> None:
        trajectory = iterate(GDMap(double_well, 2.0), [0.3, 0.0])
        assert trajectory.verdict == Verdict.CYCLING
        certificate = trajectory.termination.cycle
        assert certificate is not None
        assert certificate.full_vector
        assert sorted(abs(p[0]) for p in certificate.pair) == [0.3, 0.3]

    def test_cycle_single_coordinate(self, double_well: ScalarField) -> None:
        # x alterneert exact; y blijft in het invariante interval [−√2, √2] zonder periode
        trajectory = iterate(GDMap(double_well, 2.0), [0.3, 0.5], budget=200)
        assert trajectory.verdict == Verdict.CYCLING
        certificate = trajectory.termination.cycle
        assert certificate is not None
        assert certificate.coordinates == [0], f"Expected coördinaat 0, got {certificate.coordinates}"
        assert not certificate.full_vector

    def test_last_two_iterates_always_recorded(self, quadratic_bowl: ScalarField) -> None:
        trajectory = iterate(GDMap(quadratic_bowl, 0.5), [1.0, 1.0], stride=7)
        assert trajectory.indices[-1] == trajectory.iterations
        assert trajectory.indices[-2] == trajectory.iterations - 1
        assert all(k % 7 == 0 for k in trajectory.indices[:-2])

    def test_replay_is_exact(self, double_well: ScalarField) -> None:
        m = GDMap(double_well, 0.1)
        trajectory = iterate(m, [0.4, 0.1])
        assert trajectory.verdict == Verdict.CONVERGED
        assert replay(m, trajectory) <= 1e-15


class TestDetectCycle:
    """Test de periode-2 detectie."""

    def test_too_short_window(self) -> None:
        assert detect_cycle([[1.0], [-1.0], [1.0]], eps_cycle=1e-9, persistence=1) is None

    def test_alternating_vector(self) -> None:
        window = [[1.0, 0.5], [-1.0, -0.5]] * 11
        certificate = detect_cycle(window, eps_cycle=1e-9, persistence=20)
        assert certificate is not None
        assert certificate.full_vector
        assert certificate.coordinates == [0, 1]
        assert certificate.max_return_distance == 0.0

    def test_converging_sequence_is_not_a_cycle(self) -> None:
        window = [[0.5**k] for k in range(30)]
        assert detect_cycle(window, eps_cycle=1e-9, persistence=20) is None

    def test_monitor_matches_batch(self) -> None:
        monitor = CycleMonitor(eps_cycle=1e-9, persistence=5)
        results = [monitor.push(np.array([(-1.0) ** k, 0.25 * k])) for k in range(10)]
        certificate = next(r for r in results if r is not None)
        assert certificate.coordinates == [0]


class TestRecording:
    """Test opname en export van trajecten."""

    def test_record_stride(self) -> None:
        assert record_stride(2, 100_000) == 1
        assert record_stride(3, 1_000_000) == 3

    def test_tolerances_validated(self) -> None:
        with pytest.raises(ValidationError):
            DynamicsTolerances(eps_grad=0.0)

    def test_csv_and_sidecar(self, quadratic_bowl: ScalarField, tmp_path) -> None:
        trajectory = iterate(GDMap(quadratic_bowl, 1.0), [0.7, -0.2])
        sidecar = write_trajectory_csv(trajectory, tmp_path / "run" / "traj.csv")

        with (tmp_path / "run" / "traj.csv").open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["iter", "x1", "x2", "f", "gradnorm"]
        assert [int(r[0]) for r in rows[1:]] == [0, 1, 2]
        assert float(rows[1][1]) == 0.7

        summary = json.loads(sidecar.read_text(encoding="utf-8"))
        assert sidecar.suffix == ".json"
        assert summary["termination"]["verdict"] == "Converged"
        assert summary["recorded"] == 3

    def test_summary_drops_non_finite_values(self) -> None:
        trajectory = iterate(GDMap(build_field("exp(x)", ["x"]), 1.0), [1000.0])
        summary = TrajectorySummary.from_trajectory(trajectory)
        assert summary.final_value is None
        assert summary.termination.non_finite
