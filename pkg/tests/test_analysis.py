"""
Tests voor classificatie, verfijning, γ, stabiliteit van minima en stapgrootte planning.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from saddle_analyzer.analysis import (
    CriticalPointRecord,
    PointClass,
    check_descent,
    check_lipschitz,
    check_minimum_stability,
    classify,
    estimate_gamma,
    estimate_hessian_sup,
    fixed_point_splitting,
    hessian_sup_report,
    plan_stepsize,
    refine_critical,
)
from saddle_analyzer.domain import BoxDomain
from saddle_analyzer.errors import InvalidBound
from saddle_analyzer.fields import KnownCriticalPoint, ScalarField, build_field

SQRT8 = 2 * math.sqrt(2)


@pytest.mark.unit
class TestClassify:
    """Test de tweede-orde classificatie."""

    @pytest.mark.parametrize("w", [0.0, 0.25, 0.5, 1.0])
    def test_line_of_saddles(self, line_of_saddles: ScalarField, w: float) -> None:
        record = classify(line_of_saddles, [0.5, w, 1.0 - w])
        assert record.classification == PointClass.STRICT_SADDLE
        assert record.gradient_norm == 0.0
        assert abs(record.lambda_min + SQRT8) <= 1e-9, f"Expected −2√2, got {record.lambda_min}"
        assert abs(record.lambda_max - SQRT8) <= 1e-9
        assert abs(record.eigenvalues[1]) <= 1e-12, "Middelste eigenwaarde hoort nul te zijn"

    def test_double_well_points(self, double_well: ScalarField) -> None:
        expected = {
            (0.0, 1.0): PointClass.LOCAL_MIN,
            (0.0, -1.0): PointClass.LOCAL_MIN,
            (0.0, 0.0): PointClass.STRICT_SADDLE,
            (0.5, 0.5): PointClass.NOT_CRITICAL,
        }
        for point, cls in expected.items():
            actual = classify(double_well, list(point)).classification
            assert actual == cls, f"Expected {cls.value} in {point}, got {actual.value}"

    def test_degenerate(self) -> None:
        record = classify(build_field("x^4 + y^2", ["x", "y"]), [0.0, 0.0])
        assert record.classification == PointClass.DEGENERATE
        assert record.eps_eig == pytest.approx(2e-6)

    def test_non_finite_point(self, double_well: ScalarField) -> None:
        with pytest.raises(ValueError):
            classify(double_well, [math.nan, 0.0])

    def test_record_consistency_is_enforced(self) -> None:
        with pytest.raises(ValidationError):
            CriticalPointRecord(
                location=[0.0],
                gradient_norm=0.0,
                lambda_min=-1.0,
                lambda_max=-1.0,
                eigenvalues=[-1.0],
                eps_eig=1e-6,
                classification=PointClass.LOCAL_MIN,
            )


class TestRefineCritical:
    """Test de gedempte Newton verfijning."""

    def test_double_well_minimum(self, double_well: ScalarField) -> None:
        x = refine_critical(double_well, [0.1, 0.9])
        assert x is not None
        np.testing.assert_allclose(x, [0.0, 1.0], atol=1e-8)

    def test_singular_hessian_line(self, line_of_saddles: ScalarField) -> None:
        x = refine_critical(line_of_saddles, [0.55, 0.2, 0.7])
        assert x is not None
        line = KnownCriticalPoint(point=[0.5, 0.0, 1.0], direction=[0.0, 1.0, -1.0])
        assert line.distance(x) <= 1e-8, f"Expected een punt op de lijn, got {x}"
        assert classify(line_of_saddles, x).classification == PointClass.STRICT_SADDLE

    def test_already_critical(self, double_well: ScalarField) -> None:
        x = refine_critical(double_well, [0.0, -1.0])
        assert x is not None
        np.testing.assert_array_equal(x, [0.0, -1.0])

    def test_zero_budget_fails(self, double_well: ScalarField) -> None:
        assert refine_critical(double_well, [0.3, 0.6], budget=0) is None


class TestGammaAndStability:
    """Test γ en het gedrag van g rond minima."""

    KNOWN = [[0.0, 1.0], [0.0, -1.0], [0.0, 0.0]]

    def test_gamma_over_all_points(self, double_well: ScalarField) -> None:
        estimate = estimate_gamma(double_well, self.KNOWN)
        assert estimate.gamma == 1.0, f"Expected 1 (zadel), got {estimate.gamma}"
        assert len(estimate.points_used) == 3

    def test_gamma_over_minima(self, double_well: ScalarField) -> None:
        estimate = estimate_gamma(double_well, self.KNOWN, local_minima_only=True)
        assert estimate.gamma == 2.0
        assert estimate.points_used == [[0.0, 1.0], [0.0, -1.0]]

    def test_gamma_without_points(self, double_well: ScalarField) -> None:
        with pytest.raises(ValueError):
            estimate_gamma(double_well, [[0.0, 0.0]], local_minima_only=True)

    def test_minima_unstable_for_large_alpha(self, double_well: ScalarField) -> None:
        results = check_minimum_stability(double_well, 2.0, self.KNOWN)
        assert len(results) == 2, "Zadelpunt hoort overgeslagen te worden"
        for r in results:
            assert r.jacobian_spectral_radius == pytest.approx(3.0)
            assert r.lower_bound == pytest.approx(3.0)
            assert r.unstable

    def test_minima_stable_for_small_alpha(self, double_well: ScalarField) -> None:
        results = check_minimum_stability(double_well, 1 / 12, self.KNOWN)
        assert all(not r.unstable for r in results)
        assert results[0].jacobian_spectral_radius == pytest.approx(11 / 12)

    def test_splitting_at_double_well_saddle(self, double_well: ScalarField) -> None:
        report = fixed_point_splitting(double_well, [0.0, 0.0], 0.1)
        assert (report.stable, report.center, report.unstable) == (1, 0, 1)

    def test_splitting_on_line_of_saddles(self, line_of_saddles: ScalarField) -> None:
        report = fixed_point_splitting(line_of_saddles, [0.5, 0.0, 1.0], 0.1)
        assert (report.stable, report.center, report.unstable) == (1, 1, 1)


class TestSmoothness:
    """Test sup ‖∇²f‖, plan_stepsize en de steekproef checks."""

    def test_hessian_sup_double_well(self, double_well: ScalarField, double_well_box: BoxDomain) -> None:
        estimate = hessian_sup_report(double_well, double_well_box, grid=[41, 81])
        assert 11.0 - 1e-6 <= estimate.value <= 11.0, f"Expected 11, got {estimate.value}"
        assert abs(estimate.maximizer[1]) == 2.0
        assert estimate.lower_bound
        assert estimate.points_evaluated > 41 * 81

    def test_hessian_sup_default_grid(self, double_well: ScalarField, double_well_box: BoxDomain) -> None:
        assert estimate_hessian_sup(double_well, double_well_box) == pytest.approx(11.0)

    def test_hessian_sup_constant_hessian(self, line_of_saddles: ScalarField) -> None:
        value = estimate_hessian_sup(line_of_saddles, BoxDomain.cube(-1, 1, 3), grid=[5, 5, 5], refine_rounds=0)
        assert value == pytest.approx(SQRT8, abs=1e-12)

    def test_hessian_sup_dimension_mismatch(self, double_well: ScalarField) -> None:
        with pytest.raises(ValueError, match="dimensie"):
            estimate_hessian_sup(double_well, BoxDomain.cube(-1, 1, 3))

    def test_hessian_sup_grid_too_large(self, double_well: ScalarField, double_well_box: BoxDomain) -> None:
        with pytest.raises(ValueError, match="maximum"):
            estimate_hessian_sup(double_well, double_well_box, grid=[10_000, 10_000])

    def test_plan_stepsize(self) -> None:
        plan = plan_stepsize(11.0, margin=11 / 12, gamma=2.0)
        assert plan.alpha_sufficient == pytest.approx(1 / 12)
        assert plan.alpha_necessary_sup == 1.0
        assert plan.alpha_sufficient * plan.L_estimate < 1.0

    def test_plan_stepsize_without_gamma(self) -> None:
        plan = plan_stepsize(4.0, margin=0.5, L_is_lower_bound=False)
        assert plan.alpha_sufficient == 0.125
        assert plan.alpha_necessary_sup is None
        assert not plan.L_is_lower_bound

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"L": 0.0},
            {"L": -1.0},
            {"L": math.inf},
            {"L": 1.0, "margin": 1.0},
            {"L": 1.0, "margin": 0.0},
            {"L": 1.0, "gamma": -2.0},
        ],
    )
    def test_plan_stepsize_invalid(self, kwargs: dict) -> None:
        with pytest.raises(InvalidBound):
            plan_stepsize(**kwargs)

    def test_lipschitz_holds_on_reference_box(self, double_well: ScalarField, double_well_box: BoxDomain) -> None:
        report = check_lipschitz(double_well, double_well_box, 11.0, pair_samples=20_000, rng_seed=1)
        assert report.passed, f"Expected geen overtredingen, got {report.violation_count}"
        assert report.worst_ratio <= 11.0

    def test_lipschitz_fails_on_larger_box(self, double_well: ScalarField) -> None:
        report = check_lipschitz(double_well, BoxDomain.parse("(-1,1)x(-3,3)"), 11.0, pair_samples=20_000)
        assert not report.passed
        assert report.violation_count > 0
        assert report.worst_ratio > 11.0
        assert len(report.violations) <= 100

    def test_descent_for_small_alpha(self, double_well: ScalarField, double_well_box: BoxDomain) -> None:
        report = check_descent(double_well, 1 / 12, double_well_box, samples=2000)
        assert report.passed

    def test_descent_fails_for_large_alpha(self, double_well: ScalarField, double_well_box: BoxDomain) -> None:
        # y = 0.7 springt naar ≈ √2 waar f hoger ligt
        report = check_descent(double_well, 2.0, double_well_box, samples=2000)
        assert not report.passed
        assert report.violations[0].next_value > report.violations[0].value
