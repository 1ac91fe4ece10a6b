"""
Tests voor de zelfcontrole: fd_check over de builtins en de eigensolver oracles.
"""

import pytest

from saddle_analyzer.selfcheck import eigen_oracle_suite, golden_spectrum_error, run_selfcheck


def test_golden_spectrum() -> None:
    assert golden_spectrum_error() <= 1e-12


def test_eigen_oracle_suite_small() -> None:
    report = eigen_oracle_suite(matrices=200, max_dimension=6, seed=11)
    assert report.passed, f"Expected geslaagd, got {report}"
    assert report.unsorted == 0
    assert report.max_closed_form_error <= 1e-12


def test_selfcheck_single_field() -> None:
    report = run_selfcheck(points=50, matrices=50, fields=["double-well"])
    assert [r.field for r in report.fd_checks] == ["double-well"]
    assert report.passed


def test_selfcheck_strict_tolerance_fails() -> None:
    # Een Hessiaan tolerantie van nul is niet haalbaar met differenties van een kwartische term
    report = run_selfcheck(points=20, matrices=10, hessian_tol=0.0, fields=["double-well"])
    assert not report.passed
    assert report.eigen.passed


@pytest.mark.acceptance
@pytest.mark.slow
def test_full_selfcheck() -> None:
    report = run_selfcheck(points=1000, matrices=1000)
    print(f"📊 Selfcheck: {len(report.fd_checks)} velden, {report.eigen.matrices} matrices")
    for r in report.fd_checks:
        print(f"   {r.field}: gradient {r.max_gradient_error:.2e}, hessian {r.max_hessian_error:.2e}")
    assert report.passed
    assert {r.field for r in report.fd_checks} >= {"double-well", "line-of-saddles", "quadratic-bowl"}
