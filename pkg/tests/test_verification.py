import math

import numpy as np
import pytest

from models.verification import InvariantResult, VerificationReport
from services.verification import (
    INVARIANTS,
    SuiteContext,
    check_bo_singular_set,
    check_fundamental_mass,
    check_oddness,
    run_suite,
    sample_away_from,
)


def _result(name: str, measured: float, bound: float = 1e-6, error: str | None = None):
    return InvariantResult(name=name, module="kernels", measured=measured, bound=bound, error=error)


def test_invariant_result_pass_and_fail():
    """Test a result passes exactly when measured <= bound."""
    assert _result("at-bound", 1e-6).passed
    assert not _result("above", 2e-6).passed


def test_invariant_result_nan_never_passes():
    """Test a NaN measurement fails."""
    assert not _result("nan", math.nan).passed


def test_invariant_result_error_never_passes():
    """Test a check that raised fails."""
    assert not _result("raised", 0.0, error="ConvergenceError").passed


def test_report_table():
    """Test the table has a header, one row per invariant and a summary."""
    report = VerificationReport(
        results=(_result("ilw_methods", 1e-12), _result("smith_truncation", 1.0)),
        seed=7,
    )
    lines = report.table().splitlines()

    assert not report.passed
    assert [result.name for result in report.failures] == ["smith_truncation"]
    assert lines[0].startswith("invariant")
    assert "PASS" in lines[1]
    assert "FAIL" in lines[2]
    assert lines[-1].startswith("1/2 invariants passed")


def test_report_table_shows_errors():
    """Test an exception name is shown in the status column."""
    report = VerificationReport(results=(_result("bessel_k1", math.nan, error="ValueError"),), seed=1)

    assert "ERROR (ValueError)" in report.table()


def test_invariants_are_registered_once():
    """Test every invariant has a unique name."""
    names = [entry.name for entry in INVARIANTS]

    assert len(names) == len(set(names))
    assert {entry.module for entry in INVARIANTS} >= {
        "trigpolylog",
        "dispersion",
        "evolution",
        "revival",
        "kernels",
    }


def test_sample_away_from_nodes(rng):
    """Test sampled points keep their distance from the nodes."""
    spacing = 2 * math.pi / 5
    points = sample_away_from(rng, 300, spacing, 0.2)
    turns = points / spacing

    assert points.shape == (300,)
    assert np.all(np.abs(turns - np.rint(turns)) * spacing >= 0.2)


def test_sample_away_from_rejects_large_buffer(rng):
    """Test a buffer wider than half the spacing is rejected."""
    with pytest.raises(ValueError):
        sample_away_from(rng, 10, 0.5, 0.3)


@pytest.mark.parametrize("check", [check_oddness, check_bo_singular_set, check_fundamental_mass])
def test_fast_invariants_pass(check):
    """Test the cheap revival and dispersion invariants hold on their own."""
    measured, bound = check(SuiteContext(quick=True, rng=np.random.default_rng(1)))

    assert measured <= bound


@pytest.mark.slow
def test_quick_suite_passes():
    """Test the quick suite passes with the default seed."""
    report = run_suite(quick=True)

    assert report.passed, report.table()
    assert report.quick


@pytest.mark.slow
def test_suite_fails_with_zero_tolerance():
    """Test shrinking every bound to zero makes the suite fail."""
    report = run_suite(quick=True, tolerance_scale=0.0)

    assert not report.passed
