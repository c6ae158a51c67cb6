import math

import numpy as np
import pytest
from pydantic import ValidationError

from models.dispersion import PHASE_ENVELOPE_CONSTANT, DispersionSpec
from models.evolution import FourierInitialData, Preset, RationalTime
from services.evolution import (
    evolve_coefficients,
    evolve_field,
    evolve_series,
    ilw_residual,
    ilw_residual_mode_envelope,
    kdv_limit_error_bound,
    kdv_rescaled_ilw,
    phase,
    trapezoid_mean,
)

PI = math.pi
STEP = FourierInitialData.riemann_step()


def test_rational_time_is_reduced():
    """Test p/q is stored in lowest terms."""
    time = RationalTime(p=4, q=6)

    assert (time.p, time.q) == (2, 3)
    assert time.t == pytest.approx(2 * PI / 3)
    assert str(time) == "2pi/3"


def test_rational_time_rejects_zero_denominator():
    """Test q must be positive."""
    with pytest.raises(ValidationError):
        RationalTime(p=1, q=0)


def test_custom_data_requires_coefficients():
    """Test custom initial data validation."""
    with pytest.raises(ValidationError):
        FourierInitialData(preset=Preset.CUSTOM)
    with pytest.raises(ValidationError):
        FourierInitialData(preset=Preset.RIEMANN_STEP, coefficients=[0.5])


def test_step_coefficients():
    """Test the step has b_k = -i/(pi k) on odd modes only."""
    k = np.arange(1, 7)
    coefficients = STEP.coefficients_for(k)

    np.testing.assert_allclose(coefficients[::2], -1j / (PI * k[::2]))
    np.testing.assert_array_equal(coefficients[1::2], 0)
    assert STEP.mean() == 0.5


def test_sine_coefficients_round_to_sine_series():
    """Test custom data built from sine coefficients evaluates to the sine sum."""
    data = FourierInitialData.from_sine_coefficients([1.0, 0.0, 0.5], mean=0.25)
    x = np.linspace(-3.0, 3.0, 7)
    expected = 0.25 + np.sin(x) + 0.5 * np.sin(3 * x)

    np.testing.assert_allclose(
        evolve_series(DispersionSpec.bo(), data, 0.0, x, 3), expected, atol=1e-14
    )


def test_custom_data_too_short():
    """Test requesting modes beyond the stored coefficients fails."""
    data = FourierInitialData.from_sine_coefficients([1.0])

    with pytest.raises(ValueError):
        evolve_series(DispersionSpec.bo(), data, 0.0, 0.3, 5)


@pytest.mark.slow
def test_step_at_time_zero():
    """Test the truncated step series at t = 0 on both sides of the jump."""
    assert evolve_series(DispersionSpec.bo(), STEP, 0.0, 1.0, 100_000) == pytest.approx(1.0, abs=2e-4)
    assert evolve_series(DispersionSpec.kdv(), STEP, 0.0, -1.0, 100_000) == pytest.approx(
        0.0, abs=2e-4
    )


def test_bo_step_at_time_pi():
    """Test the BO step at t = pi is the step translated by pi."""
    value = evolve_series(DispersionSpec.bo(), STEP, RationalTime(p=1, q=1), 0.5, 20_000)

    assert value == pytest.approx(0.0, abs=1e-3)


def test_rational_and_float_time_agree():
    """Test the integer-reduced phase matches the float phase for small modes."""
    x = np.linspace(-3.0, 3.0, 11)
    for spec in (DispersionSpec.bo(), DispersionSpec.ilw(2.0), DispersionSpec.smith(5.0)):
        rational = evolve_series(spec, STEP, RationalTime(p=1, q=3), x, 20)
        floating = evolve_series(spec, STEP, PI / 3, x, 20)
        np.testing.assert_allclose(rational, floating, atol=1e-11)


def test_phase_reduced_for_rational_times():
    """Test rational-time phases of BO lie in [0, 2 pi)."""
    k = np.arange(1, 100)
    values = phase(DispersionSpec.bo(), k, RationalTime(p=3, q=7))

    assert np.all(values >= 0) and np.all(values < 2 * PI)


def test_mode_magnitude_conserved():
    """Test evolution only rotates the coefficients."""
    for spec in (DispersionSpec.kdv(), DispersionSpec.ilw(0.5), DispersionSpec.smith(2.0)):
        k, evolved = evolve_coefficients(spec, STEP, 1.7, 500)
        np.testing.assert_allclose(np.abs(evolved), np.abs(STEP.coefficients_for(k)), rtol=1e-14)


def test_mean_conserved():
    """Test the trapezoid mean of the evolved step stays 1/2."""
    for spec in (DispersionSpec.bo(), DispersionSpec.smith(1.0)):
        mean = trapezoid_mean(spec, STEP, RationalTime(p=2, q=5), 1000)
        assert mean == pytest.approx(0.5, abs=1e-6)


def test_evolution_is_deterministic():
    """Test repeated evaluation is bit-identical."""
    x = np.linspace(-PI, PI, 33)
    first = evolve_series(DispersionSpec.ilw(1.0), STEP, RationalTime(p=1, q=4), x, 2000)
    second = evolve_series(DispersionSpec.ilw(1.0), STEP, RationalTime(p=1, q=4), x, 2000)

    np.testing.assert_array_equal(first, second)


def test_evolve_field():
    """Test the series field wrapper."""
    grid = np.linspace(-PI, PI, 5)
    field = evolve_field(DispersionSpec.kdv(), STEP, RationalTime(p=1, q=2), grid, 100)

    assert field.method == "series"
    assert field.n_modes == 100
    assert field.values.shape == grid.shape
    assert field.time == pytest.approx(PI / 2)
    assert not field.excluded.any()


def test_ilw_residual_deep_water():
    """Test the ILW residual vanishes for delta = 100."""
    assert abs(ilw_residual(100.0, RationalTime(p=1, q=7), 0.9, 64)) <= 1e-10


def test_ilw_residual_at_time_zero():
    """Test the residual is zero before any evolution."""
    assert ilw_residual(1.0, 0.0, 0.9, 64) == 0.0


def test_ilw_residual_below_mode_envelope():
    """Test the residual at delta = 1 is bounded by its per-mode envelope."""
    time = RationalTime(p=1, q=7)
    _, envelope = ilw_residual_mode_envelope(1.0, time, 64)
    residual = ilw_residual(1.0, time, 0.9, 64)

    assert 0.0 < abs(residual) <= 2 * math.fsum(envelope)


def test_mode_envelope_dominates_each_mode():
    """Test the envelope is 1.1 times the linearised phase gap and dominates each residual mode."""
    time = RationalTime(p=1, q=3)
    k, envelope = ilw_residual_mode_envelope(0.5, time, 32)
    kf = k.astype(float)
    magnitude = np.abs(STEP.coefficients_for(k))
    theta = kf * kf * (1.0 / np.tanh(0.5 * kf) - 1.0) * time.t
    mode = magnitude * np.abs(1.0 - np.exp(1j * theta))

    np.testing.assert_allclose(envelope, PHASE_ENVELOPE_CONSTANT * magnitude * theta, rtol=1e-9)
    assert np.all(mode <= envelope)


def test_kdv_rescaled_at_time_zero():
    """Test the rescaled ILW evolution starts from the step."""
    x = np.linspace(-3.0, 3.0, 9)

    np.testing.assert_array_equal(
        kdv_rescaled_ilw(0.01, 0.0, x, 32),
        evolve_series(DispersionSpec.kdv(), STEP, 0.0, x, 32),
    )


def test_kdv_rescaled_limit():
    """Test the rescaled ILW solution is close to KdV for small delta."""
    time = RationalTime(p=1, q=7)
    rescaled = kdv_rescaled_ilw(0.01, time, 0.9, 32)
    kdv = evolve_series(DispersionSpec.kdv(), STEP, time, 0.9, 32)

    assert abs(rescaled - kdv) <= kdv_limit_error_bound(0.01, time, 32)
    assert abs(kdv_rescaled_ilw(1e-4, time, 0.9, 32) - kdv) <= 0.05
