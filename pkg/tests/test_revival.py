import math

import numpy as np
import pytest
from pydantic import ValidationError

from models.dispersion import DispersionSpec
from models.evolution import FourierInitialData, Preset, RationalTime
from models.polylog import Family
from models.revival import PolylogTerm, RevivalProfile
from services.errors import SingularityError
from services.evolution import evolve_series
from services.revival import (
    bo_fundamental_decomposition,
    bo_rational_profile,
    evaluate_profile,
    fundamental_density,
    ilw_fundamental_approx,
    ilw_profile_error_bound,
    ilw_rational_profile,
    integrated_delta_profile,
    kdv_rational_profile,
    profile_singular_set,
    profile_terms,
    revival_profile,
    smith_fundamental_approx,
    smith_rational_profile,
)

PI = math.pi
STEP = FourierInitialData.riemann_step()
MODES = 20_000


def test_bo_profile_at_time_pi():
    """Test the BO step at t = pi is the translated step."""
    assert bo_rational_profile(RationalTime(p=1, q=1), 0.5) == pytest.approx(0.0, abs=1e-14)


def test_bo_profile_at_time_zero():
    """Test the BO profile at t = 0 is the initial step."""
    assert bo_rational_profile(RationalTime(p=0, q=1), 1.0) == pytest.approx(1.0, abs=1e-14)
    assert bo_rational_profile(RationalTime(p=0, q=1), -1.0) == pytest.approx(0.0, abs=1e-14)


def test_bo_profile_terms():
    """Test the BO step profile at t = pi/2 has q terms with the expected shifts."""
    profile = profile_terms(DispersionSpec.bo(), RationalTime(p=1, q=2))

    assert profile.modulus == 4
    assert [term.index for term in profile.terms] == [1, 3]
    assert [term.shift for term in profile.terms] == pytest.approx([PI / 2, 3 * PI / 2])
    assert profile.constant == 0.5
    assert profile.error_bound == 0.0


def test_bo_profile_structure_is_validated():
    """Test a BO step profile with a wrong weight is rejected."""
    wrong = PolylogTerm(family=Family.S, order=1, index=1, shift=0.0, weight=1.0)
    with pytest.raises(ValidationError):
        RevivalProfile(
            spec=DispersionSpec.bo(),
            time=RationalTime(p=0, q=1),
            modulus=2,
            terms=(wrong,),
            constant=0.5,
        )


def test_bo_profile_matches_series():
    """Test the BO profile at t = pi/2 against the Fourier series."""
    time = RationalTime(p=1, q=2)
    x = np.array([0.3, -0.8, 2.2])

    np.testing.assert_allclose(
        bo_rational_profile(time, x),
        evolve_series(DispersionSpec.bo(), STEP, time, x, MODES),
        atol=1e-3,
    )


def test_bo_singular_set():
    """Test the BO profile at t = pi/5 is singular at the points pi m/5."""
    profile = profile_terms(DispersionSpec.bo(), RationalTime(p=1, q=5))

    np.testing.assert_allclose(profile_singular_set(profile), PI * np.arange(-5, 5) / 5, atol=1e-11)


def test_profile_rejects_node():
    """Test evaluation on a jump raises with the nearest singular point."""
    with pytest.raises(SingularityError) as info:
        bo_rational_profile(RationalTime(p=1, q=2), PI / 2)

    assert info.value.nearest == pytest.approx(PI / 2)


def test_profile_nan_on_node():
    """Test points on a jump become nan when requested."""
    values = bo_rational_profile(RationalTime(p=1, q=2), np.array([PI / 2, 0.3]), on_node="nan")

    assert math.isnan(values[0])
    assert not math.isnan(values[1])


def test_kdv_profile_at_time_zero():
    """Test the KdV profile at t = 0 is the initial step."""
    assert kdv_rational_profile(RationalTime(p=0, q=1), -1.0) == pytest.approx(0.0, abs=1e-14)


def test_kdv_profile_piecewise_constant():
    """Test the KdV profile at t = pi/3 is constant on (0, pi/3)."""
    time = RationalTime(p=1, q=3)

    assert kdv_rational_profile(time, 0.2) == pytest.approx(kdv_rational_profile(time, 0.3), abs=1e-10)
    x = np.linspace(PI / 3 + 0.01, 2 * PI / 3 - 0.01, 40)
    values = kdv_rational_profile(time, x)
    assert values.max() - values.min() <= 1e-9


def test_kdv_profile_matches_series():
    """Test the KdV profile at t = pi/6 against the Fourier series."""
    time = RationalTime(p=1, q=6)
    series = evolve_series(DispersionSpec.kdv(), STEP, time, 0.4, MODES)

    assert kdv_rational_profile(time, 0.4) == pytest.approx(series, abs=1e-3)


def test_ilw_profile_deep_limit():
    """Test the ILW profile tends to the BO profile as delta grows."""
    time = RationalTime(p=1, q=5)
    value = ilw_rational_profile(time, 1e9, 0.4)

    assert value == pytest.approx(bo_rational_profile(time, 0.4), abs=1e-6)


def test_ilw_profile_at_time_zero():
    """Test the ILW profile at t = 0 is the step with no error."""
    value = ilw_rational_profile(RationalTime(p=0, q=1), 2.0, 1.0)
    bound = ilw_profile_error_bound(RationalTime(p=0, q=1), 2.0)

    assert value == pytest.approx(1.0, abs=1e-14)
    assert bound == 0.0


def test_ilw_profile_matches_series():
    """Test the ILW profile at delta = 100 against the Fourier series."""
    time = RationalTime(p=1, q=7)
    value = ilw_rational_profile(time, 100.0, 0.7)
    bound = ilw_profile_error_bound(time, 100.0)
    series = evolve_series(DispersionSpec.ilw(100.0), STEP, time, 0.7, MODES)

    assert bound <= 1e-10
    assert value == pytest.approx(series, abs=1e-3 + bound)


def test_ilw_error_bound_grows_as_delta_shrinks():
    """Test the certified ILW bound is larger in shallower water."""
    time = RationalTime(p=1, q=3)

    assert ilw_profile_error_bound(time, 1.0) > ilw_profile_error_bound(time, 5.0) > 0.0
    assert math.isinf(ilw_profile_error_bound(time, 1e-6))


def test_smith_error_bound_value():
    """Test the Smith bound at p=1, q=5, delta=10."""
    _, bound = smith_rational_profile(RationalTime(p=1, q=5), 10.0, 0.7)

    assert bound == pytest.approx(1.0451e-4, abs=1e-8)


def test_smith_profile_at_time_zero():
    """Test the Smith profile at t = 0 is the step with zero bound."""
    value, bound = smith_rational_profile(RationalTime(p=0, q=1), 10.0, 1.0)

    assert value == pytest.approx(1.0, abs=1e-14)
    assert bound == 0.0


def test_smith_profile_matches_series():
    """Test the Smith profile at delta = 10, t = pi/5 within its certificate."""
    time = RationalTime(p=1, q=5)
    value, bound = smith_rational_profile(time, 10.0, 0.7)
    series = evolve_series(DispersionSpec.smith(10.0), STEP, time, 0.7, MODES)

    assert abs(value - series) <= bound + 2e-3


def test_smith_profile_families():
    """Test the Smith profile has order-one and order-three terms of both families."""
    profile = profile_terms(DispersionSpec.smith(10.0), RationalTime(p=1, q=5))
    kinds = {(term.family, term.order) for term in profile.terms}

    assert kinds == {(Family.S, 1), (Family.C, 1), (Family.S, 3), (Family.C, 3)}


def test_integrated_delta_profile_at_time_zero():
    """Test the integrated delta at t = 0 is the sawtooth (pi - x)/(2 pi)."""
    value = integrated_delta_profile(RationalTime(p=0, q=1), 1.0)

    assert value == pytest.approx((PI - 1.0) / (2 * PI), abs=1e-14)


def test_integrated_delta_profile_matches_series():
    """Test the evolved integrated delta against its Fourier series."""
    time = RationalTime(p=1, q=3)
    data = FourierInitialData.integrated_delta()
    series = evolve_series(DispersionSpec.bo(), data, time, 0.5, 2 * MODES)

    assert integrated_delta_profile(time, 0.5) == pytest.approx(series, abs=1e-3)


def test_integrated_delta_is_bo_only():
    """Test integrated delta profiles are only built for BO."""
    with pytest.raises(ValueError):
        profile_terms(DispersionSpec.kdv(), RationalTime(p=1, q=2), data=Preset.INTEGRATED_DELTA)


def test_bo_fundamental_at_time_zero():
    """Test the fundamental solution at t = 0 is a single unit delta."""
    decomposition = bo_fundamental_decomposition(RationalTime(p=0, q=1))

    assert len(decomposition.delta_terms) == 1
    assert decomposition.delta_terms[0].location == pytest.approx(0.0, abs=1e-12)
    assert decomposition.delta_terms[0].weight == pytest.approx(1.0)
    assert decomposition.cot_terms == ()
    assert decomposition.constant + decomposition.derivative_constant == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("p,q", [(0, 1), (1, 2), (1, 3), (2, 5), (3, 8)])
def test_bo_fundamental_mass(p, q):
    """Test the BO fundamental solution has unit mass."""
    decomposition = bo_fundamental_decomposition(RationalTime(p=p, q=q))

    assert decomposition.total_mass() == pytest.approx(1.0, abs=1e-12)


def test_bo_fundamental_smooth_part():
    """Test the smooth part at t = pi/2 against a finite difference of the integrated delta."""
    time = RationalTime(p=1, q=2)
    decomposition = bo_fundamental_decomposition(time)
    h = 1e-5
    difference = (
        integrated_delta_profile(time, 0.4 + h) - integrated_delta_profile(time, 0.4 - h)
    ) / (2 * h)

    assert decomposition.cot_terms
    assert decomposition.term_families() == {"constant", "delta", "cot"}
    assert decomposition.smooth_part(0.4) == pytest.approx(difference, abs=1e-4)


def test_fundamental_density_rejects_delta():
    """Test the density is undefined on a delta."""
    decomposition = bo_fundamental_decomposition(RationalTime(p=1, q=2))
    location = decomposition.delta_terms[0].location

    with pytest.raises(SingularityError):
        fundamental_density(decomposition, location)
    assert math.isnan(fundamental_density(decomposition, location, on_node="nan"))


def _assert_canonical_deltas(decomposition):
    locations = [term.location for term in decomposition.delta_terms]

    assert locations == sorted(locations)
    assert len(set(locations)) == len(locations)
    assert all(-PI <= location < PI - 1e-12 for location in locations)


@pytest.mark.parametrize("p,q", [(1, 2), (3, 8), (1, 4), (5, 6)])
def test_bo_fundamental_deltas_wrap_onto_minus_pi(p, q):
    """Test deltas landing on +-pi are stored once, at -pi."""
    decomposition = bo_fundamental_decomposition(RationalTime(p=p, q=q))

    _assert_canonical_deltas(decomposition)
    assert decomposition.total_mass() == pytest.approx(1.0, abs=1e-12)


def test_smith_fundamental_deltas_wrap_onto_minus_pi():
    """Test the Smith decomposition at t = pi/2 builds with canonical delta locations."""
    decomposition = smith_fundamental_approx(RationalTime(p=1, q=2), 10.0)

    _assert_canonical_deltas(decomposition)
    assert decomposition.total_mass() == pytest.approx(1.0, abs=1e-12)


def test_ilw_fundamental_deltas_wrap_onto_minus_pi():
    """Test the advected decomposition keeps its deltas in [-pi, pi)."""
    decomposition = ilw_fundamental_approx(RationalTime(p=1, q=2), 4.0)

    _assert_canonical_deltas(decomposition)
    assert decomposition.total_mass() == pytest.approx(1.0, abs=1e-12)


def test_singular_set_uses_minus_pi():
    """Test a jump at +-pi is reported once, as -pi."""
    singular = profile_singular_set(profile_terms(DispersionSpec.bo(), RationalTime(p=1, q=2)))

    assert singular[0] == pytest.approx(-PI, abs=1e-12)
    assert all(point < PI - 1e-12 for point in singular)
    np.testing.assert_allclose(singular, PI * np.arange(-2, 2) / 2, atol=1e-11)


def test_ilw_fundamental_is_advected_bo():
    """Test the ILW fundamental solution is the BO one moved by -t/delta."""
    time = RationalTime(p=1, q=3)
    bo = bo_fundamental_decomposition(time)
    ilw = ilw_fundamental_approx(time, 4.0)

    assert ilw.total_mass() == pytest.approx(1.0, abs=1e-12)
    assert fundamental_density(ilw, 0.5 - time.t / 4.0) == pytest.approx(
        fundamental_density(bo, 0.5), abs=1e-9
    )


def test_smith_fundamental_mass_and_residual():
    """Test the Smith fundamental solution has unit mass and small residual weights."""
    decomposition = smith_fundamental_approx(RationalTime(p=1, q=5), 10.0)

    assert decomposition.total_mass() == pytest.approx(1.0, abs=1e-12)
    assert "polylog" in decomposition.term_families()
    assert max(abs(term.weight) for term in decomposition.residual_terms) <= 2.5e-4
    assert decomposition.residual_bound > 0.0


def test_smith_fundamental_at_time_zero():
    """Test the Smith residual weights vanish at t = 0."""
    decomposition = smith_fundamental_approx(RationalTime(p=0, q=1), 10.0)

    assert all(term.weight == 0.0 for term in decomposition.residual_terms)


def test_smith_fundamental_deep_limit():
    """Test the Smith residual weights vanish as delta grows."""
    decomposition = smith_fundamental_approx(RationalTime(p=1, q=3), 1e8)

    assert max(abs(term.weight) for term in decomposition.residual_terms) <= 1e-16


def test_evaluate_profile_shape():
    """Test profile evaluation keeps the grid shape."""
    profile = profile_terms(DispersionSpec.kdv(), RationalTime(p=1, q=4))
    values = evaluate_profile(profile, np.linspace(0.1, 0.6, 6).reshape(2, 3))

    assert values.shape == (2, 3)


def test_revival_profile_dispatches():
    """Test the dispatcher agrees with the per-equation profiles."""
    time = RationalTime(p=2, q=7)
    x = np.array([0.2, 1.3, -2.5])

    np.testing.assert_array_equal(revival_profile(DispersionSpec.bo(), time, x), bo_rational_profile(time, x))
    np.testing.assert_array_equal(revival_profile(DispersionSpec.kdv(), time, x), kdv_rational_profile(time, x))
    value, _ = smith_rational_profile(time, 3.0, x)
    np.testing.assert_array_equal(revival_profile(DispersionSpec.smith(3.0), time, x), value)
