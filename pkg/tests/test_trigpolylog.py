import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models.polylog import CuspSign, Family, PolylogIndex, Singularity
from services.errors import InvalidOrderError, SingularityError
from services.trigpolylog import (
    canonical_node,
    clausen_cl,
    distributional_derivative,
    eval_trig_polylog,
    glaisher_sl,
    node_behaviour,
    node_set,
    pairwise_sum_profile,
    polylog_unit_circle,
    reduce_angle,
    series_partial_sum,
)

PI = math.pi
CATALAN = 0.915965594177219015
ZETA3 = 1.2020569031595942854


def test_series_partial_sum_at_zero_is_harmonic():
    """Test the order-one partial sum at x = 0 is the harmonic number."""
    value = series_partial_sum(PolylogIndex(j=1, k=1, r=1), 0.0, 10)

    assert value.real == pytest.approx(math.fsum(1.0 / n for n in range(1, 12)), abs=1e-14)
    assert value.imag == 0.0


def test_series_partial_sum_converges_to_sl2():
    """Test the order-two partial sum at x = 0 approaches pi^2/6."""
    value = series_partial_sum(PolylogIndex(j=1, k=1, r=2), 0.0, 100_000)

    assert value.real == pytest.approx(PI**2 / 6, abs=2e-5)


def test_series_partial_sum_rejects_negative_level():
    """Test a negative truncation level is rejected."""
    with pytest.raises(ValueError):
        series_partial_sum(PolylogIndex(j=1, k=1, r=1), 0.5, -1)


def test_glaisher_sl_values():
    """Test Sl_r at points with known values."""
    assert glaisher_sl(1, 1.0) == pytest.approx((PI - 1.0) / 2, abs=1e-14)
    assert glaisher_sl(2, PI) == pytest.approx(-(PI**2) / 12, abs=1e-14)
    assert glaisher_sl(1, 0.0) == 0.0


def test_glaisher_sl3_matches_series():
    """Test Sl_3 against its sine series."""
    oracle = series_partial_sum(PolylogIndex(j=1, k=1, r=3), 1.0, 100_000).imag
    cubic = PI**2 / 6 - PI / 4 + 1.0 / 12

    assert glaisher_sl(3, 1.0) == pytest.approx(oracle, abs=1e-10)
    assert glaisher_sl(3, 1.0) == pytest.approx(cubic, abs=1e-13)


def test_clausen_values():
    """Test Cl_r at points with known values."""
    assert clausen_cl(1, PI) == pytest.approx(-math.log(2.0), abs=1e-14)
    assert clausen_cl(2, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert clausen_cl(2, PI / 2) == pytest.approx(CATALAN, abs=1e-13)
    assert clausen_cl(3, 0.0) == pytest.approx(ZETA3, abs=1e-13)


def test_clausen_order_one_rejects_zero():
    """Test Cl_1 raises at its logarithmic singularity."""
    with pytest.raises(SingularityError) as info:
        clausen_cl(1, 2 * PI)

    assert info.value.nearest == pytest.approx(2 * PI)


def test_polylog_unit_circle_order_two():
    """Test Li_2(e^{ix}) splits into Sl_2 and Cl_2."""
    value = polylog_unit_circle(2, 1.3)

    assert value.real == pytest.approx(glaisher_sl(2, 1.3), abs=1e-13)
    assert value.imag == pytest.approx(clausen_cl(2, 1.3), abs=1e-13)


def test_unsupported_order():
    """Test orders above three raise InvalidOrderError."""
    with pytest.raises(InvalidOrderError):
        eval_trig_polylog(PolylogIndex(j=1, k=2, r=4), 0.5)
    with pytest.raises(InvalidOrderError):
        glaisher_sl(0, 0.5)


def test_index_rejects_j_above_k():
    """Test PolylogIndex validation of the residue class."""
    with pytest.raises(ValueError):
        PolylogIndex(j=3, k=2, r=1)


def test_square_wave():
    """Test S^2_1 is (pi/4) sign(x) and C^2_1 vanishes at pi/2."""
    idx = PolylogIndex(j=1, k=2, r=1)
    s_value, _ = eval_trig_polylog(idx, 1.0)
    _, c_value = eval_trig_polylog(idx, PI / 2)

    assert s_value == pytest.approx(PI / 4, abs=1e-13)
    assert eval_trig_polylog(idx, -2.0)[0] == pytest.approx(-PI / 4, abs=1e-13)
    assert c_value == pytest.approx(0.0, abs=1e-13)


def test_eval_matches_series_order_two():
    """Test the closed form of (2, 3, 2) against the series oracle."""
    idx = PolylogIndex(j=2, k=3, r=2)
    s_value, c_value = eval_trig_polylog(idx, 0.7)
    oracle = series_partial_sum(idx, 0.7, 100_000)

    assert s_value == pytest.approx(oracle.imag, abs=1e-5)
    assert c_value == pytest.approx(oracle.real, abs=1e-5)


def test_eval_matches_series_order_three(rng):
    """Test order-three closed forms against the series oracle."""
    x = rng.uniform(-PI, PI, 20)
    for k in (1, 2, 4):
        for j in range(1, k + 1):
            idx = PolylogIndex(j=j, k=k, r=3)
            s_value, c_value = eval_trig_polylog(idx, x)
            oracle = series_partial_sum(idx, x, 20_000)
            np.testing.assert_allclose(s_value, oracle.imag, atol=1e-9)
            np.testing.assert_allclose(c_value, oracle.real, atol=1e-9)


def test_eval_order_one_at_node():
    """Test order-one evaluation at a node raises or returns nan."""
    idx = PolylogIndex(j=1, k=3, r=1)
    with pytest.raises(SingularityError):
        eval_trig_polylog(idx, 2 * PI / 3)

    s_value, c_value = eval_trig_polylog(idx, np.array([2 * PI / 3, 0.5]), on_node="nan")
    assert math.isnan(s_value[0]) and math.isnan(c_value[0])
    assert not math.isnan(s_value[1])


def test_array_shape_preserved():
    """Test vector evaluation keeps the input shape."""
    idx = PolylogIndex(j=1, k=2, r=2)
    s_value, c_value = eval_trig_polylog(idx, np.full((3, 4), 0.25))

    assert s_value.shape == (3, 4)
    assert c_value.shape == (3, 4)


@settings(max_examples=50, deadline=None)
@given(
    x=st.floats(min_value=0.01, max_value=3.1),
    k=st.integers(min_value=1, max_value=6),
    r=st.integers(min_value=2, max_value=3),
    data=st.data(),
)
def test_parity(x, k, r, data):
    """Test S is odd and C is even."""
    j = data.draw(st.integers(min_value=1, max_value=k))
    idx = PolylogIndex(j=j, k=k, r=r)
    s_plus, c_plus = eval_trig_polylog(idx, x)
    s_minus, c_minus = eval_trig_polylog(idx, -x)

    assert s_minus == pytest.approx(-s_plus, abs=1e-12)
    assert c_minus == pytest.approx(c_plus, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(
    x=st.floats(min_value=-3.0, max_value=3.0),
    m=st.integers(min_value=-3, max_value=3),
    r=st.integers(min_value=2, max_value=3),
)
def test_periodicity(x, m, r):
    """Test 2 pi periodicity."""
    idx = PolylogIndex(j=1, k=3, r=r)
    s_value, c_value = eval_trig_polylog(idx, x)
    s_shift, c_shift = eval_trig_polylog(idx, x + 2 * PI * m)

    assert s_shift == pytest.approx(s_value, abs=1e-12)
    assert c_shift == pytest.approx(c_value, abs=1e-12)


def test_reduce_angle_range():
    """Test reduction lands in (-pi, pi]."""
    values = np.array([-PI, PI, 3 * PI, 7.0, -7.0, 1e6])
    reduced = reduce_angle(values)

    assert np.all(reduced > -PI) and np.all(reduced <= PI)
    assert reduce_angle(-PI) == pytest.approx(PI)


def test_node_sets():
    """Test node sets for small moduli."""
    assert node_set(1).nodes == (0.0,)
    np.testing.assert_allclose(node_set(2).nodes, [-PI, 0.0, PI])
    np.testing.assert_allclose(node_set(4).nodes, [-PI, -PI / 2, 0.0, PI / 2, PI])


def test_node_behaviour_square_wave():
    """Test S^2_1 jumps by pi/2 at zero without a cusp."""
    behaviour = node_behaviour(PolylogIndex(j=1, k=2, r=1), 0, Family.S)

    assert behaviour.jump_height == pytest.approx(PI / 2)
    assert behaviour.cusp_sign is CuspSign.NONE
    assert behaviour.singularity is Singularity.JUMP_CUSP


def test_node_behaviour_clausen_cusp():
    """Test Cl_1 has a cusp pointing up at zero and no jump."""
    behaviour = node_behaviour(PolylogIndex(j=1, k=1, r=1), 0, Family.C)

    assert behaviour.jump_height == pytest.approx(0.0, abs=1e-15)
    assert behaviour.cusp_sign is CuspSign.UP


def test_node_behaviour_order_two():
    """Test order-two nodes are points of infinite gradient or corners."""
    infinite = node_behaviour(PolylogIndex(j=1, k=2, r=2), 1, Family.S)
    corner = node_behaviour(PolylogIndex(j=1, k=2, r=2), 1, Family.C)

    assert infinite.singularity is Singularity.INFINITE_GRADIENT
    assert corner.singularity is Singularity.CORNER


def test_node_behaviour_rejects_order_three():
    """Test node classification is limited to orders one and two."""
    with pytest.raises(InvalidOrderError):
        node_behaviour(PolylogIndex(j=1, k=2, r=3), 0, Family.S)


def test_measured_jump_matches_node_behaviour():
    """Test the closed-form jump across each node of S^3_2 and C^3_2."""
    idx = PolylogIndex(j=2, k=3, r=1)
    h = 1e-7
    for node in range(3):
        location = 2 * PI * node / 3
        right_s, right_c = eval_trig_polylog(idx, location + h)
        left_s, left_c = eval_trig_polylog(idx, location - h)
        assert right_s - left_s == pytest.approx(
            node_behaviour(idx, node, Family.S).jump_height, abs=1e-5
        )
        assert right_c - left_c == pytest.approx(
            node_behaviour(idx, node, Family.C).jump_height, abs=1e-5
        )


def test_canonical_node():
    """Test node locations map into [-pi, pi)."""
    assert canonical_node(1, 2) == pytest.approx(-PI)
    assert canonical_node(0, 3) == 0.0
    assert canonical_node(-1, 3) == pytest.approx(-2 * PI / 3)


def test_derivative_of_s22():
    """Test dS^2_2 = pi/2 deltas at -pi and 0 with constant -1/2."""
    decomposition = distributional_derivative(PolylogIndex(j=2, k=2, r=1), Family.S)

    locations = sorted(term.location for term in decomposition.delta_terms)
    np.testing.assert_allclose(locations, [-PI, 0.0])
    for term in decomposition.delta_terms:
        assert term.weight == pytest.approx(PI / 2)
    assert decomposition.cot_terms == ()
    assert decomposition.constant == -0.5


def test_derivative_of_square_wave_has_only_jumps():
    """Test dS^2_1 has no cotangent part."""
    decomposition = distributional_derivative(PolylogIndex(j=1, k=2, r=1), Family.S)
    weights = {round(term.location, 12): term.weight for term in decomposition.delta_terms}

    assert decomposition.cot_terms == ()
    assert weights[round(-PI, 12)] == pytest.approx(-PI / 2)
    assert weights[0.0] == pytest.approx(PI / 2)


def test_derivative_smooth_part_finite_difference():
    """Test the smooth part of dC^3_1 against a central difference at 0.9."""
    idx = PolylogIndex(j=1, k=3, r=1)
    decomposition = distributional_derivative(idx, Family.C)
    h = 1e-5
    difference = (
        eval_trig_polylog(idx, 0.9 + h)[1] - eval_trig_polylog(idx, 0.9 - h)[1]
    ) / (2 * h)

    assert decomposition.smooth_part(0.9) == pytest.approx(difference, abs=1e-5)


def test_derivative_requires_order_one():
    """Test derivatives of higher orders are rejected."""
    with pytest.raises(InvalidOrderError):
        distributional_derivative(PolylogIndex(j=1, k=2, r=2), Family.S)


def test_pairwise_sum_square_wave():
    """Test S^2_1 + S^2_1 = pi/2 at 0.5."""
    assert pairwise_sum_profile(1, 2, 0.5) == pytest.approx(PI / 2, abs=1e-13)


def test_pairwise_sum_constant_on_subinterval():
    """Test the pair sum for k = 4 is constant on (0, pi/4)."""
    assert pairwise_sum_profile(1, 4, 0.10) == pytest.approx(
        pairwise_sum_profile(1, 4, 0.15), abs=1e-10
    )


def test_pairwise_sum_rejects_j_equal_k():
    """Test the pair sum needs 1 <= j <= k-1."""
    with pytest.raises(ValueError):
        pairwise_sum_profile(3, 3, 0.5)
