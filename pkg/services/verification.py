"""
Invariant suite behind the ``verify`` command.

Every check measures one quantity (a sup error, a count of violations) and
compares it with a bound. Checks are registered with ``@invariant`` and run
in registration order with a seeded generator, so two runs print the same
table. ``quick`` shrinks sample sizes and truncation levels for the test
suite; the full run uses the acceptance sizes.
"""

import math
import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from config import settings
from models.dispersion import ENVELOPE_THRESHOLD, DispersionSpec
from models.evolution import FourierInitialData, RationalTime
from models.polylog import CuspSign, Family, PolylogIndex
from models.verification import InvariantResult, VerificationReport
from services import dispersion, evolution, kernels, revival
from services.trigpolylog import (
    PI,
    TWO_PI,
    eval_trig_polylog,
    node_behaviour,
    pairwise_sum_profile,
    series_partial_sum,
)
from utils.logging import get_logger

logger = get_logger(__name__)

Measurement = tuple[float, float]

BO_TIMES = ((1, 2), (1, 5), (1, 6), (1, 8), (1, 9))
KDV_TIMES = ((1, 6), (1, 9))
ORACLE_BUFFER = 0.3
SERIES_ORDER_N = {1: 200_000, 2: 10_000, 3: 10_000}
ORACLE_BOUNDS = {1: 5e-4, 2: 1e-5, 3: 1e-9}
# Far below the node tolerance 1e-9 * pi/q of the largest q sampled
SINGULAR_SET_TOLERANCE = 1e-11


@dataclass
class SuiteContext:
    """Shared state of one run."""

    quick: bool
    rng: np.random.Generator

    @property
    def nmodes(self) -> int:
        return 20_000 if self.quick else 100_000

    @property
    def points(self) -> int:
        return 20 if self.quick else 100


@dataclass(frozen=True)
class Invariant:
    name: str
    module: str
    check: Callable[[SuiteContext], Measurement]


INVARIANTS: list[Invariant] = []


def invariant(name: str, module: str):
    """Register a check returning (measured, bound)."""

    def register(check: Callable[[SuiteContext], Measurement]):
        INVARIANTS.append(Invariant(name=name, module=module, check=check))
        return check

    return register


def sample_away_from(
    rng: np.random.Generator, count: int, spacing: float, buffer: float, offset: float = 0.0
) -> np.ndarray:
    """
    Uniform points in [-pi, pi) at distance >= buffer from offset + spacing * Z.
    """
    if buffer >= spacing / 2.0:
        raise ValueError(f"buffer {buffer} leaves no room between nodes {spacing} apart")
    accepted: list[float] = []
    while len(accepted) < count:
        candidates = rng.uniform(-PI, PI, size=2 * count)
        turns = (candidates - offset) / spacing
        distance = np.abs(turns - np.rint(turns)) * spacing
        accepted.extend(candidates[distance >= buffer].tolist())
    return np.array(accepted[:count])


def _oracle_buffer(q: int) -> float:
    """Node buffer for the revival oracles; nodes pi/q apart leave less than 0.3."""
    return min(ORACLE_BUFFER, 0.25 * PI / q)


def _indices(max_k: int, orders=(1, 2, 3)):
    for r in orders:
        for k in range(1, max_k + 1):
            for j in range(1, k + 1):
                yield PolylogIndex(j=j, k=k, r=r)


def _polylog_oracle(ctx: SuiteContext, r: int) -> Measurement:
    max_k = 3 if ctx.quick else 6
    count = 20 if ctx.quick else settings.VERIFY_SAMPLE_POINTS
    worst = 0.0
    for idx in _indices(max_k, orders=(r,)):
        x = sample_away_from(ctx.rng, count, idx.node_spacing, 0.2)
        s_value, c_value = eval_trig_polylog(idx, x)
        series = series_partial_sum(idx, x, SERIES_ORDER_N[r])
        worst = max(
            worst,
            float(np.max(np.abs(s_value - series.imag))),
            float(np.max(np.abs(c_value - series.real))),
        )
    return worst, ORACLE_BOUNDS[r]


@invariant("polylog_oracle_r1", "trigpolylog")
def check_polylog_oracle_r1(ctx: SuiteContext) -> Measurement:
    return _polylog_oracle(ctx, 1)


@invariant("polylog_oracle_r2", "trigpolylog")
def check_polylog_oracle_r2(ctx: SuiteContext) -> Measurement:
    return _polylog_oracle(ctx, 2)


@invariant("polylog_oracle_r3", "trigpolylog")
def check_polylog_oracle_r3(ctx: SuiteContext) -> Measurement:
    return _polylog_oracle(ctx, 3)


@invariant("polylog_parity", "trigpolylog")
def check_parity(ctx: SuiteContext) -> Measurement:
    worst = 0.0
    for idx in _indices(4):
        x = sample_away_from(ctx.rng, 20, idx.node_spacing, 0.05)
        s_plus, c_plus = eval_trig_polylog(idx, x)
        s_minus, c_minus = eval_trig_polylog(idx, -x)
        worst = max(
            worst,
            float(np.max(np.abs(s_plus + s_minus))),
            float(np.max(np.abs(c_plus - c_minus))),
        )
    return worst, 1e-12


@invariant("polylog_periodicity", "trigpolylog")
def check_periodicity(ctx: SuiteContext) -> Measurement:
    worst = 0.0
    for idx in _indices(4):
        x = sample_away_from(ctx.rng, 20, idx.node_spacing, 0.05)
        s_value, c_value = eval_trig_polylog(idx, x)
        s_shift, c_shift = eval_trig_polylog(idx, x + TWO_PI)
        worst = max(
            worst,
            float(np.max(np.abs(s_value - s_shift))),
            float(np.max(np.abs(c_value - c_shift))),
        )
    return worst, 1e-12


@invariant("scale_identity", "trigpolylog")
def check_scale_identity(ctx: SuiteContext) -> Measurement:
    """M^r S^{Mk}_{Mj,r}(x/M) = S^k_{j,r}(x)."""
    worst = 0.0
    for idx in _indices(3, orders=(1, 2)):
        x = sample_away_from(ctx.rng, 20, idx.node_spacing, 0.05)
        s_value, c_value = eval_trig_polylog(idx, x)
        for m in (2, 3):
            scaled = PolylogIndex(j=m * idx.j, k=m * idx.k, r=idx.r)
            s_scaled, c_scaled = eval_trig_polylog(scaled, x / m)
            worst = max(
                worst,
                float(np.max(np.abs(m**idx.r * s_scaled - s_value))),
                float(np.max(np.abs(m**idx.r * c_scaled - c_value))),
            )
    return worst, 1e-10


@invariant("sum_identity", "trigpolylog")
def check_sum_identity(ctx: SuiteContext) -> Measurement:
    """sum_{n<M} S^{Mk}_{j+nk,r}(x) = S^k_{j,r}(x)."""
    worst = 0.0
    for idx in _indices(3, orders=(1, 2)):
        for m in (2, 3):
            x = sample_away_from(ctx.rng, 20, TWO_PI / (m * idx.k), 0.05)
            s_value, c_value = eval_trig_polylog(idx, x)
            s_total = np.zeros_like(x)
            c_total = np.zeros_like(x)
            for n in range(m):
                part = PolylogIndex(j=idx.j + n * idx.k, k=m * idx.k, r=idx.r)
                s_part, c_part = eval_trig_polylog(part, x)
                s_total += s_part
                c_total += c_part
            worst = max(
                worst,
                float(np.max(np.abs(s_total - s_value))),
                float(np.max(np.abs(c_total - c_value))),
            )
    return worst, 1e-10


@invariant("derivative_chain", "trigpolylog")
def check_derivative_chain(ctx: SuiteContext) -> Measurement:
    """dC_{r+1}/dx = -S_r and dS_{r+1}/dx = C_r by central differences."""
    h = 1e-5
    worst = 0.0
    for lower in _indices(4, orders=(1, 2)):
        upper = PolylogIndex(j=lower.j, k=lower.k, r=lower.r + 1)
        x = sample_away_from(ctx.rng, 20, lower.node_spacing, 0.3)
        s_lower, c_lower = eval_trig_polylog(lower, x)
        s_right, c_right = eval_trig_polylog(upper, x + h)
        s_left, c_left = eval_trig_polylog(upper, x - h)
        worst = max(
            worst,
            float(np.max(np.abs((c_right - c_left) / (2 * h) + s_lower))),
            float(np.max(np.abs((s_right - s_left) / (2 * h) - c_lower))),
        )
    return worst, 1e-5


@invariant("pairwise_sum_constancy", "trigpolylog")
def check_pairwise_constancy(ctx: SuiteContext) -> Measurement:
    worst = 0.0
    for k in range(2, 7):
        width = PI / k
        for j in range(1, k):
            for m in range(-k, k):
                lo, hi = m * width, (m + 1) * width
                x = np.linspace(lo + 0.05, hi - 0.05, 50)
                values = np.asarray(pairwise_sum_profile(j, k, x))
                worst = max(worst, float(values.max() - values.min()))
    return worst, 1e-9


@invariant("node_jump_heights", "trigpolylog")
def check_jump_heights(ctx: SuiteContext) -> Measurement:
    h = 1e-7
    worst = 0.0
    for idx in _indices(5, orders=(1,)):
        for node_index in range(idx.k):
            location = TWO_PI * node_index / idx.k
            s_right, c_right = eval_trig_polylog(idx, location + h)
            s_left, c_left = eval_trig_polylog(idx, location - h)
            for family, right, left in ((Family.S, s_right, s_left), (Family.C, c_right, c_left)):
                expected = node_behaviour(idx, node_index, family).jump_height
                worst = max(worst, abs((right - left) - expected))
    return worst, 1e-5


@invariant("node_cusp_classification", "trigpolylog")
def check_cusp_classification(ctx: SuiteContext) -> Measurement:
    """Count nodes where the measured log growth disagrees with cusp_sign."""
    mismatches = 0
    for idx in _indices(5, orders=(1,)):
        for node_index in range(idx.k):
            location = TWO_PI * node_index / idx.k
            near = eval_trig_polylog(idx, np.array([location - 1e-7, location + 1e-7]))
            far = eval_trig_polylog(idx, np.array([location - 1e-5, location + 1e-5]))
            for position, family in enumerate((Family.S, Family.C)):
                growth = float(np.mean(near[position]) - np.mean(far[position]))
                measured = CuspSign.NONE
                if abs(growth) > 1e-3:
                    measured = CuspSign.UP if growth > 0 else CuspSign.DOWN
                if measured is not node_behaviour(idx, node_index, family).cusp_sign:
                    mismatches += 1
    return float(mismatches), 0.0


@invariant("omega_oddness", "dispersion")
def check_oddness(ctx: SuiteContext) -> Measurement:
    k = ctx.rng.uniform(-50.0, 50.0, size=200)
    worst = 0.0
    for spec in (
        DispersionSpec.bo(),
        DispersionSpec.kdv(),
        DispersionSpec.ilw(0.3),
        DispersionSpec.ilw(10.0),
        DispersionSpec.smith(2.0),
    ):
        plus = np.asarray(dispersion.omega(spec, k))
        minus = np.asarray(dispersion.omega(spec, -k))
        scale = np.maximum(1.0, np.abs(plus))
        worst = max(worst, float(np.max(np.abs(plus + minus) / scale)))
    return worst, 1e-12


@invariant("bo_limit_monotone", "dispersion")
def check_bo_limit(ctx: SuiteContext) -> Measurement:
    """Count violations of monotone decay and of the delta = 100 bounds."""
    violations = 0
    k = np.arange(1, 9, dtype=float)
    bo = np.asarray(dispersion.omega(DispersionSpec.bo(), k))
    for family in (DispersionSpec.ilw, DispersionSpec.smith):
        gaps = [
            np.abs(np.asarray(dispersion.omega(family(delta), k)) - bo)
            for delta in (1.0, 10.0, 100.0)
        ]
        violations += int(np.sum(gaps[1] >= gaps[0]) + np.sum(gaps[2] >= gaps[1]))
    ilw = np.asarray(dispersion.omega(DispersionSpec.ilw(100.0), k))
    violations += int(np.sum(np.abs(ilw - bo + k / 100.0) > 1e-6))
    smith_speed = np.asarray(dispersion.phase_velocity(DispersionSpec.smith(100.0), k))
    violations += int(np.sum(smith_speed - k > 1.01 / (2.0 * 100.0 * k)))
    return float(violations), 0.0


@invariant("kdv_symbol_limit", "dispersion")
def check_kdv_symbol(ctx: SuiteContext) -> Measurement:
    """max |3 omega/delta - k^3| / (k^5 delta^2/15) at delta = 0.01."""
    delta = 0.01
    k = np.arange(1, 33, dtype=float)
    gap = np.abs(np.asarray(dispersion.ilw_kdv_rescaled_excess(delta, k)))
    return float(np.max(gap / (k**5 * delta**2 / 15.0))), 1.1


@invariant("gap_envelope", "dispersion")
def check_gap_envelope(ctx: SuiteContext) -> Measurement:
    """max gap/envelope where delta |k| >= ln(21)/2."""
    worst = 0.0
    for delta in (0.75, 1.0, 2.0, 5.0):
        for k in range(1, 60):
            if delta * k < ENVELOPE_THRESHOLD:
                continue
            sample = dispersion.ilw_bo_velocity_gap(delta, k)
            if sample.envelope > 0.0:
                worst = max(worst, sample.gap / sample.envelope)
    return worst, 1.0


def _evolution_specs() -> list[DispersionSpec]:
    return [
        DispersionSpec.bo(),
        DispersionSpec.kdv(),
        DispersionSpec.ilw(2.0),
        DispersionSpec.smith(2.0),
    ]


@invariant("mode_magnitude", "evolution")
def check_mode_magnitude(ctx: SuiteContext) -> Measurement:
    step = FourierInitialData.riemann_step()
    worst = 0.0
    for spec in _evolution_specs():
        for t in (RationalTime(p=1, q=7), 1.3):
            k, evolved = evolution.evolve_coefficients(spec, step, t, 1000)
            initial = np.abs(step.coefficients_for(k))
            worst = max(worst, float(np.max(np.abs(np.abs(evolved) - initial) / initial)))
    return worst, 1e-14


@invariant("mean_conservation", "evolution")
def check_mean(ctx: SuiteContext) -> Measurement:
    step = FourierInitialData.riemann_step()
    worst = 0.0
    for spec in _evolution_specs():
        mean = evolution.trapezoid_mean(spec, step, 1.0, 1000, points=4096)
        worst = max(worst, abs(mean - 0.5))
    return worst, 1e-6


@invariant("reality", "evolution")
def check_reality(ctx: SuiteContext) -> Measurement:
    """Imaginary part of the two-sided sum over +-k with conjugate coefficients."""
    step = FourierInitialData.riemann_step()
    x = ctx.rng.uniform(-PI, PI, size=64)
    worst = 0.0
    for spec in _evolution_specs():
        k, evolved = evolution.evolve_coefficients(spec, step, 0.9, 200)
        kf = k.astype(float)
        positive = evolved * np.exp(1j * np.multiply.outer(x, kf))
        negative = np.conj(evolved) * np.exp(-1j * np.multiply.outer(x, kf))
        total = step.mean() + positive.sum(axis=-1) + negative.sum(axis=-1)
        worst = max(worst, float(np.max(np.abs(total.imag))))
    return worst, 1e-12


@invariant("determinism", "evolution")
def check_determinism(ctx: SuiteContext) -> Measurement:
    """Differences between a full evaluation, a repeat and a split evaluation."""
    step = FourierInitialData.riemann_step()
    spec = DispersionSpec.ilw(3.0)
    x = np.linspace(-PI, PI, 257)
    first = evolution.evolve_series(spec, step, 0.7, x, 2000)
    second = evolution.evolve_series(spec, step, 0.7, x, 2000)
    split = np.concatenate(
        [
            evolution.evolve_series(spec, step, 0.7, x[:100], 2000),
            evolution.evolve_series(spec, step, 0.7, x[100:], 2000),
        ]
    )
    differing = int(np.sum(first != second) + np.sum(first != split))
    return float(differing), 0.0


def _profile_oracle(ctx: SuiteContext, spec: DispersionSpec, times) -> float:
    step = FourierInitialData.riemann_step()
    worst = 0.0
    for p, q in times:
        time_value = RationalTime(p=p, q=q)
        x = sample_away_from(ctx.rng, ctx.points, PI / q, _oracle_buffer(q))
        closed = np.asarray(revival.revival_profile(spec, time_value, x))
        series = np.asarray(evolution.evolve_series(spec, step, time_value, x, ctx.nmodes))
        worst = max(worst, float(np.max(np.abs(closed - series))))
    return worst


@invariant("bo_revival_oracle", "revival")
def check_bo_oracle(ctx: SuiteContext) -> Measurement:
    return _profile_oracle(ctx, DispersionSpec.bo(), BO_TIMES), 1e-3


@invariant("bo_singular_set", "revival")
def check_bo_singular_set(ctx: SuiteContext) -> Measurement:
    """Largest distance between the singular set and {pi m/q} (inf on a count mismatch)."""
    worst = 0.0
    for p, q in BO_TIMES:
        profile = revival.profile_terms(DispersionSpec.bo(), RationalTime(p=p, q=q))
        found = np.array(revival.profile_singular_set(profile))
        expected = PI * np.arange(-q, q) / q
        if found.size != expected.size:
            return math.inf, SINGULAR_SET_TOLERANCE
        worst = max(worst, float(np.max(np.abs(found - expected))))
    return worst, SINGULAR_SET_TOLERANCE


@invariant("kdv_piecewise_constant", "revival")
def check_kdv_constancy(ctx: SuiteContext) -> Measurement:
    worst = 0.0
    for p, q in KDV_TIMES:
        time_value = RationalTime(p=p, q=q)
        for m in range(-q, q):
            x = np.linspace(PI * m / q + 0.05, PI * (m + 1) / q - 0.05, 50)
            values = np.asarray(revival.kdv_rational_profile(time_value, x))
            worst = max(worst, float(values.max() - values.min()))
    return worst, 1e-9


@invariant("kdv_revival_oracle", "revival")
def check_kdv_oracle(ctx: SuiteContext) -> Measurement:
    return _profile_oracle(ctx, DispersionSpec.kdv(), KDV_TIMES), 1e-3


@invariant("ilw_shifted_bo", "revival")
def check_ilw_shifted_bo(ctx: SuiteContext) -> Measurement:
    q = 7
    x = sample_away_from(ctx.rng, ctx.points, PI / q, _oracle_buffer(q))
    residual = np.asarray(evolution.ilw_residual(100.0, RationalTime(p=1, q=q), x, 64))
    return float(np.max(np.abs(residual))), 1e-10


def _kdv_limit_difference(ctx: SuiteContext, delta: float) -> float:
    step = FourierInitialData.riemann_step()
    t = RationalTime(p=1, q=7)
    x = sample_away_from(ctx.rng, ctx.points, PI / 7, _oracle_buffer(7))
    kdv = np.asarray(evolution.evolve_series(DispersionSpec.kdv(), step, t, x, 32))
    rescaled = np.asarray(evolution.kdv_rescaled_ilw(delta, t, x, 32))
    return float(np.max(np.abs(rescaled - kdv)))


@invariant("ilw_kdv_limit_bound", "revival")
def check_ilw_kdv_bound(ctx: SuiteContext) -> Measurement:
    """At delta = 0.01 the high modes are far off; the per-mode bound still holds."""
    bound = evolution.kdv_limit_error_bound(0.01, RationalTime(p=1, q=7), 32)
    return _kdv_limit_difference(ctx, 0.01), bound


@invariant("ilw_kdv_limit_profile", "revival")
def check_ilw_kdv_profile(ctx: SuiteContext) -> Measurement:
    return _kdv_limit_difference(ctx, 1e-4), 0.05


@invariant("smith_error_bound_value", "revival")
def check_smith_bound_value(ctx: SuiteContext) -> Measurement:
    bound = revival.smith_profile_error_bound(RationalTime(p=1, q=5), 10.0)
    return abs(bound - 1.0451e-4), 1e-8


@invariant("smith_certificate", "revival")
def check_smith_certificate(ctx: SuiteContext) -> Measurement:
    time_value = RationalTime(p=1, q=5)
    x = sample_away_from(ctx.rng, ctx.points, PI / 5, _oracle_buffer(5))
    closed, bound = revival.smith_rational_profile(time_value, 10.0, x)
    series = evolution.evolve_series(
        DispersionSpec.smith(10.0), FourierInitialData.riemann_step(), time_value, x, ctx.nmodes
    )
    return float(np.max(np.abs(np.asarray(closed) - np.asarray(series)))), bound + 2e-3


@invariant("bo_fundamental_mass", "revival")
def check_fundamental_mass(ctx: SuiteContext) -> Measurement:
    worst = 0.0
    for p, q in ((0, 1), *BO_TIMES):
        time_value = RationalTime(p=p, q=q)
        decomposition = revival.bo_fundamental_decomposition(time_value)
        if not decomposition.term_families() <= {"constant", "delta", "cot"}:
            return math.inf, 1e-12
        worst = max(worst, abs(decomposition.total_mass() - 1.0))
        smith = revival.smith_fundamental_approx(time_value, 10.0)
        worst = max(worst, abs(smith.total_mass() - 1.0))
    return worst, 1e-12


@invariant("bo_fundamental_smooth_part", "revival")
def check_fundamental_smooth(ctx: SuiteContext) -> Measurement:
    """Smooth part against a central difference of the evolved integrated delta."""
    h = 1e-5
    time_value = RationalTime(p=1, q=2)
    decomposition = revival.bo_fundamental_decomposition(time_value)
    x = 0.4
    difference = (
        revival.integrated_delta_profile(time_value, x + h)
        - revival.integrated_delta_profile(time_value, x - h)
    ) / (2 * h)
    return abs(decomposition.smooth_part(x) - difference), 1e-4


@invariant("hilbert_clausen_consistency", "kernels")
def check_hilbert_clausen(ctx: SuiteContext) -> Measurement:
    x = sample_away_from(ctx.rng, 100, TWO_PI, 0.01)
    direct = np.asarray(kernels.periodic_hilbert_kernel(x))
    clausen = np.asarray(kernels.hilbert_kernel_from_clausen(x))
    return float(np.max(np.abs(direct - clausen))), 1e-12


@invariant("ilw_quasi_periodicity", "kernels")
def check_ilw_quasi_periodicity(ctx: SuiteContext) -> Measurement:
    spec = kernels.ilw_kernel_spec(1.0, 400)
    x = np.array([0.5, 1.2, -2.0])
    residual = (
        np.asarray(kernels.ilw_kernel(spec, x + TWO_PI))
        - np.asarray(kernels.ilw_kernel(spec, x))
        + 1.0 / spec.delta
    )
    return float(np.max(np.abs(residual))), 1e-8


@invariant("ilw_method_agreement", "kernels")
def check_ilw_methods(ctx: SuiteContext) -> Measurement:
    worst = 0.0
    for delta in (0.5, 1.0, 10.0):
        spec = kernels.ilw_kernel_spec(delta, 400)
        x = np.array([0.3, 1.2, 2.5, -1.7, 7.0])
        coth = np.asarray(kernels.ilw_kernel(spec, x, method="coth_sum"))
        zeta = np.asarray(kernels.ilw_kernel(spec, x, method="zeta"))
        worst = max(worst, float(np.max(np.abs(coth - zeta))))
    return worst, 1e-8


@invariant("ilw_bo_limit", "kernels")
def check_ilw_bo_limit(ctx: SuiteContext) -> Measurement:
    """Count x where the gap to -(1/2 pi) cot(x/2) fails to shrink as delta grows."""
    violations = 0
    for x in (0.5, 1.0, 2.0):
        gaps = [float(kernels.ilw_kernel_bo_limit_gap(delta, x)) for delta in (5.0, 20.0, 100.0)]
        violations += sum(later >= earlier for earlier, later in zip(gaps, gaps[1:]))
    return float(violations), 0.0


@invariant("smith_kernel_truncation", "kernels")
def check_smith_truncation(ctx: SuiteContext) -> Measurement:
    worst = 0.0
    x = np.array([0.3, 1.0, 2.5, -1.4])
    for delta in (0.5, 1.0, 4.0):
        short = np.asarray(kernels.smith_kernel_periodic(delta, x, 10))
        long = np.asarray(kernels.smith_kernel_periodic(delta, x, 20))
        worst = max(worst, float(np.max(np.abs(short - long))))
    return worst, 1e-12


@invariant("bessel_k1_oracle", "kernels")
def check_bessel_k1(ctx: SuiteContext) -> Measurement:
    x = np.geomspace(1e-3, 30.0, 12 if ctx.quick else 40)
    values = np.asarray(kernels.bessel_k1(x))
    oracle = np.array([kernels.bessel_k1_integral(float(point)) for point in x])
    return float(np.max(np.abs(values / oracle - 1.0))), 1e-8


@invariant("bessel_fourier_identity", "kernels")
def check_bessel_fourier(ctx: SuiteContext) -> Measurement:
    worst = 0.0
    for a in (0.5, 1.0, 2.0):
        for x in (0.5, 1.0, 2.0):
            _, _, error = kernels.verify_appendix_ft(a, x)
            worst = max(worst, error)
    return worst, 1e-4


def run_suite(
    quick: bool = False, seed: int | None = None, tolerance_scale: float = 1.0
) -> VerificationReport:
    """
    Run every registered invariant.

    Args:
        quick: Use reduced sample sizes and truncation levels
        seed: Generator seed, VERIFY_SEED by default
        tolerance_scale: Factor applied to every bound

    Returns:
        VerificationReport with one result per invariant
    """
    seed = settings.VERIFY_SEED if seed is None else seed
    ctx = SuiteContext(quick=quick, rng=np.random.default_rng(seed))
    results = []
    for entry in INVARIANTS:
        start = time.perf_counter()
        try:
            measured, bound = entry.check(ctx)
            error = None
        except Exception as exc:
            logger.error(f"Invariant {entry.name} raised {type(exc).__name__}: {exc}")
            measured, bound, error = math.nan, math.nan, type(exc).__name__
        duration = time.perf_counter() - start
        result = InvariantResult(
            name=entry.name,
            module=entry.module,
            measured=float(measured),
            bound=float(bound) * tolerance_scale,
            duration=duration,
            error=error,
        )
        logger.debug(
            f"{entry.name}: measured {result.measured:.3e}, bound {result.bound:.3e} "
            f"in {duration:.2f}s"
        )
        results.append(result)

    report = VerificationReport(results=tuple(results), quick=quick, seed=seed)
    logger.info(
        f"Verification {'passed' if report.passed else 'failed'}: "
        f"{len(results) - len(report.failures)}/{len(results)} invariants",
        extra={"quick": quick, "seed": seed},
    )
    return report
