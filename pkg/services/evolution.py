"""
Spectral evolution of real periodic initial data.

A linear equation with odd dispersion relation omega maps the Fourier mode
b_k e^{ikx} to b_k e^{i(kx - omega(k) t)}. For real data this gives

    u(t, x) = b_0 + sum_{k>=1} 2 (Re b_k cos(theta_k) - Im b_k sin(theta_k)),
    theta_k = k x - omega(k) t,

which for the Riemann step is 1/2 + (2/pi) sum sin[(2j+1)x - omega(2j+1)t]/(2j+1).

At a rational time t = p*pi/q the integer part k|k| or k^3 of the phase is
reduced modulo 2q in integer arithmetic, so only the small excess of ILW and
Smith is carried in floating point. Modes are accumulated in ascending k with
math.fsum, which makes the result independent of blocking and exact up to
the final rounding of each term.
"""

import math
from collections.abc import Callable

import numpy as np

from models.dispersion import PHASE_ENVELOPE_CONSTANT, DispersionSpec, Equation
from models.evolution import FourierInitialData, RationalTime, SolutionField
from services import dispersion
from utils.logging import get_logger

logger = get_logger(__name__)

BLOCK_ELEMENTS = 1 << 21

Time = float | RationalTime
PhaseFunction = Callable[[np.ndarray], np.ndarray]


def _integer_phase(time: RationalTime, k: np.ndarray, degree: int) -> np.ndarray:
    """pi * ((p k^degree) mod 2q) / q, computed on residues of k."""
    modulus = 2 * time.q
    residues = k % modulus
    power = (residues**degree) % modulus
    return math.pi * ((time.p * power) % modulus) / time.q


def phase(spec: DispersionSpec, k: np.ndarray, t: Time) -> np.ndarray:
    """
    Phase omega(k) t for positive integer wavenumbers.

    Args:
        spec: Equation and depth
        k: Positive integer wavenumbers
        t: Float time or RationalTime

    Returns:
        Phases, reduced modulo 2 pi in their integer part for rational times
    """
    k = np.asarray(k, dtype=np.int64)
    if isinstance(t, RationalTime):
        degree = dispersion.integer_symbol_degree(spec)
        base = _integer_phase(t, k, degree)
        if spec.equation in (Equation.BO, Equation.KDV):
            return base
        return base + t.t * np.asarray(dispersion.omega_excess(spec, k.astype(float)))
    return np.asarray(dispersion.omega(spec, k.astype(float))) * float(t)


def _time_value(t: Time) -> float:
    return t.t if isinstance(t, RationalTime) else float(t)


def _sum_modes(
    data: FourierInitialData,
    x,
    n: int,
    phase_of: PhaseFunction,
):
    """Evaluate b_0 + sum 2 Re(b_k e^{i(kx - phase_k)}) over the modes of level n."""
    if n < 1:
        raise ValueError(f"the number of modes must be positive, got {n}")
    points = np.asarray(x, dtype=float)
    scalar = points.ndim == 0
    flat = points.reshape(-1)

    k = data.modes_for(n)
    b = data.coefficients_for(k)
    theta_shift = phase_of(k)
    kf = k.astype(float)
    real_part, imag_part = 2.0 * b.real, 2.0 * b.imag
    mean = data.mean()

    result = np.empty(flat.shape)
    rows = max(1, BLOCK_ELEMENTS // max(1, k.size))
    for start in range(0, flat.size, rows):
        block = flat[start : start + rows]
        theta = np.multiply.outer(block, kf) - theta_shift
        terms = real_part * np.cos(theta) - imag_part * np.sin(theta)
        for offset, row in enumerate(terms):
            result[start + offset] = math.fsum([mean, *row.tolist()])

    result = result.reshape(points.shape)
    return result.item() if scalar else result


def evolve_series(spec: DispersionSpec, data: FourierInitialData, t: Time, x, N: int):
    """
    Truncated Fourier series of the evolved data.

    Args:
        spec: Equation and depth
        data: Initial data
        t: Float time or RationalTime
        x: Scalar or array of points
        N: Truncation level; the step uses k = 2j+1 for j = 0..N, other
            data k = 1..N

    Returns:
        u(t, x) with the shape of x
    """
    logger.debug(
        f"Evolving {data.preset} under {spec.label} to t={t} with N={N} "
        f"at {np.size(x)} points"
    )
    return _sum_modes(data, x, N, lambda k: phase(spec, k, t))


def evolve_coefficients(
    spec: DispersionSpec, data: FourierInitialData, t: Time, N: int
) -> tuple[np.ndarray, np.ndarray]:
    """
    Evolved coefficients b_k e^{-i omega(k) t} for the modes of level N.

    Returns:
        Tuple (k, evolved b_k); b_0 is unchanged and not included
    """
    k = data.modes_for(N)
    b = data.coefficients_for(k)
    return k, b * np.exp(-1j * phase(spec, k, t))


def evolve_field(
    spec: DispersionSpec,
    data: FourierInitialData,
    t: Time,
    grid: np.ndarray,
    N: int,
) -> SolutionField:
    """Evaluate evolve_series on a grid and wrap the result."""
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(evolve_series(spec, data, t, grid, N), dtype=float)
    return SolutionField(
        grid=grid,
        values=values,
        spec=spec,
        time=_time_value(t),
        n_modes=N,
        method="series",
    )


def ilw_residual(delta: float, t: Time, x, N: int):
    """
    Difference v = u_ILW(t, x) - u_BO(t, x + t/delta) for the Riemann step.

    Both series are truncated at the same level N.

    Args:
        delta: ILW depth
        t: Float time or RationalTime
        x: Scalar or array of points
        N: Truncation level

    Returns:
        v(t, x) with the shape of x
    """
    step = FourierInitialData.riemann_step()
    shifted = np.asarray(x, dtype=float) + _time_value(t) / delta
    ilw = evolve_series(DispersionSpec.ilw(delta), step, t, x, N)
    bo = evolve_series(DispersionSpec.bo(), step, t, shifted, N)
    return np.subtract(ilw, bo).item() if np.ndim(x) == 0 else np.subtract(ilw, bo)


def ilw_residual_mode_envelope(
    delta: float, t: Time, N: int
) -> tuple[np.ndarray, np.ndarray]:
    """
    Per-mode bound on the ILW residual for the Riemann step.

    Mode k of v has magnitude |b_k| |1 - exp(i k eps(k) t)| with
    eps(k) = coth(delta|k|)|k| - |k|, bounded by PHASE_ENVELOPE_CONSTANT |b_k| |k| eps(k) t.

    Returns:
        Tuple (k, bound on |mode k of v|)
    """
    step = FourierInitialData.riemann_step()
    k = step.modes_for(N)
    kf = k.astype(float)
    magnitude = np.abs(step.coefficients_for(k))
    gap = kf * 2.0 * np.exp(-2.0 * delta * kf) / -np.expm1(-2.0 * delta * kf)
    return k, PHASE_ENVELOPE_CONSTANT * magnitude * kf * gap * abs(_time_value(t))


def _rescaled_phase(delta: float, t: Time) -> PhaseFunction:
    def phase_of(k: np.ndarray) -> np.ndarray:
        excess = np.asarray(dispersion.ilw_kdv_rescaled_excess(delta, k.astype(float)))
        if isinstance(t, RationalTime):
            return _integer_phase(t, k, 3) + t.t * excess
        return (k.astype(float) ** 3 + excess) * float(t)

    return phase_of


def kdv_rescaled_ilw(delta: float, t: Time, x, N: int):
    """
    ILW evolution of the Riemann step under the rescaled symbol 3 omega(k)/delta.

    This equals the ILW solution at time 3t/delta and tends to the KdV
    solution at time t as delta -> 0.

    Args:
        delta: ILW depth
        t: Float time or RationalTime
        x: Scalar or array of points
        N: Truncation level

    Returns:
        The rescaled solution with the shape of x
    """
    step = FourierInitialData.riemann_step()
    return _sum_modes(step, x, N, _rescaled_phase(delta, t))


def kdv_limit_error_bound(delta: float, t: Time, N: int) -> float:
    """
    Bound on |kdv_rescaled_ilw - KdV series| at truncation level N.

    Each mode differs by at most 2 |b_k| min(2, |t (3 omega(k)/delta - k^3)|).
    """
    step = FourierInitialData.riemann_step()
    k = step.modes_for(N)
    gap = np.abs(np.asarray(dispersion.ilw_kdv_rescaled_excess(delta, k.astype(float))))
    magnitude = np.abs(step.coefficients_for(k))
    per_mode = 2.0 * magnitude * np.minimum(2.0, gap * abs(_time_value(t)))
    return math.fsum(per_mode)


def trapezoid_mean(
    spec: DispersionSpec,
    data: FourierInitialData,
    t: Time,
    N: int,
    points: int = 4096,
) -> float:
    """
    Mean of the evolved field by the periodic trapezoid rule.

    Exact for truncations whose largest mode is below ``points``.
    """
    grid = -math.pi + 2.0 * math.pi * np.arange(points) / points
    values = np.asarray(evolve_series(spec, data, t, grid, N))
    return math.fsum(values) / points
