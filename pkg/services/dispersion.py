"""
Dispersion relations of the linearised BO, ILW, Smith and KdV equations.

    BO:     omega(k) = k^2 sign(k)
    ILW:    omega(k) = k^2 coth(delta k) - k/delta
    Smith:  omega(k) = k sqrt(1/delta + k^2)
    KdV:    omega(k) = k^3

All four are odd in k. BO and KdV are integer polynomials in k, which lets
evolution reduce their phases exactly at rational times; ILW and Smith are
handled as BO plus ``omega_excess``, evaluated without cancellation.

The ILW relation is evaluated through coth(a) - 1 = 2 e^{-2a}/(1 - e^{-2a})
(via expm1) for delta|k| >= 0.5 and through the Bernoulli series of
z coth z - 1 below that, so neither large delta*k nor small delta*k loses
precision.
"""

import math
from functools import lru_cache

import numpy as np
from scipy.special import bernoulli

from models.dispersion import (
    ENVELOPE_THRESHOLD,
    GAP_ENVELOPE_CONSTANT,
    DispersionSpec,
    Equation,
    SmithEnvelope,
    VelocityGap,
)
from models.evolution import RationalTime
from utils.logging import get_logger

logger = get_logger(__name__)

SMALL_ARGUMENT = 0.5
COTH_SERIES_TERMS = 14


def _as_array(k) -> tuple[np.ndarray, bool]:
    values = np.asarray(k, dtype=float)
    return values, values.ndim == 0


def _finish(values: np.ndarray, scalar: bool):
    return values.item() if scalar else values


@lru_cache(maxsize=1)
def _coth_series_coefficients() -> np.ndarray:
    """c_n = 2^{2n} B_{2n} / (2n)! so that z coth z - 1 = sum_{n>=1} c_n z^{2n}."""
    numbers = bernoulli(2 * COTH_SERIES_TERMS)
    coefficients = np.array(
        [
            2.0 ** (2 * n) * numbers[2 * n] / math.factorial(2 * n)
            for n in range(1, COTH_SERIES_TERMS + 1)
        ]
    )
    coefficients.setflags(write=False)
    return coefficients


def _z_coth_minus_one(z: np.ndarray, skip: int = 0) -> np.ndarray:
    """Series of z coth z - 1, optionally without its first ``skip`` terms."""
    coefficients = _coth_series_coefficients()[skip:]
    z2 = z * z
    total = np.zeros_like(z)
    for coefficient in coefficients[::-1]:
        total = total * z2 + coefficient
    return total * z2 ** (skip + 1)


def _coth_excess(a: np.ndarray) -> np.ndarray:
    """coth(a) - 1 for a > 0 without overflow."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return 2.0 * np.exp(-2.0 * a) / -np.expm1(-2.0 * a)


def _ilw_omega(delta: float, k: np.ndarray) -> np.ndarray:
    z = delta * k
    small = np.abs(z) < SMALL_ARGUMENT
    safe_k = np.where(small, 1.0, k)
    large = k * np.abs(k) * (1.0 + _coth_excess(np.abs(delta * safe_k))) - k / delta
    series = (k / delta) * _z_coth_minus_one(np.where(small, z, 0.0))
    return np.where(small, series, large)


def _smith_excess(delta: float, k: np.ndarray) -> np.ndarray:
    inverse_depth = 1.0 / delta
    return k * inverse_depth / (np.sqrt(k * k + inverse_depth) + np.abs(k))


def omega(spec: DispersionSpec, k):
    """
    Dispersion relation omega(k).

    Args:
        spec: Equation and depth
        k: Scalar or array of wavenumbers (real)

    Returns:
        omega(k) with the shape of k; ILW gives 0 at k = 0
    """
    values, scalar = _as_array(k)
    if spec.equation is Equation.BO:
        result = values * np.abs(values)
    elif spec.equation is Equation.KDV:
        result = values * values * values
    elif spec.equation is Equation.ILW:
        result = _ilw_omega(spec.delta, values)
    else:
        result = values * np.abs(values) + _smith_excess(spec.delta, values)
    return _finish(result, scalar)


def integer_symbol_degree(spec: DispersionSpec) -> int:
    """
    Degree of the integer polynomial part of omega.

    2 for BO, ILW and Smith (k|k|), 3 for KdV (k^3).
    """
    return 3 if spec.equation is Equation.KDV else 2


def omega_excess(spec: DispersionSpec, k):
    """
    omega(k) minus its integer polynomial part (k|k| or k^3).

    Zero for BO and KdV. For ILW this is
    k|k| (coth(delta|k|) - 1) - k/delta and for Smith
    k (1/delta) / (sqrt(k^2 + 1/delta) + |k|).

    Args:
        spec: Equation and depth
        k: Scalar or array of wavenumbers

    Returns:
        The excess with the shape of k
    """
    values, scalar = _as_array(k)
    if spec.equation in (Equation.BO, Equation.KDV):
        result = np.zeros_like(values)
    elif spec.equation is Equation.ILW:
        magnitude = np.abs(values)
        small = np.abs(spec.delta * values) < SMALL_ARGUMENT
        safe = np.where(small, 1.0, magnitude)
        large = values * magnitude * _coth_excess(spec.delta * safe) - values / spec.delta
        result = np.where(
            small, _ilw_omega(spec.delta, values) - values * magnitude, large
        )
    else:
        result = _smith_excess(spec.delta, values)
    return _finish(result, scalar)


def ilw_kdv_rescaled_excess(delta: float, k):
    """
    3 omega_ILW(k)/delta - k^3, the symbol gap of the rescaled ILW equation.

    Small delta*k uses the coth series with its leading term removed, so the
    gap -(delta^2) k^5/15 + ... keeps full relative precision.
    """
    values, scalar = _as_array(k)
    z = delta * values
    small = np.abs(z) < SMALL_ARGUMENT
    series = (3.0 * values / delta**2) * _z_coth_minus_one(
        np.where(small, z, 0.0), skip=1
    )
    direct = 3.0 * _ilw_omega(delta, values) / delta - values**3
    return _finish(np.where(small, series, direct), scalar)


def phase_velocity(spec: DispersionSpec, k):
    """
    Phase velocity omega(k)/k.

    Raises:
        ValueError: If any k is zero
    """
    values, scalar = _as_array(k)
    if np.any(values == 0.0):
        raise ValueError("phase velocity is undefined at k = 0")
    return _finish(np.asarray(omega(spec, values)) / values, scalar)


def ilw_bo_velocity_gap(delta: float, k: int) -> VelocityGap:
    """
    Gap |k coth(delta k) - |k|| = |k| 2 e^{-2 delta|k|} / (1 - e^{-2 delta|k|}).

    Args:
        delta: Depth, delta > 0
        k: Non-zero integer wavenumber

    Returns:
        VelocityGap with envelope 2.1 |k| e^{-2 delta |k|}
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if k == 0:
        raise ValueError("the velocity gap is defined for k != 0")
    a = delta * abs(k)
    gap = abs(k) * 2.0 * math.exp(-2.0 * a) / -math.expm1(-2.0 * a)
    envelope = GAP_ENVELOPE_CONSTANT * abs(k) * math.exp(-2.0 * a)
    return VelocityGap(
        delta=delta,
        k=k,
        gap=gap,
        envelope=envelope,
        envelope_valid=a >= ENVELOPE_THRESHOLD,
    )


def smith_f(z):
    """
    f(z) = (2/z)(sqrt(1+z) - 1), evaluated as 2/(sqrt(1+z) + 1) so f(0) = 1.
    """
    values, scalar = _as_array(z)
    if np.any(values < -1.0):
        raise ValueError("smith_f is defined for z >= -1")
    return _finish(2.0 / (np.sqrt(1.0 + values) + 1.0), scalar)


def smith_f_coefficient(n: int) -> float:
    """Coefficient (-1)^n (2n-1)! / ((n+1)! (n-1)! 2^{2n-1}) of z^n, 1 for n = 0."""
    if n == 0:
        return 1.0
    return (
        (-1) ** n
        * math.factorial(2 * n - 1)
        / (math.factorial(n + 1) * math.factorial(n - 1) * 2 ** (2 * n - 1))
    )


def smith_f_series(z, terms: int):
    """Partial sum of the power series of f with ``terms`` terms."""
    values, scalar = _as_array(z)
    total = np.zeros_like(values)
    for n in reversed(range(terms)):
        total = total * values + smith_f_coefficient(n)
    return _finish(total, scalar)


def smith_envelope(p: int, q: int, delta: float) -> SmithEnvelope:
    """
    Taylor data of the Smith phase correction at t = p*pi/q.

    The odd mode k picks up the extra phase beta f(z/delta) with
    beta = p pi/(2 q delta) and z = 1/k^2, so

        cos-curve = cos(beta) + (p pi/(8 q delta^2)) sin(beta) z + eps_C z^2
        sin-curve = sin(beta) - (p pi/(8 q delta^2)) cos(beta) z + eps_S z^2

    with |eps_C|, |eps_S| <= (p pi/(8 q delta^3)) (1 + p pi/(8 q delta)).

    Args:
        p: Numerator of the time, reduced with q
        q: Denominator of the time
        delta: Depth, delta > 0

    Returns:
        SmithEnvelope
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    time = RationalTime(p=p, q=q)
    p, q = time.p, time.q
    beta = p * math.pi / (2.0 * q * delta)
    slope = p * math.pi / (8.0 * q * delta**2)
    ratio = p * math.pi / (8.0 * q)
    return SmithEnvelope(
        p=p,
        q=q,
        delta=delta,
        c0=math.cos(beta),
        c1=slope * math.sin(beta),
        s0=math.sin(beta),
        s1=-slope * math.cos(beta),
        eps_bound=ratio / delta**3 * (1.0 + ratio / delta),
    )


def smith_curves(envelope: SmithEnvelope, z):
    """
    Exact cos and sin curves cos(beta f(z/delta)) and sin(beta f(z/delta)).

    Returns:
        Tuple (cos-curve, sin-curve) with the shape of z
    """
    phase = envelope.beta * np.asarray(smith_f(np.asarray(z, dtype=float) / envelope.delta))
    values, scalar = _as_array(z)
    return _finish(np.cos(phase), scalar), _finish(np.sin(phase), scalar)
