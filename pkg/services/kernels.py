"""
Convolution kernels of the periodic BO, ILW and Smith equations.

    Hilbert:  (1/2 pi) cot(x/2), Fourier symbol -i sign(k)
    ILW:      C_delta(x) = -(1/2 delta) sum_n coth(pi x/(2 delta) + pi^2 n/delta)
                         = (1/pi) [alpha x - zeta(x)]
    Smith:    -(i/(pi sqrt(delta))) sum_n K_1(|x + 2 n pi|/sqrt(delta)) / |x + 2 n pi|

The Weierstrass zeta function of the lattice omega_1 = -i delta, omega_3 = pi
is evaluated through its nome expansion, which converges geometrically with
ratio exp(-pi^2/delta) on the fundamental strip, and extended to the whole
line by quasi-periodicity. This is independent of the coth sum, so the two
methods check each other.
"""

import math
from typing import Literal

import numpy as np
from scipy import integrate
from scipy.special import digamma, k1e

from config import settings
from models.kernels import ILWKernelSpec, KernelKind, KernelSample
from services.errors import ConvergenceError, SingularityError
from services.trigpolylog import PI, TWO_PI, OnNode, clausen_order_zero, reduce_angle
from utils.logging import get_logger

logger = get_logger(__name__)

Method = Literal["coth_sum", "zeta"]

K1_SERIES_CROSSOVER = 2.0
K1_SERIES_TERMS = 30
ZETA_MAX_TERMS = 200_000
# Imaginary residue of alpha that is logged
ALPHA_WARNING_LEVEL = 1e-8


def _as_array(x) -> tuple[np.ndarray, bool]:
    values = np.asarray(x, dtype=float)
    return values, values.ndim == 0


def _finish(values: np.ndarray, scalar: bool):
    return values.item() if scalar else values


def pole_mask(values: np.ndarray, periodic: bool, on_node: OnNode, what: str) -> np.ndarray:
    """
    Flag points within POLE_TOLERANCE of a kernel pole.

    Poles are the multiples of 2 pi for periodic kernels and 0 otherwise.

    Raises:
        SingularityError: If a point is flagged and on_node is ``"raise"``
    """
    reduced = np.asarray(reduce_angle(values)) if periodic else values
    mask = np.abs(reduced) <= settings.POLE_TOLERANCE
    if on_node == "raise" and np.any(mask):
        bad = float(values[mask].flat[0])
        nearest = TWO_PI * round(bad / TWO_PI) if periodic else 0.0
        raise SingularityError(
            f"{what} has a pole at {nearest:.17g}; x={bad:.17g} is within the pole tolerance",
            location=bad,
            nearest=nearest,
        )
    return mask


def periodic_hilbert_kernel(x, on_node: OnNode = "raise"):
    """
    Kernel (1/2 pi) cot(x/2) of the periodic Hilbert transform.

    Raises:
        SingularityError: Near a multiple of 2 pi
    """
    values, scalar = _as_array(x)
    mask = pole_mask(values, True, on_node, "periodic Hilbert kernel")
    with np.errstate(divide="ignore", invalid="ignore"):
        result = 1.0 / (TWO_PI * np.tan(values / 2.0))
    return _finish(np.where(mask, np.nan, result), scalar)


def hilbert_kernel_from_clausen(x, on_node: OnNode = "raise"):
    """The same kernel written as 2 Cl_0(x)/(2 pi)."""
    return np.asarray(clausen_order_zero(x, on_node=on_node)) * 2.0 / TWO_PI


def hilbert_symbol(k):
    """Fourier multiplier -i sign(k) of the periodic Hilbert transform, 0 at k = 0."""
    values = np.asarray(k)
    result = -1j * np.sign(values).astype(complex)
    return result.item() if values.ndim == 0 else result


def bo_generator_symbol(k):
    """
    Symbol of u -> H[u_xx], i.e. hilbert_symbol(k) * (-k^2) = i k^2 sign(k).

    This is i omega_BO(k), consistent with modes evolving as exp(i(kx - omega t)).
    """
    values = np.asarray(k, dtype=float)
    result = np.asarray(hilbert_symbol(values)) * -(values**2)
    return result.item() if values.ndim == 0 else result


def _eisenstein_e2(nome: float) -> float:
    """E_2 = 1 - 24 sum n q^{2n} / (1 - q^{2n})."""
    q2 = nome * nome
    terms = []
    n = 1
    while n < ZETA_MAX_TERMS:
        power = q2**n
        term = n * power / (1.0 - power)
        terms.append(term)
        if term < 1e-18 * max(1.0, math.fsum(terms)):
            break
        n += 1
    else:
        raise ConvergenceError(f"E_2 series did not converge for nome {nome}")
    return 1.0 - 24.0 * math.fsum(terms)


def ilw_kernel_spec(delta: float, N: int = 400) -> ILWKernelSpec:
    """
    Build the ILW kernel parameters, computing alpha = eta_1/omega_1.

    eta_1 = pi^2 E_2 / (12 omega_1) with omega_1 = -i delta; the arithmetic is
    done in complex numbers and the imaginary residue is only logged.

    Args:
        delta: Depth, delta > 0
        N: Symmetric truncation of the coth sum

    Returns:
        ILWKernelSpec
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    omega_1 = complex(0.0, -delta)
    nome = math.exp(-PI * PI / delta)
    eta_1 = PI * PI * _eisenstein_e2(nome) / (12.0 * omega_1)
    alpha = eta_1 / omega_1
    if abs(alpha.imag) > ALPHA_WARNING_LEVEL:
        logger.warning(f"alpha has imaginary residue {alpha.imag:.3e} at delta={delta:g}")
    logger.debug(f"ILW kernel constant alpha={alpha.real:.17g} at delta={delta:g}")
    return ILWKernelSpec(delta=delta, alpha=alpha, N=N)


def _coth_sum(spec: ILWKernelSpec, values: np.ndarray) -> np.ndarray:
    delta = spec.delta
    y = PI * values / (2.0 * delta)
    step = PI * PI / delta
    n = np.arange(1, spec.N + 1, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        centre = 1.0 / np.tanh(y)
        pairs = 1.0 / np.tanh(y[..., None] + step * n) + 1.0 / np.tanh(y[..., None] - step * n)
    last = np.abs(pairs[..., -1]) / (2.0 * delta)
    finite = np.isfinite(last)
    if np.any(last[finite] > settings.KERNEL_SERIES_TOLERANCE):
        raise ConvergenceError(
            f"coth sum with N={spec.N} misses tolerance "
            f"{settings.KERNEL_SERIES_TOLERANCE:g} at delta={delta:g}: "
            f"last pair {float(np.max(last[finite])):.3e}"
        )
    return -(centre + pairs.sum(axis=-1)) / (2.0 * delta)


def weierstrass_zeta(spec: ILWKernelSpec, z):
    """
    Weierstrass zeta of the lattice omega_1 = -i delta, omega_3 = pi at real z.

    On (-pi, pi] the nome expansion

        zeta(z) = eta_1 z/omega_1 + (pi/(2 omega_1)) cot(pi z/(2 omega_1))
                  + (2 pi/omega_1) sum q^{2n}/(1 - q^{2n}) sin(n pi z/omega_1)

    is used; elsewhere zeta(z + 2 m omega_3) = zeta(z) + 2 m eta_3 with eta_3
    from the Legendre relation eta_1 omega_3 - eta_3 omega_1 = i pi/2.

    Raises:
        ConvergenceError: If the nome series needs more than ZETA_MAX_TERMS terms
    """
    values, scalar = _as_array(z)
    omega_1 = complex(0.0, -spec.delta)
    omega_3 = PI
    eta_1 = spec.alpha * omega_1
    eta_3 = (eta_1 * omega_3 - 0.5j * PI) / omega_1

    reduced = np.asarray(reduce_angle(values))
    periods = np.rint((values - reduced) / TWO_PI)

    u = PI * reduced / omega_1
    with np.errstate(divide="ignore", invalid="ignore"):
        result = eta_1 * reduced / omega_1 + (PI / (2.0 * omega_1)) / np.tan(u / 2.0)

    # |q^{2n} sinh(n pi x/delta)| <= exp(-n pi^2/delta) on the strip
    ratio = math.exp(-PI * PI / spec.delta)
    target = settings.KERNEL_SERIES_TOLERANCE * spec.delta * (1.0 - ratio) / 4.0
    terms = math.ceil(math.log(target) / math.log(ratio))
    terms = max(terms, 1)
    if terms > ZETA_MAX_TERMS:
        raise ConvergenceError(
            f"nome series needs {terms} terms at delta={spec.delta:g}, "
            f"more than {ZETA_MAX_TERMS}"
        )
    q2 = spec.nome**2
    correction = np.zeros(values.shape, dtype=complex)
    for n in range(1, terms + 1):
        power = q2**n
        correction = correction + power / (1.0 - power) * np.sin(n * u)
    result = result + (2.0 * PI / omega_1) * correction + 2.0 * periods * eta_3
    return _finish(result, scalar)


def ilw_kernel(spec: ILWKernelSpec, x, method: Method = "coth_sum", on_node: OnNode = "raise"):
    """
    ILW kernel C_delta(x).

    Args:
        spec: Kernel parameters from ilw_kernel_spec
        x: Scalar or array of points
        method: ``"coth_sum"`` for the symmetric coth sum |n| <= N or
            ``"zeta"`` for (1/pi) [alpha x - zeta(x)]
        on_node: Handling of points near 2 pi Z

    Returns:
        Real kernel values with the shape of x; C(x + 2 pi) = C(x) - 1/delta

    Raises:
        SingularityError: Near a multiple of 2 pi
        ConvergenceError: If the truncation misses KERNEL_SERIES_TOLERANCE
    """
    values, scalar = _as_array(x)
    mask = pole_mask(values, True, on_node, "ILW kernel")
    safe = np.where(mask, PI, values)
    if method == "coth_sum":
        result = _coth_sum(spec, safe)
    elif method == "zeta":
        zeta_values = np.asarray(weierstrass_zeta(spec, safe))
        result = ((spec.alpha * safe - zeta_values) / PI).real
    else:
        raise ValueError(f"unknown ILW kernel method '{method}'")
    return _finish(np.where(mask, np.nan, result), scalar)


def ilw_kernel_bo_limit_gap(delta: float, x, N: int = 400):
    """
    |C_delta(x) + (1/2 pi) cot(x/2)|, the distance to the deep-water limit.

    The gap behaves like |x|/(2 pi delta) on (-pi, pi).
    """
    spec = ilw_kernel_spec(delta, N)
    return np.abs(
        np.asarray(ilw_kernel(spec, x)) + np.asarray(periodic_hilbert_kernel(x))
    ).astype(float)


def _bessel_i1_and_series(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    I_1(x) and sum_k [psi(k+1) + psi(k+2)] (x^2/4)^k / (k! (k+1)!).
    """
    quarter = x * x / 4.0
    term = np.ones_like(x)
    i1_sum = np.zeros_like(x)
    psi_sum = np.zeros_like(x)
    for k in range(K1_SERIES_TERMS):
        if k > 0:
            term = term * quarter / (k * (k + 1))
        i1_sum = i1_sum + term
        psi_sum = psi_sum + (digamma(k + 1) + digamma(k + 2)) * term
    return x / 2.0 * i1_sum, psi_sum


def bessel_k1(x):
    """
    Modified Bessel function of the second kind K_1(x) for x > 0.

    For x <= 2 the power series

        K_1(x) = 1/x + ln(x/2) I_1(x) - (x/4) sum [psi(k+1) + psi(k+2)] (x^2/4)^k / (k! (k+1)!)

    is summed; above that scipy's exponentially scaled k1e is used.

    Raises:
        ValueError: If any x <= 0
    """
    values, scalar = _as_array(x)
    if np.any(values <= 0.0) or np.any(np.isnan(values)):
        raise ValueError("K_1 is defined for x > 0")
    small = values <= K1_SERIES_CROSSOVER
    near = np.where(small, values, 1.0)
    i1, psi_sum = _bessel_i1_and_series(near)
    series = 1.0 / near + np.log(near / 2.0) * i1 - near / 4.0 * psi_sum
    large = k1e(values) * np.exp(-values)
    return _finish(np.where(small, series, large), scalar)


def bessel_k1_asymptotic(x, terms: int = 6):
    """
    Large-argument expansion sqrt(pi/(2x)) e^{-x} sum_k a_k / x^k.

    a_k = (4 - 1)(4 - 9)...(4 - (2k-1)^2) / (k! 8^k).
    """
    values, scalar = _as_array(x)
    if np.any(values <= 0.0):
        raise ValueError("K_1 is defined for x > 0")
    total = np.zeros_like(values)
    coefficient = 1.0
    for k in range(terms):
        if k > 0:
            coefficient *= (4.0 - (2 * k - 1) ** 2) / (k * 8.0)
        total = total + coefficient / values**k
    result = np.sqrt(PI / (2.0 * values)) * np.exp(-values) * total
    return _finish(result, scalar)


def bessel_k1_integral(x: float) -> float:
    """K_1(x) = int_0^inf exp(-x cosh t) cosh t dt by adaptive quadrature."""
    if x <= 0:
        raise ValueError("K_1 is defined for x > 0")
    # beyond x cosh t = 800 the integrand underflows
    upper = math.acosh(max(2.0, 800.0 / x))
    value, error = integrate.quad(
        lambda t: math.exp(-x * math.cosh(t)) * math.cosh(t),
        0.0,
        upper,
        epsabs=0.0,
        epsrel=1e-13,
        limit=200,
    )
    if error > 1e-10 * abs(value):
        raise ConvergenceError(f"K_1 quadrature at x={x} has error estimate {error:.3e}")
    return value


def smith_kernel_line(delta: float, x, on_node: OnNode = "raise"):
    """Smith kernel on the line, -(i/(pi sqrt(delta))) K_1(|x|/sqrt(delta)) / |x|."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    values, scalar = _as_array(x)
    mask = pole_mask(values, False, on_node, "Smith kernel")
    distance = np.abs(np.where(mask, 1.0, values))
    root = math.sqrt(delta)
    magnitude = np.asarray(bessel_k1(distance / root)) / distance / (PI * root)
    result = np.where(mask, complex(np.nan, np.nan), -1j * magnitude)
    return _finish(result, scalar)


def smith_kernel_periodic(delta: float, x, N: int = 10, on_node: OnNode = "raise"):
    """
    Periodised Smith kernel with symmetric truncation |n| <= N.

    Every summand is -i times a positive number, so the value is purely
    imaginary. Images decay like exp(-2 pi |n|/sqrt(delta)).

    Raises:
        SingularityError: Near a multiple of 2 pi
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    values, scalar = _as_array(x)
    mask = pole_mask(values, True, on_node, "periodic Smith kernel")
    safe = np.where(mask, PI, values)
    n = np.arange(-N, N + 1, dtype=float)
    distance = np.abs(safe[..., None] + TWO_PI * n)
    root = math.sqrt(delta)
    images = np.asarray(bessel_k1(distance / root)) / distance
    # smallest images first
    order = np.argsort(np.abs(n))[::-1]
    magnitude = images[..., order].sum(axis=-1) / (PI * root)
    result = np.where(mask, complex(np.nan, np.nan), -1j * magnitude)
    return _finish(result, scalar)


def verify_appendix_ft(a: float, x: float, k_cut: float = 500.0) -> tuple[float, float, float]:
    """
    Check the inverse Fourier transform of a^2 (k^2 + a^2)^{-3/2}.

    lhs = (2/sqrt(2 pi)) int_0^{k_cut} a^2 cos(k x) (k^2 + a^2)^{-3/2} dk
    rhs = sqrt(2/pi) a |x| K_1(a |x|)

    The neglected tail is below a^2 / (sqrt(2 pi) k_cut^2).

    Args:
        a: Positive scale
        x: Non-zero point
        k_cut: Quadrature cut-off

    Returns:
        Tuple (lhs, rhs, abs_err)

    Raises:
        ConvergenceError: If the quadrature error estimate exceeds 1e-7
    """
    if a <= 0:
        raise ValueError(f"a must be positive, got {a}")
    if x == 0:
        raise ValueError("the identity is checked at x != 0")
    integral, error = integrate.quad(
        lambda k: a * a * (k * k + a * a) ** -1.5,
        0.0,
        k_cut,
        weight="cos",
        wvar=abs(x),
        limit=500,
    )
    if error > 1e-7:
        raise ConvergenceError(f"Fourier quadrature error estimate {error:.3e} at a={a}, x={x}")
    lhs = 2.0 / math.sqrt(TWO_PI) * integral
    rhs = math.sqrt(2.0 / PI) * a * abs(x) * float(bessel_k1(a * abs(x)))
    logger.debug(f"Fourier check a={a:g}, x={x:g}: lhs={lhs:.12g}, rhs={rhs:.12g}")
    return lhs, rhs, abs(lhs - rhs)


def tabulate_kernel(
    kind: KernelKind,
    x,
    delta: float | None = None,
    nterms: int | None = None,
) -> list[KernelSample]:
    """
    Sample a kernel on points, flagging poles instead of raising.

    Args:
        kind: hilbert, ilw or smith
        x: Sample points
        delta: Depth, required for ilw and smith
        nterms: Truncation N for ilw (default 400) and smith (default 10)

    Returns:
        One KernelSample per point
    """
    values = np.atleast_1d(np.asarray(x, dtype=float))
    if kind is not KernelKind.HILBERT and delta is None:
        raise ValueError(f"delta is required for the {kind} kernel")
    if kind is KernelKind.HILBERT:
        result = np.asarray(periodic_hilbert_kernel(values, on_node="nan"))
    elif kind is KernelKind.ILW:
        spec = ilw_kernel_spec(delta, nterms or 400)
        result = np.asarray(ilw_kernel(spec, values, on_node="nan"))
    else:
        result = np.asarray(smith_kernel_periodic(delta, values, nterms or 10, on_node="nan"))

    flags = np.asarray(pole_mask(values, True, "nan", kind.value))
    samples = []
    for point, value, flag in zip(values.tolist(), result.tolist(), flags.tolist(), strict=True):
        samples.append(
            KernelSample(x=point, value=None if flag else value, pole_proximity_flag=flag)
        )
    return samples
