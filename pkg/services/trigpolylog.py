"""
Trigonometric polylogarithms and Clausen functions.

S^k_{j,r}(x) and C^k_{j,r}(x) are the imaginary and real parts of

    E^k_{j,r}(x) = sum_{n>=0} exp(i(nk+j)x) / (nk+j)^r.

Filtering the residue class j modulo k with the k-th roots of unity gives the
closed form

    E^k_{j,r}(x) = (1/k) sum_{l=0}^{k-1} exp(-2 pi i j l/k) Li_r(exp(i(x + 2 pi l/k)))

so every evaluation reduces to polylogarithms on the unit circle, i.e. to the
Clausen (Cl_r) and Glaisher-Clausen (Sl_r) functions. Orders 1 to 3 are
supported:

- order 1: Sl_1 is a sawtooth, Cl_1 = -log|2 sin(x/2)|
- order 2: Sl_2 is a quadratic in |x|, Cl_2 comes from the unit-circle series
- order 3: Sl_3 is a cubic (odd), Cl_3 comes from the unit-circle series

Li_r(exp(iy)) for r >= 2 is evaluated from its expansion around y = 0,

    sum_{m != r-1} zeta(r-m) (iy)^m / m! + (iy)^(r-1)/(r-1)! (H_{r-1} - log(-iy)),

which converges on |y| < 2 pi; after reduction to (-pi, pi] about 70 terms
reach double precision. The zeta values come from mpmath and are cached.

All evaluators accept scalars or numpy arrays. Order-one functions are
singular or discontinuous at the nodes 2*pi*l/k; points closer than
``NODE_TOLERANCE_FACTOR * 2*pi/k`` raise ``SingularityError`` unless
``on_node="nan"`` is passed.
"""

import math
from functools import lru_cache
from typing import Literal

import mpmath
import numpy as np

from config import settings
from models.polylog import (
    CotTerm,
    CuspSign,
    DeltaTerm,
    DerivativeDecomposition,
    Family,
    NodeBehaviour,
    NodeSet,
    PolylogIndex,
    Singularity,
)
from services.errors import InvalidOrderError, SingularityError
from utils.logging import get_logger

logger = get_logger(__name__)

PI = math.pi
TWO_PI = 2.0 * math.pi
# 2*pi as a double plus the rounding error of that double
TWO_PI_HI = 6.283185307179586
TWO_PI_LO = 2.4492935982947064e-16

MAX_ORDER = 3
UNIT_CIRCLE_TERMS = 72
SERIES_BLOCK_ELEMENTS = 1 << 20

OnNode = Literal["raise", "nan"]


def _as_array(x) -> tuple[np.ndarray, bool]:
    values = np.asarray(x, dtype=float)
    return values, values.ndim == 0


def _finish(values: np.ndarray, scalar: bool):
    if scalar:
        value = values.item()
        return value
    return values


def _check_order(r: int) -> None:
    if r < 1 or r > MAX_ORDER:
        raise InvalidOrderError(
            f"Order r={r} is not supported; orders 1 to {MAX_ORDER} are available"
        )


def reduce_angle(x):
    """
    Reduce angles to (-pi, pi].

    The nearest multiple of 2*pi is subtracted in two steps (the double
    nearest 2*pi, then its rounding error) so large arguments keep their
    low-order bits.

    Args:
        x: Scalar or array of angles

    Returns:
        Reduced angles with the same shape
    """
    values, scalar = _as_array(x)
    m = np.rint(values / TWO_PI)
    reduced = (values - m * TWO_PI_HI) - m * TWO_PI_LO
    reduced = np.where(reduced <= -PI, reduced + TWO_PI, reduced)
    reduced = np.where(reduced > PI, reduced - TWO_PI, reduced)
    return _finish(reduced, scalar)


def node_distance(x, k: int):
    """
    Distance from x to the nearest node 2*pi*l/k.

    Args:
        x: Scalar or array of points
        k: Node modulus

    Returns:
        Non-negative distances with the shape of x
    """
    values, scalar = _as_array(x)
    turns = values * (k / TWO_PI)
    distance = np.abs(turns - np.rint(turns)) * (TWO_PI / k)
    return _finish(distance, scalar)


def near_node_mask(values: np.ndarray, k: int, on_node: OnNode, what: str) -> np.ndarray:
    """
    Flag points within node tolerance of a node of modulus k.

    Args:
        values: Evaluation points
        k: Node modulus
        on_node: ``"raise"`` to reject flagged points, ``"nan"`` to return them
        what: Name of the evaluated function for the error message

    Returns:
        Boolean mask of flagged points

    Raises:
        SingularityError: If a point is flagged and on_node is ``"raise"``
    """
    spacing = TWO_PI / k
    distance = np.asarray(node_distance(values, k))
    mask = distance <= settings.NODE_TOLERANCE_FACTOR * spacing
    if on_node == "raise" and np.any(mask):
        bad = float(np.asarray(values)[mask].flat[0])
        nearest = spacing * round(bad / spacing)
        raise SingularityError(
            f"{what} is singular at the node {nearest:.17g}; "
            f"x={bad:.17g} lies within the node tolerance",
            location=bad,
            nearest=nearest,
        )
    return mask


@lru_cache(maxsize=None)
def _unit_circle_coefficients(r: int) -> tuple[np.ndarray, float]:
    """Taylor coefficients zeta(r-m)/m! (0 at m = r-1) and H_{r-1}."""
    coefficients = np.zeros(UNIT_CIRCLE_TERMS)
    for m in range(UNIT_CIRCLE_TERMS):
        if m != r - 1:
            coefficients[m] = float(mpmath.zeta(r - m) / mpmath.factorial(m))
    coefficients.setflags(write=False)
    harmonic = float(mpmath.harmonic(r - 1))
    logger.debug(
        f"Cached {UNIT_CIRCLE_TERMS} unit-circle polylog coefficients for order {r}"
    )
    return coefficients, harmonic


def _li_unit_circle(r: int, y: np.ndarray) -> np.ndarray:
    """Li_r(exp(iy)) for r >= 2 and y already reduced to (-pi, pi]."""
    coefficients, harmonic = _unit_circle_coefficients(r)
    z = 1j * y
    total = np.zeros(np.shape(y), dtype=complex)
    for coefficient in coefficients[::-1]:
        total = total * z + coefficient

    magnitude = np.abs(y)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_term = np.log(np.where(magnitude > 0.0, magnitude, 1.0)) - 0.5j * PI * np.sign(y)
    singular = z ** (r - 1) / math.factorial(r - 1) * (harmonic - log_term)
    return total + np.where(magnitude > 0.0, singular, 0.0)


def _unit_circle_pair(r: int, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Return (sum cos(ny)/n^r, sum sin(ny)/n^r) for reduced y.

    Order-one cosine sums are infinite at y = 0; callers mask those points.
    """
    if r == 1:
        with np.errstate(divide="ignore"):
            cos_sum = -np.log(np.abs(2.0 * np.sin(y / 2.0)))
        sin_sum = (np.sign(y) * PI - y) / 2.0
        return cos_sum, sin_sum
    if r == 2:
        magnitude = np.abs(y)
        cos_sum = y * y / 4.0 - PI * magnitude / 2.0 + PI * PI / 6.0
        sin_sum = _li_unit_circle(2, y).imag
        return cos_sum, sin_sum
    magnitude = np.abs(y)
    sin_sum = np.sign(y) * (
        PI * PI * magnitude / 6.0 - PI * magnitude**2 / 4.0 + magnitude**3 / 12.0
    )
    cos_sum = _li_unit_circle(3, y).real
    return cos_sum, sin_sum


def polylog_unit_circle(r: int, x, on_node: OnNode = "raise"):
    """
    Evaluate Li_r(exp(ix)) for real x.

    Args:
        r: Order, 1 to 3
        x: Scalar or array of real arguments
        on_node: Handling of x in 2*pi*Z for r = 1

    Returns:
        Complex value(s) sum cos(nx)/n^r + i sum sin(nx)/n^r

    Raises:
        InvalidOrderError: If r is outside 1 to 3
        SingularityError: For r = 1 at a multiple of 2*pi
    """
    _check_order(r)
    values, scalar = _as_array(x)
    mask = (
        near_node_mask(values, 1, on_node, "Li_1(exp(ix))")
        if r == 1
        else np.zeros(values.shape, dtype=bool)
    )
    cos_sum, sin_sum = _unit_circle_pair(r, np.asarray(reduce_angle(values)))
    result = np.where(mask, complex(np.nan, np.nan), cos_sum + 1j * sin_sum)
    return _finish(result, scalar)


def glaisher_sl(r: int, x):
    """
    Glaisher-Clausen function Sl_r.

    Sl_1(x) = (sign(x) pi - x)/2, Sl_2(x) = x^2/4 - pi|x|/2 + pi^2/6 and
    Sl_3(x) = pi^2 x/6 - pi x^2/4 + x^3/12 on (0, 2 pi), all after
    reduction to (-pi, pi]. sign(0) = 0, so Sl_1(0) = 0.

    Args:
        r: Order, 1 to 3
        x: Scalar or array of real arguments

    Returns:
        Sl_r(x) with the shape of x

    Raises:
        InvalidOrderError: If r is outside 1 to 3
    """
    _check_order(r)
    values, scalar = _as_array(x)
    y = np.asarray(reduce_angle(values))
    if r == 1:
        result = (np.sign(y) * PI - y) / 2.0
    elif r == 2:
        result = y * y / 4.0 - PI * np.abs(y) / 2.0 + PI * PI / 6.0
    else:
        result = _unit_circle_pair(3, y)[1]
    return _finish(result, scalar)


def clausen_cl(r: int, x, on_node: OnNode = "raise"):
    """
    Clausen function Cl_r.

    Cl_1(x) = -log|2 sin(x/2)|, Cl_2(x) = sum sin(nx)/n^2 and
    Cl_3(x) = sum cos(nx)/n^3, the latter two from the unit-circle
    expansion of Li_r.

    Args:
        r: Order, 1 to 3
        x: Scalar or array of real arguments
        on_node: Handling of Cl_1 at multiples of 2*pi

    Returns:
        Cl_r(x) with the shape of x

    Raises:
        InvalidOrderError: If r is outside 1 to 3
        SingularityError: For r = 1 at a multiple of 2*pi
    """
    _check_order(r)
    values, scalar = _as_array(x)
    y = np.asarray(reduce_angle(values))
    if r == 1:
        mask = near_node_mask(values, 1, on_node, "Cl_1")
        cos_sum, _ = _unit_circle_pair(1, y)
        result = np.where(mask, np.nan, cos_sum)
    elif r == 2:
        result = _li_unit_circle(2, y).imag
    else:
        result = _li_unit_circle(3, y).real
    return _finish(result, scalar)


def clausen_order_zero(x, on_node: OnNode = "raise"):
    """
    Order-zero Clausen function Cl_0(x) = cot(x/2)/2.

    It is the smooth part of the derivative of -Cl_1.
    """
    values, scalar = _as_array(x)
    mask = near_node_mask(values, 1, on_node, "Cl_0")
    with np.errstate(divide="ignore", invalid="ignore"):
        result = 0.5 / np.tan(values / 2.0)
    return _finish(np.where(mask, np.nan, result), scalar)


def eval_trig_polylog(idx: PolylogIndex, x, on_node: OnNode = "raise"):
    """
    Evaluate (S^k_{j,r}(x), C^k_{j,r}(x)) from the closed forms.

    Args:
        idx: Polylogarithm index with order 1 to 3
        x: Scalar or array of real arguments
        on_node: Handling of points near a node for order one

    Returns:
        Tuple (S, C), each a float or an array with the shape of x

    Raises:
        InvalidOrderError: If idx.r exceeds 3
        SingularityError: For order one near a node 2*pi*l/k
    """
    _check_order(idx.r)
    values, scalar = _as_array(x)
    if idx.r == 1:
        mask = near_node_mask(values, idx.k, on_node, f"S/C^{idx.k}_{idx.j},1")
    else:
        mask = np.zeros(values.shape, dtype=bool)

    offsets = np.arange(idx.k)
    theta = TWO_PI * ((idx.j * offsets) % idx.k) / idx.k
    cos_theta, sin_theta = np.cos(theta), np.sin(theta)
    y = np.asarray(reduce_angle(values[..., None] + TWO_PI * offsets / idx.k))

    with np.errstate(invalid="ignore"):
        cos_sum, sin_sum = _unit_circle_pair(idx.r, y)
        s_value = (cos_theta * sin_sum - sin_theta * cos_sum).sum(axis=-1) / idx.k
        c_value = (cos_theta * cos_sum + sin_theta * sin_sum).sum(axis=-1) / idx.k

    s_value = np.where(mask, np.nan, s_value)
    c_value = np.where(mask, np.nan, c_value)
    return _finish(s_value, scalar), _finish(c_value, scalar)


def series_partial_sum(idx: PolylogIndex, x, N: int):
    """
    Partial sum sum_{n=0}^{N} exp(i(nk+j)x) / (nk+j)^r.

    This is the independent oracle for the closed forms: the imaginary part
    approximates S^k_{j,r}(x) and the real part C^k_{j,r}(x). The sum is
    finite everywhere, including at the nodes. Terms are accumulated in
    ascending n, block by block.

    Args:
        idx: Polylogarithm index (any order)
        x: Scalar or array of real arguments
        N: Last summation index, N >= 0

    Returns:
        Complex partial sum(s) with the shape of x
    """
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    values, scalar = _as_array(x)
    flat = values.reshape(-1)
    total = np.zeros(flat.shape, dtype=complex)
    block = max(1, SERIES_BLOCK_ELEMENTS // max(1, flat.size))

    for start in range(0, N + 1, block):
        stop = min(N + 1, start + block)
        m = (idx.j + idx.k * np.arange(start, stop)).astype(float)
        terms = np.exp(1j * np.multiply.outer(flat, m)) / m**idx.r
        total += terms.sum(axis=-1)

    logger.debug(
        f"Series partial sum for (j={idx.j}, k={idx.k}, r={idx.r}) "
        f"with N={N} at {flat.size} points"
    )
    return _finish(total.reshape(values.shape), scalar)


def node_set(k: int) -> NodeSet:
    """
    Nodes 2*pi*l/k in [-pi, pi].

    Args:
        k: Modulus, k >= 1

    Returns:
        NodeSet with nodes sorted ascending
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    half = k // 2
    return NodeSet(
        k=k, nodes=tuple(TWO_PI * m / k for m in range(-half, half + 1))
    )


def _cusp(factor: float) -> CuspSign:
    if abs(factor) <= settings.CUSP_ZERO_TOLERANCE:
        return CuspSign.NONE
    return CuspSign.UP if factor > 0 else CuspSign.DOWN


def node_behaviour(idx: PolylogIndex, l: int, family: Family) -> NodeBehaviour:  # noqa: E741
    """
    Classify the node x = 2*pi*l/k.

    Order one: S jumps by (pi/k) cos(2 pi j l/k) and has a logarithmic cusp
    pointing up when sin(2 pi j l/k) > 0; C jumps by -(pi/k) sin(2 pi j l/k)
    and its cusp points up when cos(2 pi j l/k) > 0. Jumps are right limit
    minus left limit.

    Order two: S has a point of infinite gradient when cos(2 pi j l/k) != 0
    and a corner otherwise; C has one when sin(2 pi j l/k) != 0 and a
    corner otherwise.

    Args:
        idx: Polylogarithm index of order 1 or 2
        l: Node index
        family: S or C

    Returns:
        NodeBehaviour for the node

    Raises:
        InvalidOrderError: If idx.r is not 1 or 2
    """
    if idx.r not in (1, 2):
        raise InvalidOrderError(f"Node behaviour is defined for r in (1, 2), got {idx.r}")

    angle = TWO_PI * ((idx.j * l) % idx.k) / idx.k
    cos_angle, sin_angle = math.cos(angle), math.sin(angle)
    tolerance = settings.CUSP_ZERO_TOLERANCE

    if idx.r == 1:
        if family is Family.S:
            jump, cusp = (PI / idx.k) * cos_angle, _cusp(sin_angle)
        else:
            jump, cusp = -(PI / idx.k) * sin_angle, _cusp(cos_angle)
        singularity = Singularity.JUMP_CUSP
    else:
        # The derivative is an order-one function of the other family
        factor = cos_angle if family is Family.S else sin_angle
        jump, cusp = 0.0, CuspSign.NONE
        singularity = (
            Singularity.INFINITE_GRADIENT
            if abs(factor) > tolerance
            else Singularity.CORNER
        )

    return NodeBehaviour(
        index=idx,
        node_index=l,
        family=family,
        location=TWO_PI * l / idx.k,
        jump_height=jump,
        cusp_sign=cusp,
        singularity=singularity,
    )


def canonical_node(m: int, k: int) -> float:
    """Location of the node 2*pi*m/k mapped into [-pi, pi)."""
    residue = m % k
    if 2 * residue >= k:
        residue -= k
    return TWO_PI * residue / k


def distributional_derivative(idx: PolylogIndex, family: Family) -> DerivativeDecomposition:
    """
    Distributional derivative of an order-one trigonometric polylogarithm.

    For l = 1..k, with theta_l = 2 pi j l/k and node -2 pi l/k:

    - S: deltas (pi/k) cos(theta_l), cot weights sin(theta_l)/(2k) at shift
      pi l/k, constant -1/2 when j = k and 0 otherwise
    - C: deltas (pi/k) sin(theta_l), cot weights -cos(theta_l)/(2k), constant 0

    Cotangent terms with vanishing weight are omitted, so S^k_k carries no
    cotangents.

    Args:
        idx: Polylogarithm index of order 1
        family: S or C

    Returns:
        The derivative decomposition

    Raises:
        InvalidOrderError: If idx.r is not 1
    """
    if idx.r != 1:
        raise InvalidOrderError(
            f"Distributional derivatives are built for order 1, got {idx.r}"
        )

    k, j = idx.k, idx.j
    tolerance = settings.CUSP_ZERO_TOLERANCE
    delta_terms, cot_terms = [], []
    for node in range(1, k + 1):
        angle = TWO_PI * ((j * node) % k) / k
        if family is Family.S:
            delta_weight = (PI / k) * math.cos(angle)
            cot_weight = math.sin(angle) / (2 * k)
        else:
            delta_weight = (PI / k) * math.sin(angle)
            cot_weight = -math.cos(angle) / (2 * k)
        delta_terms.append(
            DeltaTerm(location=canonical_node(-node, k), weight=delta_weight)
        )
        if abs(cot_weight) > tolerance:
            cot_terms.append(CotTerm(shift=PI * (node % k) / k, weight=cot_weight))

    constant = -0.5 if family is Family.S and j == k else 0.0
    return DerivativeDecomposition(
        delta_terms=tuple(delta_terms), cot_terms=tuple(cot_terms), constant=constant
    )


def pairwise_sum_profile(j: int, k: int, x, on_node: OnNode = "raise"):
    """
    Evaluate S^k_j(x) + S^k_{k-j}(x) for order one.

    The cusps of the two terms cancel, leaving a function that is constant on
    every interval (m pi/k, (m+1) pi/k).

    Args:
        j: Residue class, 1 <= j <= k-1
        k: Modulus
        x: Scalar or array away from the points m*pi/k
        on_node: Handling of points near m*pi/k

    Returns:
        The sum with the shape of x

    Raises:
        ValueError: If j is outside 1..k-1
        SingularityError: Near a point m*pi/k
    """
    if not 1 <= j <= k - 1:
        raise ValueError(f"j must satisfy 1 <= j <= k-1, got j={j}, k={k}")
    values, scalar = _as_array(x)
    mask = near_node_mask(values, 2 * k, on_node, f"S^{k}_{j} + S^{k}_{k - j}")
    first, _ = eval_trig_polylog(PolylogIndex(j=j, k=k, r=1), values, on_node="nan")
    second, _ = eval_trig_polylog(PolylogIndex(j=k - j, k=k, r=1), values, on_node="nan")
    result = np.where(mask, np.nan, np.asarray(first) + np.asarray(second))
    return _finish(result, scalar)
