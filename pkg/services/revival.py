"""
Closed-form revival profiles at rational times t = p*pi/q.

At a rational time every Fourier mode n of the Riemann step picks up a BO or
KdV phase that only depends on n mod 2q, so the evolved step collapses to a
finite sum of order-one trigonometric polylogarithms of modulus 2q:

    BO:   1/2 + (2/pi) sum_j S^{2q}_{2j+1}(x - (2j+1) p pi/q)
    KdV:  1/2 + (2/pi) sum_j S^{2q}_{2j+1}(x - (2j+1)^2 p pi/q)

ILW is the BO profile advected by t/delta, with a certified residual bound,
and Smith adds cos/sin prefactors and order-three corrections from the
Taylor expansion of its phase. Fundamental solutions are the derivatives of
the evolved integrated delta, assembled from the structured derivatives of
the order-one polylogarithms.
"""

import math

import numpy as np
from scipy.special import zeta

from config import settings
from models.dispersion import GAP_ENVELOPE_CONSTANT, DispersionSpec, Equation
from models.evolution import FourierInitialData, Preset, RationalTime
from models.polylog import CotTerm, DeltaTerm, Family, PolylogIndex
from models.revival import FundamentalDecomposition, PolylogTerm, RevivalProfile
from services import dispersion
from services.errors import SingularityError
from services.trigpolylog import (
    PI,
    TWO_PI,
    OnNode,
    distributional_derivative,
    eval_trig_polylog,
    near_node_mask,
    node_set,
    reduce_angle,
)
from utils.logging import get_logger

logger = get_logger(__name__)

# ILW residual certificate: modes beyond 2 delta k >= this are below e^-60
ILW_BOUND_EXPONENT = 60.0
ILW_BOUND_MAX_MODES = 2_000_000
MERGE_DIGITS = 12


def _shift(time: RationalTime, residue: int) -> float:
    """pi * (residue * p mod 2q) / q, the translate of a mode class."""
    modulus = 2 * time.q
    return PI * ((residue * time.p) % modulus) / time.q


def _step_terms(time: RationalTime, degree: int, weight: float) -> list[PolylogTerm]:
    modulus = 2 * time.q
    terms = []
    for j in range(time.q):
        index = 2 * j + 1
        residue = pow(index, degree - 1, modulus)
        terms.append(
            PolylogTerm(
                family=Family.S,
                order=1,
                index=index,
                shift=_shift(time, residue),
                weight=weight,
            )
        )
    return terms


def ilw_profile_error_bound(time: RationalTime, delta: float) -> float:
    """
    Certified sup-norm bound on |u_ILW - ilw closed form| for the step.

    Mode n differs from the advected BO mode by the phase n^2 (coth(delta n) - 1) t,
    so each pair of modes +-n contributes at most 2 |b_n| min(2, |phase|).
    Modes with 2 delta n beyond ILW_BOUND_EXPONENT are summed with the
    envelope 2.1 n e^{-2 delta n} in closed form.

    Returns:
        The bound, or inf when delta is too small to certify
    """
    if time.p == 0:
        return 0.0
    t = time.t
    last = math.ceil(ILW_BOUND_EXPONENT / (2.0 * delta))
    if last > ILW_BOUND_MAX_MODES:
        logger.warning(
            f"ILW residual bound not certified for delta={delta:g}: "
            f"{last} modes would be required"
        )
        return math.inf

    step = FourierInitialData.riemann_step()
    k = step.modes_for(max(0, (last - 1) // 2))
    kf = k.astype(float)
    magnitude = np.abs(step.coefficients_for(k))
    gap = kf * kf * 2.0 * np.exp(-2.0 * delta * kf) / -np.expm1(-2.0 * delta * kf)
    per_mode = 2.0 * magnitude * np.minimum(2.0, gap * t)

    # sum_{n > K} 2 (1/(pi n)) 2.1 n^2 e^{-2 delta n} t <= geometric tail
    first = float(k[-1] + 2)
    ratio = math.exp(-4.0 * delta)
    tail = (
        2.0 * GAP_ENVELOPE_CONSTANT * t / math.pi * first * math.exp(-2.0 * delta * first)
        / (1.0 - ratio) ** 2
    )
    return math.fsum(per_mode) + tail


def smith_profile_error_bound(time: RationalTime, delta: float) -> float:
    """p zeta(5) / (2 q delta^3) * (1 + p pi / (8 q delta))."""
    p, q = time.p, time.q
    return p * float(zeta(5)) / (2.0 * q * delta**3) * (1.0 + p * PI / (8.0 * q * delta))


def profile_terms(
    spec: DispersionSpec, time: RationalTime, data: Preset = Preset.RIEMANN_STEP
) -> RevivalProfile:
    """
    Closed-form revival profile of the step (or the integrated delta under BO).

    Args:
        spec: Equation and depth
        time: Rational time p*pi/q
        data: RIEMANN_STEP for every equation, INTEGRATED_DELTA for BO only

    Returns:
        RevivalProfile with its terms, constant and error bound

    Raises:
        ValueError: For integrated delta data under a non-BO equation or
            custom data
    """
    modulus = 2 * time.q
    if data is Preset.INTEGRATED_DELTA:
        if spec.equation is not Equation.BO:
            raise ValueError("the integrated delta profile is available for BO only")
        terms = [
            PolylogTerm(
                family=Family.S, order=1, index=k, shift=_shift(time, k), weight=1.0 / PI
            )
            for k in range(1, modulus + 1)
        ]
        return RevivalProfile(
            spec=spec, time=time, data=data, modulus=modulus, terms=tuple(terms), constant=0.0
        )
    if data is not Preset.RIEMANN_STEP:
        raise ValueError(f"no closed-form profile for {data} initial data")

    weight = 2.0 / PI
    error_bound = 0.0
    if spec.equation is Equation.BO:
        terms = _step_terms(time, 2, weight)
    elif spec.equation is Equation.KDV:
        terms = _step_terms(time, 3, weight)
    elif spec.equation is Equation.ILW:
        advection = time.t / spec.delta
        terms = [
            term.model_copy(update={"shift": term.shift - advection})
            for term in _step_terms(time, 2, weight)
        ]
        error_bound = ilw_profile_error_bound(time, spec.delta)
    else:
        terms = _smith_terms(time, spec.delta)
        error_bound = smith_profile_error_bound(time, spec.delta)

    logger.debug(
        f"Built {spec.label} profile at t={time} with {len(terms)} terms, "
        f"error bound {error_bound:.3e}"
    )
    return RevivalProfile(
        spec=spec,
        time=time,
        data=data,
        modulus=modulus,
        terms=tuple(terms),
        constant=0.5,
        error_bound=error_bound,
    )


def _smith_terms(time: RationalTime, delta: float) -> list[PolylogTerm]:
    envelope = dispersion.smith_envelope(time.p, time.q, delta)
    cos_beta, sin_beta = envelope.c0, envelope.s0
    correction = time.p / (4.0 * time.q * delta**2)
    weights = (
        (Family.S, 1, 2.0 / PI * cos_beta),
        (Family.C, 1, -2.0 / PI * sin_beta),
        (Family.C, 3, correction * cos_beta),
        (Family.S, 3, correction * sin_beta),
    )
    terms = []
    for family, order, weight in weights:
        for base in _step_terms(time, 2, 1.0):
            terms.append(
                base.model_copy(update={"family": family, "order": order, "weight": weight})
            )
    return terms


def evaluate_profile(profile: RevivalProfile, x, on_node: OnNode = "raise"):
    """
    Evaluate a RevivalProfile.

    Args:
        profile: Profile from profile_terms
        x: Scalar or array of points
        on_node: ``"raise"`` or ``"nan"`` for points near a translated node

    Returns:
        Values with the shape of x

    Raises:
        SingularityError: If a point lies within node tolerance of a jump
            or cusp and on_node is ``"raise"``
    """
    values = np.asarray(x, dtype=float)
    scalar = values.ndim == 0
    modulus = profile.modulus

    mask = np.zeros(values.shape, dtype=bool)
    for term in profile.terms:
        if term.order == 1:
            mask |= near_node_mask(values - term.shift, modulus, "nan", "profile")
    if on_node == "raise" and np.any(mask):
        bad = float(values[mask].flat[0])
        nearest = _nearest_singular_point(profile, bad)
        raise SingularityError(
            f"{profile.spec.label} profile at t={profile.time} is singular at "
            f"{nearest:.17g}; x={bad:.17g} lies within the node tolerance",
            location=bad,
            nearest=nearest,
        )

    total = np.full(values.shape, profile.constant)
    for term in profile.terms:
        if term.weight == 0.0:
            continue
        idx = PolylogIndex(j=term.index, k=modulus, r=term.order)
        s_value, c_value = eval_trig_polylog(idx, values - term.shift, on_node="nan")
        part = s_value if term.family is Family.S else c_value
        total = total + term.weight * np.asarray(part)

    total = np.where(mask, np.nan, total)
    return total.item() if scalar else total


def _canonical_location(x: float) -> float:
    """Map x into [-pi, pi); points within 1e-12 of pi become -pi exactly."""
    reduced = float(reduce_angle(x))
    if reduced >= PI - 1e-12:
        return -PI
    return max(reduced, -PI)


def _merge_key(location: float) -> float:
    """Key under which nearly equal canonical locations are merged."""
    return round(location, MERGE_DIGITS)


def _nearest_singular_point(profile: RevivalProfile, x: float) -> float:
    points = profile_singular_set(profile)
    distances = [abs(float(reduce_angle(x - point))) for point in points]
    return points[int(np.argmin(distances))]


def profile_singular_set(profile: RevivalProfile) -> tuple[float, ...]:
    """
    Jump and cusp locations of a profile in [-pi, pi), sorted.

    The union of the node sets of modulus 2q translated by the order-one
    shifts.
    """
    nodes = node_set(profile.modulus).nodes
    locations: dict[float, float] = {}
    for term in profile.terms:
        if term.order != 1:
            continue
        for node in nodes:
            location = _canonical_location(node + term.shift)
            locations.setdefault(_merge_key(location), location)
    return tuple(sorted(locations.values()))


def revival_profile(spec: DispersionSpec, time: RationalTime, x, on_node: OnNode = "raise"):
    """Evaluate the closed-form step profile of any equation."""
    return evaluate_profile(profile_terms(spec, time), x, on_node=on_node)


def bo_rational_profile(time: RationalTime, x, on_node: OnNode = "raise"):
    """
    BO step at t = p*pi/q: 1/2 + (2/pi) sum_j S^{2q}_{2j+1}(x - (2j+1) p pi/q).

    Exact; raises SingularityError near the points pi*m/q.
    """
    return evaluate_profile(profile_terms(DispersionSpec.bo(), time), x, on_node=on_node)


def kdv_rational_profile(time: RationalTime, x, on_node: OnNode = "raise"):
    """
    KdV step at t = p*pi/q: 1/2 + (2/pi) sum_j S^{2q}_{2j+1}(x - (2j+1)^2 p pi/q).

    Exact and piecewise constant on the intervals (pi m/q, pi (m+1)/q).
    """
    return evaluate_profile(profile_terms(DispersionSpec.kdv(), time), x, on_node=on_node)


def ilw_rational_profile(time: RationalTime, delta: float, x, on_node: OnNode = "raise"):
    """
    Advected BO revival approximating the ILW step.

    1/2 + (2/pi) sum_j S^{2q}_{2j+1}(x - (2j+1) p pi/q + p pi/(q delta)).

    ilw_profile_error_bound(time, delta) bounds |u_ILW - value| uniformly in x.
    """
    return evaluate_profile(profile_terms(DispersionSpec.ilw(delta), time), x, on_node=on_node)


def smith_rational_profile(
    time: RationalTime, delta: float, x, on_node: OnNode = "raise"
) -> tuple:
    """
    Approximate Smith step with its certified pointwise error bound.

    With beta = p pi/(2 q delta) and c = p/(4 q delta^2), all sums over
    j = 0..q-1 at x - (2j+1) p pi/q:

        1/2 + (2/pi) cos(beta) sum S^{2q}_{2j+1,1} - (2/pi) sin(beta) sum C^{2q}_{2j+1,1}
            + c cos(beta) sum C^{2q}_{2j+1,3} + c sin(beta) sum S^{2q}_{2j+1,3}

    Returns:
        Tuple (value, error_bound) with error_bound
        p zeta(5)/(2 q delta^3) (1 + p pi/(8 q delta))
    """
    profile = profile_terms(DispersionSpec.smith(delta), time)
    return evaluate_profile(profile, x, on_node=on_node), profile.error_bound


def integrated_delta_profile(time: RationalTime, x, on_node: OnNode = "raise"):
    """
    BO evolution of the integrated delta (1/pi) sum sin(nx)/n.

    (1/pi) sum_{k=1}^{2q} S^{2q}_k(x - k p pi/q).
    """
    profile = profile_terms(DispersionSpec.bo(), time, data=Preset.INTEGRATED_DELTA)
    return evaluate_profile(profile, x, on_node=on_node)


class _TermAccumulator:
    """Collects translated and scaled derivative decompositions."""

    def __init__(self):
        self.deltas: dict[float, float] = {}
        self.locations: dict[float, float] = {}
        self.cots: dict[float, float] = {}
        self.constant = 0.0

    def add(self, idx: PolylogIndex, family: Family, translate: float, scale: float):
        """Add scale * d/dx F(x - translate) for F = S or C of index idx."""
        if scale == 0.0:
            return
        decomposition = distributional_derivative(idx, family)
        for term in decomposition.delta_terms:
            location = _canonical_location(term.location + translate)
            key = _merge_key(location)
            self.locations.setdefault(key, location)
            self.deltas[key] = self.deltas.get(key, 0.0) + scale * term.weight
        for term in decomposition.cot_terms:
            shift = round((term.shift - translate / 2.0) % PI, MERGE_DIGITS)
            if shift >= round(PI, MERGE_DIGITS):
                shift = 0.0
            self.cots[shift] = self.cots.get(shift, 0.0) + scale * term.weight
        self.constant += scale * decomposition.constant

    def delta_terms(self) -> tuple[DeltaTerm, ...]:
        tolerance = settings.CUSP_ZERO_TOLERANCE
        return tuple(
            DeltaTerm(location=self.locations[key], weight=weight)
            for key, weight in sorted(self.deltas.items())
            if abs(weight) > tolerance
        )

    def cot_terms(self) -> tuple[CotTerm, ...]:
        tolerance = settings.CUSP_ZERO_TOLERANCE
        return tuple(
            CotTerm(shift=shift, weight=weight)
            for shift, weight in sorted(self.cots.items())
            if abs(weight) > tolerance
        )


def bo_fundamental_decomposition(time: RationalTime) -> FundamentalDecomposition:
    """
    BO fundamental solution at t = p*pi/q.

    F = 1/(2 pi) + (1/pi) sum_{k=1}^{2q} dS^{2q}_k/dx (x - k p pi/q),
    a finite sum of periodic deltas and translates of the Hilbert kernel.
    """
    modulus = 2 * time.q
    accumulator = _TermAccumulator()
    for k in range(1, modulus + 1):
        accumulator.add(
            PolylogIndex(j=k, k=modulus, r=1), Family.S, _shift(time, k), 1.0 / PI
        )
    decomposition = FundamentalDecomposition(
        spec=DispersionSpec.bo(),
        time=time,
        constant=1.0 / TWO_PI,
        derivative_constant=accumulator.constant,
        delta_terms=accumulator.delta_terms(),
        cot_terms=accumulator.cot_terms(),
    )
    logger.debug(
        f"BO fundamental solution at t={time}: {len(decomposition.delta_terms)} deltas, "
        f"{len(decomposition.cot_terms)} cotangents"
    )
    return decomposition


def translate_decomposition(
    decomposition: FundamentalDecomposition, a: float, spec: DispersionSpec
) -> FundamentalDecomposition:
    """Decomposition of F(x - a), relabelled with ``spec``."""
    deltas = tuple(
        DeltaTerm(location=_canonical_location(term.location + a), weight=term.weight)
        for term in decomposition.delta_terms
    )
    cots = tuple(
        CotTerm(shift=(term.shift - a / 2.0) % PI, weight=term.weight)
        for term in decomposition.cot_terms
    )
    residuals = tuple(
        term.model_copy(update={"shift": term.shift + a})
        for term in decomposition.residual_terms
    )
    return FundamentalDecomposition(
        spec=spec,
        time=decomposition.time,
        constant=decomposition.constant,
        derivative_constant=decomposition.derivative_constant,
        delta_terms=tuple(sorted(deltas, key=lambda term: term.location)),
        cot_terms=cots,
        residual_terms=residuals,
        residual_bound=decomposition.residual_bound,
    )


def ilw_fundamental_approx(time: RationalTime, delta: float) -> FundamentalDecomposition:
    """
    Approximate ILW fundamental solution: the BO one advected by -t/delta.

    F_ILW(t, x) is close to F_BO(t, x + t/delta) up to the smooth ILW residual.
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    return translate_decomposition(
        bo_fundamental_decomposition(time), -time.t / delta, DispersionSpec.ilw(delta)
    )


def smith_fundamental_approx(time: RationalTime, delta: float) -> FundamentalDecomposition:
    """
    Approximate Smith fundamental solution at t = p*pi/q.

    F = 1/(2 pi) + (1/pi) cos(beta) sum_k dS^{2q}_k/dx - (1/pi) sin(beta) sum_k dC^{2q}_k/dx
        - (p/(8 q delta^2)) cos(beta) sum_k S^{2q}_{k,2} + (p/(8 q delta^2)) sin(beta) sum_k C^{2q}_{k,2}

    with every term at x - k p pi/q. The neglected part is a C^2 function
    bounded by 2 eps zeta(4)/pi, eps being the Smith envelope bound.

    Args:
        time: Rational time
        delta: Depth, delta > 0

    Returns:
        FundamentalDecomposition with order-two residual terms
    """
    envelope = dispersion.smith_envelope(time.p, time.q, delta)
    cos_beta, sin_beta = envelope.c0, envelope.s0
    correction = time.p / (8.0 * time.q * delta**2)
    modulus = 2 * time.q

    accumulator = _TermAccumulator()
    residuals = []
    for k in range(1, modulus + 1):
        shift = _shift(time, k)
        idx = PolylogIndex(j=k, k=modulus, r=1)
        accumulator.add(idx, Family.S, shift, cos_beta / PI)
        accumulator.add(idx, Family.C, shift, -sin_beta / PI)
        residuals.append(
            PolylogTerm(family=Family.S, order=2, index=k, shift=shift, weight=-correction * cos_beta)
        )
        residuals.append(
            PolylogTerm(family=Family.C, order=2, index=k, shift=shift, weight=correction * sin_beta)
        )

    return FundamentalDecomposition(
        spec=DispersionSpec.smith(delta),
        time=time,
        constant=1.0 / TWO_PI,
        derivative_constant=accumulator.constant,
        delta_terms=accumulator.delta_terms(),
        cot_terms=accumulator.cot_terms(),
        residual_terms=tuple(residuals),
        residual_bound=2.0 * envelope.eps_bound * float(zeta(4)) / PI,
    )


def fundamental_density(
    decomposition: FundamentalDecomposition, x, on_node: OnNode = "raise"
):
    """
    Absolutely continuous part of a fundamental solution.

    constant + smooth_part + residual polylogarithms; the deltas are not
    pointwise values, so points on a delta or cotangent pole are rejected.

    Raises:
        SingularityError: Near a delta location or a cotangent pole
    """
    values = np.asarray(x, dtype=float)
    scalar = values.ndim == 0
    poles = [term.location for term in decomposition.delta_terms]
    poles += [_canonical_location(-2.0 * term.shift) for term in decomposition.cot_terms]
    mask = np.zeros(values.shape, dtype=bool)
    for pole in poles:
        distance = np.abs(np.asarray(reduce_angle(values - pole)))
        near = distance <= settings.POLE_TOLERANCE
        if on_node == "raise" and np.any(near):
            bad = float(values[near].flat[0])
            raise SingularityError(
                f"fundamental solution is singular at {pole:.17g}; x={bad:.17g}",
                location=bad,
                nearest=pole,
            )
        mask |= near

    with np.errstate(divide="ignore", invalid="ignore"):
        total = decomposition.constant + np.asarray(decomposition.smooth_part(values))
    modulus = 2 * decomposition.time.q
    for term in decomposition.residual_terms:
        idx = PolylogIndex(j=term.index, k=modulus, r=term.order)
        s_value, c_value = eval_trig_polylog(idx, values - term.shift)
        total = total + term.weight * np.asarray(s_value if term.family is Family.S else c_value)

    total = np.where(mask, np.nan, total)
    return total.item() if scalar else total
