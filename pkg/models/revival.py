"""
Pydantic models for rational-time revival profiles.

A RevivalProfile is the closed form of an evolved profile at t = p*pi/q as a
constant plus weighted translates of trigonometric polylogarithms of modulus
2q. A FundamentalDecomposition is the structured derivative of the evolved
integrated delta: periodic deltas, cotangents (Hilbert transform translates),
constants and, for Smith, order-two polylogarithm corrections.
"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.dispersion import DispersionSpec, Equation
from models.evolution import Preset, RationalTime
from models.polylog import CotTerm, DeltaTerm, Family

SHIFT_TOLERANCE = 1e-12


class PolylogTerm(BaseModel):
    """weight * F^{modulus}_{index, order}(x - shift), F in {S, C}."""

    model_config = ConfigDict(frozen=True)

    family: Family
    order: int = Field(..., ge=1, le=3)
    index: int = Field(..., ge=1)
    shift: float
    weight: float


class RevivalProfile(BaseModel):
    """
    Closed-form profile constant + sum of polylogarithm translates.

    For the BO Riemann step the terms are exactly the q functions
    S^{2q}_{2j+1} translated by (2j+1) p pi/q with weight 2/pi, the constant
    is 1/2 and the profile is exact.
    """

    model_config = ConfigDict(frozen=True)

    spec: DispersionSpec
    time: RationalTime
    data: Preset = Preset.RIEMANN_STEP
    modulus: int = Field(..., ge=2, description="Polylogarithm modulus 2q")
    terms: tuple[PolylogTerm, ...]
    constant: float
    error_bound: float = Field(default=0.0, ge=0.0)

    @model_validator(mode="after")
    def validate_structure(self):
        """Check the modulus and the exact BO step structure."""
        if self.modulus != 2 * self.time.q:
            raise ValueError(f"modulus must be 2q = {2 * self.time.q}")
        if any(term.index > self.modulus for term in self.terms):
            raise ValueError("term index exceeds the modulus")
        if self.spec.equation is Equation.BO and self.data is Preset.RIEMANN_STEP:
            self._validate_bo_step()
        return self

    def _validate_bo_step(self) -> None:
        q, p = self.time.q, self.time.p
        if len(self.terms) != q:
            raise ValueError(f"the BO step profile has exactly q={q} terms")
        if self.constant != 0.5 or self.error_bound != 0.0:
            raise ValueError("the BO step profile has constant 1/2 and no error")
        for j, term in enumerate(self.terms):
            index = 2 * j + 1
            shift = math.pi * ((index * p) % (2 * q)) / q
            if (
                term.family is not Family.S
                or term.order != 1
                or term.index != index
                or abs(term.shift - shift) > SHIFT_TOLERANCE
                or not math.isclose(term.weight, 2.0 / math.pi)
            ):
                raise ValueError(f"term {j} does not match S^{2 * q}_{index} translate")


class FundamentalDecomposition(BaseModel):
    """
    Fundamental solution at a rational time.

    F = constant + derivative_constant + sum deltas + sum cotangents
        + sum residual polylogarithms.

    ``constant`` is the mean 1/(2 pi) restored on top of the derivative of
    the evolved integrated delta; ``derivative_constant`` collects the
    constants of the translated order-one derivatives.
    """

    model_config = ConfigDict(frozen=True)

    spec: DispersionSpec
    time: RationalTime
    constant: float
    derivative_constant: float = 0.0
    delta_terms: tuple[DeltaTerm, ...] = ()
    cot_terms: tuple[CotTerm, ...] = ()
    residual_terms: tuple[PolylogTerm, ...] = ()
    residual_bound: float = Field(default=0.0, ge=0.0)

    @model_validator(mode="after")
    def validate_bo(self):
        """BO decompositions are exact: no residual and mean 1/(2 pi)."""
        if self.spec.equation is Equation.BO:
            if self.residual_terms or self.residual_bound != 0.0:
                raise ValueError("the BO fundamental solution has no residual")
            if not math.isclose(self.constant, 1.0 / (2.0 * math.pi)):
                raise ValueError("the BO fundamental solution has constant 1/(2 pi)")
        return self

    def smooth_part(self, x):
        """
        derivative_constant plus the cotangent terms.

        This is the derivative of the evolved integrated delta away from its
        deltas, excluding residual polylogarithms.
        """
        values = np.asarray(x, dtype=float)
        total = np.full_like(values, self.derivative_constant)
        for term in self.cot_terms:
            total = total + term.weight / np.tan(values / 2.0 + term.shift)
        return float(total) if values.ndim == 0 else total

    def total_mass(self) -> float:
        """Integral over a period; cotangents and residual polylogs have mean 0."""
        return 2.0 * math.pi * (self.constant + self.derivative_constant) + math.fsum(
            term.weight for term in self.delta_terms
        )

    def term_families(self) -> set[str]:
        """Names of the term kinds present."""
        kinds = {"constant"}
        if self.delta_terms:
            kinds.add("delta")
        if self.cot_terms:
            kinds.add("cot")
        if self.residual_terms:
            kinds.add("polylog")
        return kinds
