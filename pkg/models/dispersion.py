"""
Pydantic models for dispersion relations.

This module defines the tagged equation choice with its depth parameter, the
ILW/BO phase velocity gap with its exponential envelope, and the Taylor data
of the Smith phase correction.
"""

import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Envelope constants for the ILW velocity gap and the phase multiplier
GAP_ENVELOPE_CONSTANT = 2.1
PHASE_ENVELOPE_CONSTANT = 1.1
# delta*|k| from which 2/(1 - exp(-2 delta |k|)) <= GAP_ENVELOPE_CONSTANT
ENVELOPE_THRESHOLD = 0.5 * math.log(GAP_ENVELOPE_CONSTANT / (GAP_ENVELOPE_CONSTANT - 2.0))


class Equation(StrEnum):
    BO = "bo"
    ILW = "ilw"
    SMITH = "smith"
    KDV = "kdv"


DEPTH_EQUATIONS = frozenset({Equation.ILW, Equation.SMITH})


class DispersionSpec(BaseModel):
    """
    Equation together with its depth parameter.

    Args:
        equation: One of bo, ilw, smith, kdv
        delta: Depth parameter, required for ilw and smith only
    """

    model_config = ConfigDict(frozen=True)

    equation: Equation = Field(..., description="Linear dispersive equation")
    delta: float | None = Field(
        default=None, gt=0.0, description="Depth parameter for ilw and smith"
    )

    @model_validator(mode="after")
    def validate_delta(self):
        """Require delta exactly for the depth-dependent equations."""
        if self.equation in DEPTH_EQUATIONS and self.delta is None:
            raise ValueError(f"delta is required for equation '{self.equation}'")
        if self.equation not in DEPTH_EQUATIONS and self.delta is not None:
            raise ValueError(f"delta is not a parameter of equation '{self.equation}'")
        return self

    @classmethod
    def bo(cls) -> "DispersionSpec":
        return cls(equation=Equation.BO)

    @classmethod
    def kdv(cls) -> "DispersionSpec":
        return cls(equation=Equation.KDV)

    @classmethod
    def ilw(cls, delta: float) -> "DispersionSpec":
        return cls(equation=Equation.ILW, delta=delta)

    @classmethod
    def smith(cls, delta: float) -> "DispersionSpec":
        return cls(equation=Equation.SMITH, delta=delta)

    @property
    def label(self) -> str:
        """Short label such as ``bo`` or ``ilw(delta=100)``."""
        if self.delta is None:
            return self.equation.value
        return f"{self.equation.value}(delta={self.delta:g})"


class VelocityGap(BaseModel):
    """
    Gap |k coth(delta k) - |k|| between the ILW and BO phase velocities.

    The envelope a |k| exp(-2 delta |k|) with a = 2.1 bounds the gap once
    delta |k| >= ln(21)/2, which ``envelope_valid`` reports.
    """

    model_config = ConfigDict(frozen=True)

    delta: float = Field(..., gt=0.0)
    k: int
    gap: float = Field(..., ge=0.0)
    envelope: float = Field(..., ge=0.0)
    envelope_valid: bool

    @model_validator(mode="after")
    def validate_envelope(self):
        """The gap stays below its envelope wherever the envelope applies."""
        if self.k == 0:
            raise ValueError("the velocity gap is defined for k != 0")
        if self.envelope_valid and self.gap > self.envelope * (1.0 + 1e-12):
            raise ValueError(
                f"gap {self.gap:.6e} exceeds envelope {self.envelope:.6e} "
                f"at delta={self.delta}, k={self.k}"
            )
        return self


class SmithEnvelope(BaseModel):
    """
    Taylor data of the Smith phase correction at t = p*pi/q.

    With beta = p*pi/(2 q delta) the correction factors expand as
    cos-curve c0 + c1 z + O(z^2) and sin-curve s0 + s1 z + O(z^2), and both
    second-order remainders are bounded by ``eps_bound``.
    """

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=0)
    q: int = Field(..., ge=1)
    delta: float = Field(..., gt=0.0)
    c0: float
    c1: float
    s0: float
    s1: float
    eps_bound: float = Field(..., ge=0.0)

    @model_validator(mode="after")
    def validate_bound(self):
        """eps_bound must equal (p pi/(8 q delta^3)) (1 + p pi/(8 q delta))."""
        ratio = self.p * math.pi / (8.0 * self.q)
        expected = ratio / self.delta**3 * (1.0 + ratio / self.delta)
        if not math.isclose(self.eps_bound, expected, rel_tol=1e-12, abs_tol=0.0):
            raise ValueError(f"eps_bound {self.eps_bound} differs from {expected}")
        return self

    @property
    def beta(self) -> float:
        """Leading phase correction p*pi/(2 q delta)."""
        return self.p * math.pi / (2.0 * self.q * self.delta)

    def taylor_c(self, z: float) -> float:
        return self.c0 + self.c1 * z

    def taylor_s(self, z: float) -> float:
        return self.s0 + self.s1 * z
