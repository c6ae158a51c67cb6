"""
Pydantic models for the convolution kernels.
"""

import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Largest imaginary residue of alpha accepted for the rectangular lattice
ALPHA_IMAGINARY_TOLERANCE = 1e-10


class KernelKind(StrEnum):
    HILBERT = "hilbert"
    ILW = "ilw"
    SMITH = "smith"


class ILWKernelSpec(BaseModel):
    """
    Parameters of the ILW kernel C_delta(x) = (1/pi) [alpha x - zeta(x)].

    zeta is the Weierstrass zeta function of the lattice with half-periods
    omega_1 = -i delta and omega_3 = pi, and alpha = i zeta(-i delta)/delta.

    Args:
        delta: Depth, delta > 0
        alpha: The lattice constant, real up to rounding
        N: Truncation of the symmetric coth sum |n| <= N
    """

    model_config = ConfigDict(frozen=True)

    delta: float = Field(..., gt=0.0, description="Depth parameter")
    alpha: complex = Field(..., description="Lattice constant i zeta(-i delta)/delta")
    N: int = Field(default=400, ge=1, description="Symmetric truncation |n| <= N")

    @model_validator(mode="after")
    def validate_alpha(self):
        """alpha is real for the rectangular lattice."""
        if abs(self.alpha.imag) > ALPHA_IMAGINARY_TOLERANCE * max(1.0, abs(self.alpha)):
            raise ValueError(f"alpha must be real, got {self.alpha}")
        return self

    @property
    def nome(self) -> float:
        """q = exp(-pi^2/delta)."""
        return math.exp(-math.pi**2 / self.delta)


class KernelSample(BaseModel):
    """One kernel value; ``value`` is None at a flagged pole."""

    model_config = ConfigDict(frozen=True)

    x: float
    value: float | complex | None = None
    pole_proximity_flag: bool = False

    @model_validator(mode="after")
    def validate_flag(self):
        """Flagged samples carry no value, unflagged ones must."""
        if self.pole_proximity_flag != (self.value is None):
            raise ValueError("a sample has a value exactly when it is not at a pole")
        return self
