"""
Pydantic models for spectral evolution.

RationalTime is the reduced fraction p/q of the time t = p*pi/q.
FourierInitialData carries real initial data through its non-negative Fourier
coefficients b_k, k >= 0; b_{-k} is the complex conjugate of b_k, so the
data is real by construction. The two named presets are generated on demand
to any number of modes.
"""

import math
from enum import StrEnum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from models.dispersion import DispersionSpec


class RationalTime(BaseModel):
    """
    Time t = p*pi/q, reduced on construction.

    Args:
        p: Non-negative numerator
        q: Positive denominator
    """

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=0, description="Numerator")
    q: int = Field(..., ge=1, description="Denominator")

    @model_validator(mode="before")
    @classmethod
    def reduce_fraction(cls, data: Any) -> Any:
        """Divide p and q by their greatest common divisor."""
        if isinstance(data, dict):
            p, q = data.get("p"), data.get("q")
            if isinstance(p, int) and isinstance(q, int) and p >= 0 and q >= 1:
                divisor = math.gcd(p, q)
                data = {**data, "p": p // divisor, "q": q // divisor}
        return data

    @property
    def t(self) -> float:
        """The time p*pi/q as a float."""
        return self.p * math.pi / self.q

    def __str__(self) -> str:
        return f"{self.p}pi/{self.q}"


class Preset(StrEnum):
    RIEMANN_STEP = "riemann_step"
    INTEGRATED_DELTA = "integrated_delta"
    CUSTOM = "custom"


class FourierInitialData(BaseModel):
    """
    Real periodic initial data given by Fourier coefficients.

    Presets:
        riemann_step: (1 + sign x)/2, with b_0 = 1/2 and b_k = -i/(pi k) for
            odd k, i.e. 1/2 + (2/pi) sum sin(kx)/k over odd k
        integrated_delta: (1/pi) sum sin(kx)/k, with b_k = -i/(2 pi k)

    Custom data stores b_0..b_K explicitly.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    preset: Preset = Field(..., description="Named preset or custom")
    coefficients: np.ndarray | None = Field(
        default=None, description="b_0..b_K for custom data"
    )

    @field_validator("coefficients", mode="before")
    @classmethod
    def coerce_coefficients(cls, value):
        if value is None:
            return value
        array = np.asarray(value, dtype=complex)
        if array.ndim != 1 or array.size == 0:
            raise ValueError("coefficients must be a non-empty one-dimensional array")
        array = array.copy()
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def validate_preset(self):
        """Custom data needs coefficients and b_0 must be real."""
        if self.preset is Preset.CUSTOM:
            if self.coefficients is None:
                raise ValueError("custom initial data requires coefficients")
            if abs(self.coefficients[0].imag) > 1e-15:
                raise ValueError("b_0 must be real for real-valued data")
        elif self.coefficients is not None:
            raise ValueError(f"preset '{self.preset}' does not take coefficients")
        return self

    @classmethod
    def riemann_step(cls) -> "FourierInitialData":
        return cls(preset=Preset.RIEMANN_STEP)

    @classmethod
    def integrated_delta(cls) -> "FourierInitialData":
        return cls(preset=Preset.INTEGRATED_DELTA)

    @classmethod
    def from_sine_coefficients(
        cls, sine: list[float] | np.ndarray, mean: float = 0.0
    ) -> "FourierInitialData":
        """
        Data mean + sum_{k>=1} a_k sin(kx) with a = ``sine``.
        """
        sine = np.asarray(sine, dtype=float)
        coefficients = np.concatenate(([mean + 0j], -0.5j * sine))
        return cls(preset=Preset.CUSTOM, coefficients=coefficients)

    @property
    def max_mode(self) -> int | None:
        """Largest stored mode, or None for presets."""
        if self.coefficients is None:
            return None
        return self.coefficients.size - 1

    def modes_for(self, n: int) -> np.ndarray:
        """
        Wavenumbers used for a truncation level n.

        The step preset only has odd modes, so n counts them: k = 2j+1 for
        j = 0..n. Other data use k = 1..n.
        """
        if self.preset is Preset.RIEMANN_STEP:
            return 2 * np.arange(n + 1, dtype=np.int64) + 1
        return np.arange(1, n + 1, dtype=np.int64)

    def mean(self) -> float:
        """b_0."""
        if self.preset is Preset.RIEMANN_STEP:
            return 0.5
        if self.preset is Preset.INTEGRATED_DELTA:
            return 0.0
        return float(self.coefficients[0].real)

    def coefficients_for(self, k: np.ndarray) -> np.ndarray:
        """
        b_k for positive wavenumbers k.

        Raises:
            ValueError: If custom data does not reach the largest requested k
        """
        k = np.asarray(k, dtype=np.int64)
        if self.preset is Preset.RIEMANN_STEP:
            return np.where(k % 2 == 1, -1j / (math.pi * k), 0j)
        if self.preset is Preset.INTEGRATED_DELTA:
            return -1j / (2.0 * math.pi * k)
        if k.size and int(k.max()) > self.max_mode:
            raise ValueError(
                f"initial data has modes up to {self.max_mode}, "
                f"mode {int(k.max())} was requested"
            )
        return self.coefficients[k]


class SolutionField(BaseModel):
    """
    Solution values on a grid, with NaN marking excluded points.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: np.ndarray
    values: np.ndarray
    spec: DispersionSpec
    time: float
    n_modes: int | None = None
    method: str = Field(..., pattern="^(closed|series)$")

    @model_validator(mode="after")
    def validate_lengths(self):
        """Grid and values must have the same length."""
        if self.grid.shape != self.values.shape or self.grid.ndim != 1:
            raise ValueError(
                f"grid {self.grid.shape} and values {self.values.shape} must be "
                "one-dimensional arrays of equal length"
            )
        return self

    @property
    def excluded(self) -> np.ndarray:
        """Mask of grid points without a value."""
        return np.isnan(self.values)
