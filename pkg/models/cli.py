"""
Pydantic models for command-line runs.

Every command validates its options into a RunConfig before computing, so
bad combinations (a missing depth, a one-point grid, an empty range) fail
with a ValidationError that the command layer maps to exit code 2.
"""

import math
from enum import StrEnum
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import settings
from models.dispersion import DEPTH_EQUATIONS, DispersionSpec, Equation
from models.evolution import Preset, RationalTime
from models.kernels import KernelKind


class Command(StrEnum):
    POLYLOG = "polylog"
    PROFILE = "profile"
    COMPARE = "compare"
    KERNEL = "kernel"
    VERIFY = "verify"


class Method(StrEnum):
    CLOSED = "closed"
    SERIES = "series"


class RunConfig(BaseModel):
    """
    Validated options of one command invocation.

    Args:
        command: Sub-command being run
        equation: Equation for profile and compare
        p: Time numerator, t = p*pi/q
        q: Time denominator
        delta: Depth, required exactly for ilw and smith
        nmodes: Truncation level of the series method
        grid_points: Number of evenly spaced grid points, endpoints included
        x_range: Grid interval (lo, hi)
        output_path: CSV destination, None for standard output
    """

    model_config = ConfigDict(frozen=True)

    command: Command
    equation: Equation | None = None
    p: int = Field(default=0, ge=0, description="Time numerator")
    q: int = Field(default=1, ge=1, description="Time denominator")
    delta: float | None = Field(default=None, gt=0.0, description="Depth parameter")
    nmodes: int = Field(default_factory=lambda: settings.DEFAULT_NMODES, ge=1)
    grid_points: int = Field(default_factory=lambda: settings.DEFAULT_GRID_POINTS, ge=2)
    x_range: tuple[float, float] = (-math.pi, math.pi)
    output_path: Path | None = None

    # polylog
    j: int | None = Field(default=None, ge=1)
    k: int | None = Field(default=None, ge=1)
    r: int | None = Field(default=None, ge=1)
    # profile
    method: Method = Method.CLOSED
    data: Preset = Preset.RIEMANN_STEP
    # kernel
    kind: KernelKind | None = None
    nterms: int | None = Field(default=None, ge=1)

    @model_validator(mode="before")
    @classmethod
    def reduce_time(cls, data):
        """Store p/q in lowest terms."""
        if isinstance(data, dict):
            p, q = data.get("p"), data.get("q")
            if isinstance(p, int) and isinstance(q, int) and p >= 0 and q >= 1:
                divisor = math.gcd(p, q)
                data = {**data, "p": p // divisor, "q": q // divisor}
        return data

    @model_validator(mode="after")
    def validate_options(self):
        """Check the range and the depth against the equation or kernel."""
        lo, hi = self.x_range
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError(f"x range must satisfy lo < hi, got ({lo}, {hi})")
        if self.equation is not None:
            needs_delta = self.equation in DEPTH_EQUATIONS
            if needs_delta and self.delta is None:
                raise ValueError(f"--delta is required for equation '{self.equation}'")
            if not needs_delta and self.delta is not None:
                raise ValueError(f"--delta does not apply to equation '{self.equation}'")
        if self.data is Preset.CUSTOM:
            raise ValueError("custom initial data cannot be given on the command line")
        if self.kind is not None and self.kind is not KernelKind.HILBERT and self.delta is None:
            raise ValueError(f"--delta is required for the {self.kind} kernel")
        if self.command is Command.POLYLOG:
            if None in (self.j, self.k, self.r):
                raise ValueError("polylog needs --j, --k and --r")
            if self.j > self.k:
                raise ValueError(f"j must satisfy 1 <= j <= k, got j={self.j}, k={self.k}")
        return self

    @property
    def time(self) -> RationalTime:
        return RationalTime(p=self.p, q=self.q)

    @property
    def spec(self) -> DispersionSpec:
        if self.equation is None:
            raise ValueError("no equation was given")
        return DispersionSpec(equation=self.equation, delta=self.delta)

    def grid(self) -> np.ndarray:
        """grid_points evenly spaced points over x_range, both ends included."""
        lo, hi = self.x_range
        return np.linspace(lo, hi, self.grid_points)
