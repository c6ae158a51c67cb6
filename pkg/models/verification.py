"""
Pydantic models for the verification suite.
"""

import math

from pydantic import BaseModel, ConfigDict, Field, computed_field


class InvariantResult(BaseModel):
    """One measured invariant against its bound."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Invariant name")
    module: str = Field(..., description="Module the invariant belongs to")
    measured: float = Field(..., description="Measured value, e.g. a sup error")
    bound: float = Field(..., description="Largest acceptable measured value")
    duration: float = Field(default=0.0, ge=0.0, description="Run time in seconds")
    error: str | None = Field(default=None, description="Exception raised by the check")

    @computed_field
    @property
    def passed(self) -> bool:
        """NaN and failed checks never pass."""
        if self.error is not None or math.isnan(self.measured):
            return False
        return self.measured <= self.bound


class VerificationReport(BaseModel):
    """Outcome of a suite run."""

    model_config = ConfigDict(frozen=True)

    results: tuple[InvariantResult, ...]
    quick: bool = False
    seed: int

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> tuple[InvariantResult, ...]:
        return tuple(result for result in self.results if not result.passed)

    @property
    def duration(self) -> float:
        return math.fsum(result.duration for result in self.results)

    def table(self) -> str:
        """Fixed-width pass/fail table, one row per invariant."""
        width = max([len("invariant"), *(len(result.name) for result in self.results)])
        lines = [
            f"{'invariant':<{width}}  {'module':<11}  {'measured':>12}  {'bound':>12}  status"
        ]
        for result in self.results:
            status = "PASS" if result.passed else "FAIL"
            if result.error is not None:
                status = f"ERROR ({result.error})"
            lines.append(
                f"{result.name:<{width}}  {result.module:<11}  "
                f"{result.measured:>12.4e}  {result.bound:>12.4e}  {status}"
            )
        failed = len(self.failures)
        lines.append(
            f"{len(self.results) - failed}/{len(self.results)} invariants passed "
            f"in {self.duration:.1f}s"
        )
        return "\n".join(lines)
