"""
Pydantic models for trigonometric polylogarithms.

This module defines the index triple (j, k, r) of the functions S^k_{j,r} and
C^k_{j,r}, their node sets, the node classification results and the
structured distributional derivative of the order-one functions.
"""

import math
from enum import StrEnum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import settings


class Family(StrEnum):
    """Sine (S, imaginary part) or cosine (C, real part) family."""

    S = "S"
    C = "C"


class CuspSign(StrEnum):
    UP = "up"
    DOWN = "down"
    NONE = "none"


class Singularity(StrEnum):
    """Kind of non-smooth point a node is for the given order."""

    JUMP_CUSP = "jump_cusp"
    INFINITE_GRADIENT = "infinite_gradient"
    CORNER = "corner"


class PolylogIndex(BaseModel):
    """
    Index of a trigonometric polylogarithm.

    S^k_{j,r} and C^k_{j,r} are the imaginary and real parts of
    sum_{n>=0} exp(i(nk+j)x) / (nk+j)^r.

    Args:
        j: Residue class of the summation index, 1 <= j <= k
        k: Modulus of the summation index
        r: Order of the polylogarithm
    """

    model_config = ConfigDict(frozen=True)

    j: int = Field(..., ge=1, description="Residue class, 1 <= j <= k")
    k: int = Field(..., ge=1, description="Modulus")
    r: int = Field(..., ge=1, description="Order")

    @model_validator(mode="after")
    def validate_residue(self):
        """Ensure j does not exceed k."""
        if self.j > self.k:
            raise ValueError(f"j must satisfy 1 <= j <= k, got j={self.j}, k={self.k}")
        return self

    @property
    def node_spacing(self) -> float:
        """Distance 2*pi/k between consecutive nodes."""
        return 2.0 * math.pi / self.k


class NodeSet(BaseModel):
    """
    Nodes 2*pi*l/k of a modulus k that lie in [-pi, pi], sorted ascending.
    """

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1, description="Modulus")
    nodes: tuple[float, ...] = Field(..., description="Node locations in [-pi, pi]")

    @model_validator(mode="after")
    def validate_nodes(self):
        """Check the nodes are exactly the multiples of 2*pi/k in [-pi, pi]."""
        half = self.k // 2
        expected = [2.0 * math.pi * m / self.k for m in range(-half, half + 1)]
        if len(expected) != len(self.nodes) or any(
            not math.isclose(a, b, rel_tol=0.0, abs_tol=1e-12)
            for a, b in zip(expected, self.nodes, strict=True)
        ):
            raise ValueError(f"nodes do not match the node set of k={self.k}")
        return self


class NodeBehaviour(BaseModel):
    """
    Behaviour of S^k_{j,r} or C^k_{j,r} at the node x = 2*pi*l/k.

    For order one the jump height is the right limit minus the left limit
    and ``cusp_sign`` the direction of the logarithmic cusp. Order two
    functions are continuous; they have either a point of infinite gradient
    or a corner.
    """

    model_config = ConfigDict(frozen=True)

    index: PolylogIndex
    node_index: int = Field(..., description="Node index l of x = 2*pi*l/k")
    family: Family
    location: float = Field(..., description="Node location 2*pi*l/k")
    jump_height: float = Field(..., description="Right limit minus left limit")
    cusp_sign: CuspSign
    singularity: Singularity

    @model_validator(mode="after")
    def validate_cusp(self):
        """The cusp is absent exactly when its trigonometric factor vanishes."""
        if self.index.r != 1:
            return self
        residue = (self.index.j * self.node_index) % self.index.k
        angle = 2.0 * math.pi * residue / self.index.k
        factor = math.sin(angle) if self.family is Family.S else math.cos(angle)
        vanishes = abs(factor) <= settings.CUSP_ZERO_TOLERANCE
        if vanishes != (self.cusp_sign is CuspSign.NONE):
            raise ValueError("cusp_sign disagrees with the vanishing of its factor")
        return self


class DeltaTerm(BaseModel):
    """Weighted periodic Dirac delta at ``location``."""

    model_config = ConfigDict(frozen=True)

    location: float = Field(..., ge=-math.pi, lt=math.pi)
    weight: float


class CotTerm(BaseModel):
    """The term weight * cot(x/2 + shift)."""

    model_config = ConfigDict(frozen=True)

    shift: float
    weight: float


class DerivativeDecomposition(BaseModel):
    """
    Distributional derivative split into deltas, cotangents and a constant.
    """

    model_config = ConfigDict(frozen=True)

    delta_terms: tuple[DeltaTerm, ...] = ()
    cot_terms: tuple[CotTerm, ...] = ()
    constant: float = 0.0

    def smooth_part(self, x):
        """
        Evaluate the cotangent terms plus the constant.

        Args:
            x: Scalar or array of evaluation points away from the cot poles

        Returns:
            Values of the absolutely continuous part of the derivative
        """
        values = np.asarray(x, dtype=float)
        total = np.full_like(values, self.constant)
        for term in self.cot_terms:
            total = total + term.weight / np.tan(values / 2.0 + term.shift)
        if np.ndim(x) == 0:
            return float(total)
        return total

    def total_mass(self) -> float:
        """
        Integral over one period.

        Cotangent terms have zero principal-value integral, so the mass is
        the constant times 2*pi plus the delta weights.
        """
        return 2.0 * math.pi * self.constant + math.fsum(
            term.weight for term in self.delta_terms
        )
