"""
Pydantic models for indices, dispersion relations, profiles and kernels.
"""

from .dispersion import DispersionSpec, Equation, SmithEnvelope, VelocityGap
from .evolution import FourierInitialData, Preset, RationalTime, SolutionField
from .kernels import ILWKernelSpec, KernelKind, KernelSample
from .polylog import Family, NodeBehaviour, NodeSet, PolylogIndex
from .revival import FundamentalDecomposition, PolylogTerm, RevivalProfile

__all__ = [
    "DispersionSpec",
    "Equation",
    "Family",
    "FourierInitialData",
    "FundamentalDecomposition",
    "ILWKernelSpec",
    "KernelKind",
    "KernelSample",
    "NodeBehaviour",
    "NodeSet",
    "PolylogIndex",
    "PolylogTerm",
    "Preset",
    "RationalTime",
    "RevivalProfile",
    "SmithEnvelope",
    "SolutionField",
    "VelocityGap",
]
