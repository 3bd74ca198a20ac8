"""Exact construction of the quaternionic unitary Cayley-Klein algebras sq_w(N+1)
and computation of their second cohomology."""

from .ckalgebra import OmegaPattern, StructureConstants, build_sq, build_subalgebra, omega_ab
from .cohomology import CohomologyReport, classify_extension, h2
from .exactnum import Quaternion, epsilon, quat_mul

__all__ = [
    "OmegaPattern",
    "StructureConstants",
    "build_sq",
    "build_subalgebra",
    "omega_ab",
    "CohomologyReport",
    "classify_extension",
    "h2",
    "Quaternion",
    "epsilon",
    "quat_mul",
]
