"""Canonical systems of basic invariants for finite unitary reflection groups."""

from .canonical import (
    CanonicalSystem,
    canonical_system,
    candidates,
    harmonic_dims,
    orthogonalize,
    phi,
    steinberg_membership,
    verify_canonical,
)
from .catalog import load_group
from .cyclo import CycloNum
from .group import ReflGroup, UMatrix, analyze, closure
from .invariants import InvariantSystem, basic_invariants, invariant_space, verify_basic
from .poly import Poly, inner, jacobian, star_apply

__version__ = "0.1.0"

__all__ = [
    "CanonicalSystem",
    "CycloNum",
    "InvariantSystem",
    "Poly",
    "ReflGroup",
    "UMatrix",
    "analyze",
    "basic_invariants",
    "candidates",
    "canonical_system",
    "closure",
    "harmonic_dims",
    "inner",
    "invariant_space",
    "jacobian",
    "load_group",
    "orthogonalize",
    "phi",
    "star_apply",
    "steinberg_membership",
    "verify_basic",
    "verify_canonical",
]
