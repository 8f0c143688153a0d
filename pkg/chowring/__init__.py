"""Integral equivariant Chow rings of spaces of smooth hypersurfaces."""

from chowring.errors import ChowRingError, ExactnessError
from chowring.graded_ideal_membership import (
    MembershipCertificate,
    minimal_generators_check,
    relation_polynomial_membership,
    slice_membership,
    verify_identity,
)
from chowring.hypersurface_combinatorics import Partition, partitions_of
from chowring.localization_engine import delta_class, pushforward_product_map
from chowring.poly_core import INTEGERS, RATIONALS, Polynomial, RingFactory, VariableContext
from chowring.presentation import Presentation, build_presentation
from chowring.tautological_classes import alpha_generators, total_relation

__version__ = "0.1.0"

__all__ = [
    "ChowRingError",
    "ExactnessError",
    "INTEGERS",
    "MembershipCertificate",
    "Partition",
    "Polynomial",
    "Presentation",
    "RATIONALS",
    "RingFactory",
    "VariableContext",
    "alpha_generators",
    "build_presentation",
    "delta_class",
    "minimal_generators_check",
    "partitions_of",
    "pushforward_product_map",
    "relation_polynomial_membership",
    "slice_membership",
    "total_relation",
    "verify_identity",
]
