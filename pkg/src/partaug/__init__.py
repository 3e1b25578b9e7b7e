"""Partial augmentations in integral group rings: relations, oracles and a sieve."""

from .groups import GroupSpec, Group, ClassTable, build_group, load_group, conjugacy_classes
from .ringcore import GroupRingElement, PAVector, pa_vector, partial_augmentation
from .relations import (
    VerificationReport,
    verify_corollary1,
    verify_eq9,
    verify_theorem1,
    verify_theorem2,
)

__version__ = "0.1.0"
