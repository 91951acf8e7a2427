"""
Nonabelian H^1 of finite groups and twisted forms.
"""

from .actions import GammaAction, Target, TargetKind, cyclic_inversion_action, scaling_action
from .cohomology import Cocycle, Equivalence, are_equivalent, enumerate_h1, is_cocycle, trivial_cocycle
from .twisted import (
    TwistedFormDesc,
    construction_F,
    construction_G,
    descended_isomorphism,
    roundtrip_from_twisted_form,
    twisted_form,
    validate_twisted_form,
)

__all__ = [
    "GammaAction",
    "Target",
    "TargetKind",
    "cyclic_inversion_action",
    "scaling_action",
    "Cocycle",
    "Equivalence",
    "are_equivalent",
    "enumerate_h1",
    "is_cocycle",
    "trivial_cocycle",
    "TwistedFormDesc",
    "construction_F",
    "construction_G",
    "descended_isomorphism",
    "roundtrip_from_twisted_form",
    "twisted_form",
    "validate_twisted_form",
]
