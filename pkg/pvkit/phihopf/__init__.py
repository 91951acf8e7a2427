"""
Phi-objects, finite Hopf-Galois extensions and descent.
"""

from .groups import FinGroupHopf
from .extension import FinHopfGalois, HopfGaloisCheck, can_map, is_hopf_galois
from .objects import (
    Equivariance,
    PhiObject,
    PhiType,
    aut_is_constant_check,
    is_delta_linear,
    is_phi_morphism,
    s_tensor_power,
    transport,
    trivial_object,
)
from .descent import (
    Descent,
    DescentRoundtrip,
    coinvariants,
    descend,
    descent_roundtrip,
    extend_scalars,
    multiplication_map,
    twist_coaction,
    unit_embedding,
)

__all__ = [
    "FinGroupHopf",
    "FinHopfGalois",
    "HopfGaloisCheck",
    "can_map",
    "is_hopf_galois",
    "Equivariance",
    "PhiObject",
    "PhiType",
    "aut_is_constant_check",
    "is_delta_linear",
    "is_phi_morphism",
    "s_tensor_power",
    "transport",
    "trivial_object",
    "Descent",
    "DescentRoundtrip",
    "coinvariants",
    "descend",
    "descent_roundtrip",
    "extend_scalars",
    "multiplication_map",
    "twist_coaction",
    "unit_embedding",
]
