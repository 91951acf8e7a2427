"""
Differential central simple algebras (M_n(F), delta_P).
"""

from .algebra import (
    AdjointSys,
    DeltaCSA,
    adjoint_conjugation,
    adjoint_matrix,
    adjoint_system,
    apply_delta,
    compose_witnesses,
    gauge_transform,
    is_split,
    iso_witness_check,
    make_traceless,
    split_witness,
    splitting_degree,
    to_pgl_torsor,
    transport_check,
    transport_witness,
)

__all__ = [
    "AdjointSys",
    "DeltaCSA",
    "adjoint_conjugation",
    "adjoint_matrix",
    "adjoint_system",
    "apply_delta",
    "compose_witnesses",
    "gauge_transform",
    "is_split",
    "iso_witness_check",
    "make_traceless",
    "split_witness",
    "splitting_degree",
    "to_pgl_torsor",
    "transport_check",
    "transport_witness",
]
