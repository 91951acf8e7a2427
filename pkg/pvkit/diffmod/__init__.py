"""
Differential modules: linear systems, gauge equivalence and diagonal Galois groups.
"""

from .linsys import (
    GaugeWitness,
    LinSys,
    compose_witnesses,
    direct_sum,
    dual,
    gauge,
    inverse_witness,
    is_gauge_witness,
    tensor,
)
from .lattice import CharLattice, SmithForm, hermite_normal_form, integer_kernel, smith_normal_form
from .galois import (
    DiagGroup,
    char_lattice,
    diag_group,
    diagonal_entries,
    rank1_gauge_equivalent,
    rank1_group,
    rational_solution_rank1,
)

__all__ = [
    "GaugeWitness",
    "LinSys",
    "compose_witnesses",
    "direct_sum",
    "dual",
    "gauge",
    "inverse_witness",
    "is_gauge_witness",
    "tensor",
    "CharLattice",
    "SmithForm",
    "hermite_normal_form",
    "integer_kernel",
    "smith_normal_form",
    "DiagGroup",
    "char_lattice",
    "diag_group",
    "diagonal_entries",
    "rank1_gauge_equivalent",
    "rank1_group",
    "rational_solution_rank1",
]
