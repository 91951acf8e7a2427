"""
Exact arithmetic in the base differential field F = Q(zeta_N)(x).
"""

from .constants import ConstantField, CycloNum, get_constant_field
from .ratfunc import DiffField, RatFunc, get_field
from .polys import (
    PartialFractions,
    PartialFractionTerm,
    factor_irreducible,
    partial_fractions,
    poly_gcd,
    residue_ratio,
    squarefree_part,
)
from .parser import format_ratfunc, parse
from .logderiv import LogScaling, is_log_derivative, log_derivative, log_scalable, witness_value
from .domain import FunctionFieldDomain, get_domain
from .matrix import RatMatrix, kron_power, kron_sum

__all__ = [
    "ConstantField",
    "CycloNum",
    "get_constant_field",
    "DiffField",
    "RatFunc",
    "get_field",
    "PartialFractions",
    "PartialFractionTerm",
    "factor_irreducible",
    "partial_fractions",
    "poly_gcd",
    "residue_ratio",
    "squarefree_part",
    "format_ratfunc",
    "parse",
    "LogScaling",
    "is_log_derivative",
    "log_derivative",
    "log_scalable",
    "witness_value",
    "FunctionFieldDomain",
    "get_domain",
    "RatMatrix",
    "kron_power",
    "kron_sum",
]
