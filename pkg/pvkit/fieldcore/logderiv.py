"""
Logarithmic-derivative tests.

f is a logarithmic derivative u'/u exactly when its partial fractions have no
polynomial part, only simple poles, and every residue a/p' is an integer.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Tuple

from sympy import Poly

from pvkit.fieldcore.polys import PartialFractions, degree, leading_coefficient, partial_fractions, residue_ratio
from pvkit.fieldcore.ratfunc import DiffField, RatFunc

logger = logging.getLogger(__name__)

Witness = Tuple[Tuple[Poly, int], ...]


@dataclass(frozen=True)
class LogScaling:
    """k*f = u'/u with u = prod p_i^n_i given by witness."""

    k: int
    witness: Witness


def expand(f: RatFunc) -> PartialFractions:
    return partial_fractions(f.num, f.den)


def simple_residues(f: RatFunc) -> Optional[Tuple[Tuple[Poly, Poly], ...]]:
    """
    (p, residue) pairs when f has no polynomial part and only simple poles,
    otherwise None.
    """
    pf = expand(f)
    if not pf.polypart.is_zero:
        return None
    pairs = []
    for term in pf.terms:
        if term.exponent != 1:
            return None
        pairs.append((term.factor, residue_ratio(term)))
    return tuple(pairs)


def _rational_residue(field: DiffField, residue: Poly) -> Optional[Fraction]:
    if degree(residue) > 0:
        return None
    coords = field.constants.coordinates(leading_coefficient(residue))
    if any(c != 0 for c in coords[1:]):
        return None
    return coords[0]


def is_log_derivative(f: RatFunc) -> Optional[Witness]:
    """Witness ((p_i, n_i), ...) with f = sum n_i p_i'/p_i, or None."""
    if f.is_zero:
        return ()
    residues = simple_residues(f)
    if residues is None:
        return None
    witness = []
    for factor, residue in residues:
        value = _rational_residue(f.field, residue)
        if value is None or value.denominator != 1:
            return None
        witness.append((factor, int(value)))
    return tuple(witness)


def log_scalable(f: RatFunc) -> Optional[LogScaling]:
    """Minimal k >= 1 with k*f a logarithmic derivative, or None if none exists."""
    if f.is_zero:
        return LogScaling(1, ())
    residues = simple_residues(f)
    if residues is None:
        return None
    values = []
    for factor, residue in residues:
        value = _rational_residue(f.field, residue)
        if value is None:
            return None
        values.append((factor, value))
    k = lcm(*(value.denominator for _, value in values)) if values else 1
    witness = tuple((factor, int(value * k)) for factor, value in values)
    logger.debug(f"log_scalable({f}) -> k={k}")
    return LogScaling(k, witness)


def witness_value(field: DiffField, witness: Witness) -> RatFunc:
    """prod p_i ** n_i."""
    result = field.one
    for factor, exponent in witness:
        result = result * field.element(factor) ** exponent
    return result


def log_derivative(u: RatFunc) -> RatFunc:
    """u'/u."""
    return u.derive() / u
