"""
Polynomial algorithms over Q(zeta_N)[x]: gcd, square-free part,
factorization into monic irreducibles and partial fractions.
"""

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

from sympy import Poly

from pvkit.config import settings
from pvkit.exceptions import DegreeLimitError

logger = logging.getLogger(__name__)


def leading_coefficient(p: Poly):
    """Leading coefficient as a domain element (zero for the zero polynomial)."""
    coeffs = p.rep.to_list()
    return coeffs[0] if coeffs else p.get_domain().zero


def coefficient(p: Poly, power: int):
    """Coefficient of x**power as a domain element."""
    coeffs = p.rep.to_list()
    index = len(coeffs) - 1 - power
    if index < 0 or index >= len(coeffs) or power < 0:
        return p.get_domain().zero
    return coeffs[index]


def degree(p: Poly) -> int:
    """Degree with -1 for the zero polynomial."""
    return -1 if p.is_zero else int(p.degree())


def make_monic(p: Poly) -> Poly:
    return p if p.is_zero else p.monic()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero only when both inputs are zero)."""
    return make_monic(a.gcd(b))


def squarefree_part(a: Poly) -> Poly:
    if degree(a) <= 0:
        return a
    return make_monic(a.sqf_part())


def factor_sort_key(p: Poly) -> Tuple[int, str]:
    return degree(p), str(p.rep.to_list())


def factor_irreducible(a: Poly) -> List[Tuple[Poly, int]]:
    """Monic irreducible factors of a with multiplicities, in a deterministic order."""
    if degree(a) <= 0:
        return []
    if degree(a) > settings.MAX_FACTOR_DEGREE:
        raise DegreeLimitError(
            f"cannot factor a polynomial of degree {degree(a)} "
            f"(limit {settings.MAX_FACTOR_DEGREE})"
        )
    _, factors = a.factor_list()
    result = [(make_monic(f), int(m)) for f, m in factors if degree(f) > 0]
    result.sort(key=lambda item: factor_sort_key(item[0]))
    return result


class PartialFractionTerm(NamedTuple):
    """numerator / factor**exponent with deg numerator < deg factor."""

    factor: Poly
    exponent: int
    numerator: Poly


@dataclass(frozen=True)
class PartialFractions:
    polypart: Poly
    terms: Tuple[PartialFractionTerm, ...]

    def factors(self) -> List[Poly]:
        seen = []
        for term in self.terms:
            if all(term.factor != p for p in seen):
                seen.append(term.factor)
        return seen


def partial_fractions(num: Poly, den: Poly) -> PartialFractions:
    """
    Decompose num/den (den monic, coprime to num) into a polynomial part and
    nonzero terms a/p^e over the monic irreducible factors p of den.
    """
    polypart, rest = num.div(den)
    if rest.is_zero:
        return PartialFractions(polypart, ())

    terms: List[PartialFractionTerm] = []
    for factor, multiplicity in factor_irreducible(den):
        prime_power = factor ** multiplicity
        cofactor = den.exquo(prime_power)
        local = (rest * cofactor.invert(prime_power)).rem(prime_power)
        depth = 0
        # factor-adic expansion: local = sum_j c_j factor^j
        while not local.is_zero:
            local, digit = local.div(factor)
            if not digit.is_zero:
                terms.append(PartialFractionTerm(factor, multiplicity - depth, digit))
            depth += 1

    terms.sort(key=lambda t: (factor_sort_key(t.factor), t.exponent))
    return PartialFractions(polypart, tuple(terms))


def residue_ratio(term: PartialFractionTerm) -> Poly:
    """a * (p')^-1 mod p: the residue of a/p at every root of p."""
    factor = term.factor
    return (term.numerator * factor.diff().invert(factor)).rem(factor)
