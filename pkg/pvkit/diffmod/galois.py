"""
Differential Galois groups of rank-one and diagonal systems.

For Y' = diag(a_1, ..., a_n) Y the group is the subgroup of G_m^n cut out by
the characters m with sum m_i a_i a logarithmic derivative. Those m form the
character lattice L, and the group is Hom(Z^n / L, G_m).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Poly

from pvkit.diffmod.lattice import CharLattice, hermite_normal_form, integer_kernel
from pvkit.diffmod.linsys import GaugeWitness
from pvkit.exceptions import DimensionMismatchError
from pvkit.fieldcore.logderiv import expand, is_log_derivative, log_scalable, witness_value
from pvkit.fieldcore.matrix import RatMatrix
from pvkit.fieldcore.polys import coefficient, degree, factor_sort_key, residue_ratio
from pvkit.fieldcore.ratfunc import RatFunc

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagGroup:
    """G_m^torus_rank x prod mu(d) for d in finite_factors (each d > 1, d_i | d_(i+1))."""

    torus_rank: int
    finite_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.torus_rank < 0 or any(d <= 1 for d in self.finite_factors):
            raise ValueError(f"invalid diagonal group data {self.torus_rank}, {self.finite_factors}")

    def dimension(self) -> int:
        return self.torus_rank

    def component_order(self) -> int:
        order = 1
        for d in self.finite_factors:
            order *= d
        return order

    def is_trivial(self) -> bool:
        return self.torus_rank == 0 and not self.finite_factors

    def describe(self) -> str:
        parts = []
        if self.torus_rank == 1:
            parts.append("G_m")
        elif self.torus_rank > 1:
            parts.append(f"G_m^{self.torus_rank}")
        parts.extend(f"mu({d})" for d in self.finite_factors)
        return " x ".join(parts) if parts else "trivial"

    def to_dict(self) -> dict:
        return {
            "description": self.describe(),
            "torus_rank": self.torus_rank,
            "finite_factors": list(self.finite_factors),
            "dimension": self.dimension(),
        }


def rank1_group(a: RatFunc) -> DiagGroup:
    """Galois group of y' = a y."""
    if is_log_derivative(a) is not None:
        group = DiagGroup(0)
    else:
        scaling = log_scalable(a)
        group = DiagGroup(0, (scaling.k,)) if scaling is not None else DiagGroup(1)
    logger.info(f"rank1_group({a}) = {group.describe()}")
    return group


def rational_solution_rank1(a: RatFunc) -> Optional[RatFunc]:
    """Nonzero y in F with y' = a y, if any."""
    witness = is_log_derivative(a)
    if witness is None:
        return None
    return witness_value(a.field, witness)


def rank1_gauge_equivalent(a: RatFunc, b: RatFunc) -> Optional[GaugeWitness]:
    """p with p'/p + a = b, as a 1 x 1 gauge witness from y' = a y to y' = b y."""
    p = rational_solution_rank1(b - a)
    if p is None:
        return None
    field = a.field
    return GaugeWitness(RatMatrix(field, [[p]]), RatMatrix(field, [[p.inverse()]]))


def _coordinates(field, element) -> Tuple[Fraction, ...]:
    return field.constants.coordinates(element)


def _constraint_rows(functions: Sequence[RatFunc]) -> Tuple[List[List[Fraction]], List[List[Fraction]]]:
    """
    Linear conditions on m for sum m_i a_i to be a logarithmic derivative:
    rows that must vanish and rows that must take integer values.
    """
    field = functions[0].field
    phi = field.constants.degree
    expansions = [expand(f) for f in functions]
    zero_rows: List[List[Fraction]] = []
    integral_rows: List[List[Fraction]] = []

    def emit(polys: Sequence[Poly], span: int, integral_slot: bool) -> None:
        for power in range(span):
            coords = [_coordinates(field, coefficient(p, power)) for p in polys]
            for u in range(phi):
                row = [c[u] for c in coords]
                if not any(row):
                    continue
                if integral_slot and power == 0 and u == 0:
                    integral_rows.append(row)
                else:
                    zero_rows.append(row)

    top = max(degree(pf.polypart) for pf in expansions)
    emit([pf.polypart for pf in expansions], top + 1, False)

    factors: Dict[Tuple[int, str], Poly] = {}
    for pf in expansions:
        for term in pf.terms:
            factors.setdefault(factor_sort_key(term.factor), term.factor)

    zero_poly = field.zero.num
    for key in sorted(factors):
        p = factors[key]
        span = degree(p)
        exponents = {term.exponent for pf in expansions for term in pf.terms if term.factor == p}
        for e in sorted(exponents):
            polys = []
            for pf in expansions:
                match = next((t for t in pf.terms if t.factor == p and t.exponent == e), None)
                if match is None:
                    polys.append(zero_poly)
                elif e == 1:
                    polys.append(residue_ratio(match))
                else:
                    polys.append(match.numerator)
            emit(polys, span, e == 1)
    return zero_rows, integral_rows


def char_lattice(functions: Sequence[RatFunc]) -> CharLattice:
    """Lattice of m in Z^n with sum m_i a_i a logarithmic derivative."""
    n = len(functions)
    if n == 0:
        raise DimensionMismatchError("need at least one diagonal entry")
    zero_rows, integral_rows = _constraint_rows(functions)
    if not zero_rows and not integral_rows:
        basis = hermite_normal_form([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)
        return CharLattice(n, tuple(basis))

    scale = lcm(*(q.denominator for row in zero_rows + integral_rows for q in row))
    k = len(integral_rows)
    system = [[int(q * scale) for q in row] + [0] * k for row in zero_rows]
    for t, row in enumerate(integral_rows):
        system.append([int(q * scale) for q in row] + [-scale if s == t else 0 for s in range(k)])
    kernel = integer_kernel(system, n + k)
    basis = hermite_normal_form([list(v[:n]) for v in kernel], n)
    logger.debug(f"character lattice basis {basis}")
    return CharLattice(n, tuple(basis))


def diag_group(functions: Sequence[RatFunc]) -> DiagGroup:
    """Galois group of Y' = diag(functions) Y."""
    lattice = char_lattice(functions)
    torus_rank, finite = lattice.quotient_invariants()
    group = DiagGroup(torus_rank, finite)
    logger.info(f"diag_group of {len(functions)} entries = {group.describe()}")
    return group


def diagonal_entries(A: RatMatrix) -> List[RatFunc]:
    if not A.is_diagonal():
        raise DimensionMismatchError("system matrix is not diagonal")
    return A.diagonal()
