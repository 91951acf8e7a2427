"""
Integer lattice tools on top of sympy's normal forms over ZZ.

Lattices are spanned by integer row vectors. Hermite forms are returned in
row echelon shape: positive leading entries, entries above each leading
entry reduced into [0, leading entry).
"""

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form as _column_hnf
from sympy.polys.matrices.normalforms import invariant_factors, smith_normal_decomp

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]


def to_domain_matrix(rows: Sequence[Sequence[int]], ncols: int) -> DomainMatrix:
    return DomainMatrix([[ZZ(v) for v in row] for row in rows], (len(rows), ncols), ZZ)


def to_int_rows(matrix: DomainMatrix) -> IntMatrix:
    return [[int(v) for v in row] for row in matrix.to_list()]


class SmithForm(NamedTuple):
    """U * M * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ..."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> List[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.V))) if self.D[i][i] != 0]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(matrix: Sequence[Sequence[int]], ncols: int = None) -> SmithForm:
    m = len(matrix)
    n = len(matrix[0]) if m else (ncols or 0)
    D, U, V = smith_normal_decomp(to_domain_matrix(matrix, n))
    return SmithForm(to_int_rows(U), to_int_rows(D), to_int_rows(V))


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> List[Tuple[int, ...]]:
    """Row Hermite normal form of the lattice spanned by rows; zero rows dropped."""
    nonzero = [list(r) for r in rows if any(r)]
    if not nonzero:
        return []
    # sympy reduces columns with pivots at the bottom; reversing coordinates
    # and column order turns that into the row echelon convention
    flipped = to_domain_matrix([list(reversed(r)) for r in nonzero], ncols).transpose()
    W = to_int_rows(_column_hnf(flipped).transpose())
    return [tuple(reversed(col)) for col in reversed(W)]


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> List[Tuple[int, ...]]:
    """Z-basis of {v in Z^ncols : matrix * v = 0}."""
    if not matrix:
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    form = smith_normal_form(matrix, ncols)
    # D = U M V with V unimodular: the columns of V over zero diagonal slots span the kernel
    free = [j for j in range(ncols) if j >= len(form.D) or form.D[j][j] == 0]
    return [tuple(form.V[i][j] for i in range(ncols)) for j in free]


@dataclass(frozen=True)
class CharLattice:
    """Sublattice of Z^n given by a basis in Hermite normal form."""

    n: int
    basis: Tuple[Tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, vector: Sequence[int]) -> bool:
        if len(vector) != self.n:
            raise ValueError(f"expected a vector of length {self.n}")
        rest = list(vector)
        for row in self.basis:
            c = next(j for j, v in enumerate(row) if v != 0)
            if rest[c] % row[c] != 0:
                return False
            q = rest[c] // row[c]
            rest = [a - q * b for a, b in zip(rest, row)]
        return not any(rest)

    def quotient_invariants(self) -> Tuple[int, Tuple[int, ...]]:
        """(free rank, invariant factors > 1) of Z^n / L."""
        if not self.basis:
            return self.n, ()
        factors = [abs(int(d)) for d in invariant_factors(to_domain_matrix(self.basis, self.n)) if d != 0]
        logger.debug(f"lattice invariant factors {factors}")
        return self.n - len(factors), tuple(d for d in factors if d > 1)
