"""
Dense matrices over F = C0(x).
"""

import logging
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from pvkit.exceptions import DimensionMismatchError, SingularMatrixError
from pvkit.fieldcore.domain import get_domain
from pvkit.fieldcore.ratfunc import DiffField, RatFunc, Scalar

logger = logging.getLogger(__name__)


class RatMatrix:
    """Immutable matrix of RatFunc entries."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: DiffField, rows: Iterable[Iterable[Scalar]], ncols: Optional[int] = None):
        self.field = field
        self.rows: Tuple[Tuple[RatFunc, ...], ...] = tuple(tuple(field.coerce(v) for v in row) for row in rows)
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(row) != self.ncols for row in self.rows):
                raise DimensionMismatchError("ragged matrix rows")
        else:
            self.ncols = ncols or 0

    # constructors

    @classmethod
    def zeros(cls, field: DiffField, nrows: int, ncols: int) -> "RatMatrix":
        return cls(field, [[field.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: DiffField, n: int) -> "RatMatrix":
        return cls.scalar(field, n, field.one)

    @classmethod
    def scalar(cls, field: DiffField, n: int, value: Scalar) -> "RatMatrix":
        value = field.coerce(value)
        return cls(field, [[value if i == j else field.zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, field: DiffField, entries: Sequence[Scalar]) -> "RatMatrix":
        n = len(entries)
        return cls(
            field, [[field.coerce(entries[i]) if i == j else field.zero for j in range(n)] for i in range(n)], n
        )

    @classmethod
    def from_function(cls, field: DiffField, nrows: int, ncols: int, fn: Callable[[int, int], Scalar]) -> "RatMatrix":
        return cls(field, [[fn(i, j) for j in range(ncols)] for i in range(nrows)], ncols)

    @classmethod
    def from_strings(cls, field: DiffField, entries: Sequence[Sequence[str]]) -> "RatMatrix":
        return cls(field, [[field.parse(text) for text in row] for row in entries])

    @classmethod
    def column(cls, field: DiffField, entries: Sequence[Scalar]) -> "RatMatrix":
        return cls(field, [[v] for v in entries], 1)

    @classmethod
    def from_columns(cls, field: DiffField, columns: Sequence["RatMatrix"], nrows: int) -> "RatMatrix":
        if not columns:
            return cls.zeros(field, nrows, 0)
        return cls(field, [[col.rows[i][0] for col in columns] for i in range(nrows)], len(columns))

    # shape and access

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, index: Tuple[int, int]) -> RatFunc:
        i, j = index
        return self.rows[i][j]

    def get_column(self, j: int) -> "RatMatrix":
        return RatMatrix(self.field, [[row[j]] for row in self.rows], 1)

    def columns(self) -> List["RatMatrix"]:
        return [self.get_column(j) for j in range(self.ncols)]

    def entries(self) -> List[RatFunc]:
        """Column-vector entries (for n x 1 matrices) or row-major entries."""
        return [v for row in self.rows for v in row]

    def to_strings(self) -> List[List[str]]:
        return [[str(v) for v in row] for row in self.rows]

    # arithmetic

    def _check_same_shape(self, other: "RatMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shape {self.shape} does not match {other.shape}")

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(self.field, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(self.field, [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.field, [[-a for a in row] for row in self.rows], self.ncols)

    def scale(self, value: Scalar) -> "RatMatrix":
        value = self.field.coerce(value)
        return RatMatrix(self.field, [[a * value for a in row] for row in self.rows], self.ncols)

    def __mul__(self, other) -> "RatMatrix":
        if not isinstance(other, RatMatrix):
            return self.scale(other)
        if self.ncols != other.nrows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.field.zero
        cols = list(zip(*other.rows)) if other.nrows else [() for _ in range(other.ncols)]
        result = []
        for row in self.rows:
            out = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if not a.is_zero and not b.is_zero:
                        acc = acc + a * b
                out.append(acc)
            result.append(out)
        return RatMatrix(self.field, result, other.ncols)

    def __rmul__(self, other) -> "RatMatrix":
        return self.scale(other)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.field, [list(col) for col in zip(*self.rows)], self.nrows)

    def derive(self) -> "RatMatrix":
        return RatMatrix(self.field, [[a.derive() for a in row] for row in self.rows], self.ncols)

    def trace(self) -> RatFunc:
        if not self.is_square:
            raise DimensionMismatchError(f"trace of non-square matrix {self.shape}")
        total = self.field.zero
        for i in range(self.nrows):
            total = total + self.rows[i][i]
        return total

    def kron(self, other: "RatMatrix") -> "RatMatrix":
        """Kronecker product, index (i, k) -> i * other.nrows + k."""
        rows = []
        for r1 in self.rows:
            for r2 in other.rows:
                rows.append([a * b if not a.is_zero else self.field.zero for a in r1 for b in r2])
        return RatMatrix(self.field, rows, self.ncols * other.ncols)

    def block_diag(self, other: "RatMatrix") -> "RatMatrix":
        zero = self.field.zero
        rows = [list(row) + [zero] * other.ncols for row in self.rows]
        rows += [[zero] * self.ncols + list(row) for row in other.rows]
        return RatMatrix(self.field, rows, self.ncols + other.ncols)

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.nrows != other.nrows:
            raise DimensionMismatchError(f"cannot stack {self.shape} beside {other.shape}")
        return RatMatrix(self.field, [list(a) + list(b) for a, b in zip(self.rows, other.rows)], self.ncols + other.ncols)

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.ncols:
            raise DimensionMismatchError(f"cannot stack {self.shape} above {other.shape}")
        return RatMatrix(self.field, list(self.rows) + list(other.rows), self.ncols)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "RatMatrix":
        return RatMatrix(self.field, [[self.rows[i][j] for j in col_indices] for i in row_indices], len(col_indices))

    # predicates

    def is_zero(self) -> bool:
        return all(a.is_zero for row in self.rows for a in row)

    def is_identity(self) -> bool:
        return self.is_square and all(
            (a.is_one if i == j else a.is_zero) for i, row in enumerate(self.rows) for j, a in enumerate(row)
        )

    def is_diagonal(self) -> bool:
        return self.is_square and all(
            a.is_zero for i, row in enumerate(self.rows) for j, a in enumerate(row) if i != j
        )

    def is_constant(self) -> bool:
        return all(a.is_constant for row in self.rows for a in row)

    def diagonal(self) -> List[RatFunc]:
        return [self.rows[i][i] for i in range(min(self.nrows, self.ncols))]

    # linear algebra

    def to_domain_matrix(self) -> DomainMatrix:
        return DomainMatrix([list(row) for row in self.rows], self.shape, get_domain(self.field))

    @classmethod
    def from_domain_matrix(cls, field: DiffField, matrix: DomainMatrix) -> "RatMatrix":
        return cls(field, matrix.to_list(), matrix.shape[1])

    def _rref(self) -> Tuple[DomainMatrix, Tuple[int, ...]]:
        if not self.nrows or not self.ncols:
            return self.to_domain_matrix(), ()
        logger.debug(f"Row reducing a {self.nrows}x{self.ncols} matrix over {self.field}")
        return self.to_domain_matrix().rref(method="GJ")

    def rank(self) -> int:
        return len(self._rref()[1])

    def pivot_columns(self) -> List[int]:
        """Columns holding the pivots of the reduced row echelon form."""
        return list(self._rref()[1])

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.nrows

    def inverse(self) -> "RatMatrix":
        if not self.is_square:
            raise SingularMatrixError(f"matrix of shape {self.shape} is not invertible")
        n = self.nrows
        reduced, pivots = self.hstack(RatMatrix.identity(self.field, n))._rref()
        if tuple(pivots) != tuple(range(n)):
            raise SingularMatrixError("matrix is singular")
        return RatMatrix.from_domain_matrix(self.field, reduced.extract(list(range(n)), list(range(n, 2 * n))))

    def nullspace(self) -> List["RatMatrix"]:
        """Basis of {v : self * v = 0} as column vectors, one per free column."""
        if not self.nrows:
            return RatMatrix.identity(self.field, self.ncols).columns()
        reduced, pivots = self._rref()
        if len(pivots) == self.ncols:
            return []
        basis = reduced.nullspace_from_rref(list(pivots))
        return RatMatrix.from_domain_matrix(self.field, basis).transpose().columns()

    def solve(self, rhs: "RatMatrix") -> Optional["RatMatrix"]:
        """A solution X of self * X = rhs (free variables set to zero), or None."""
        if rhs.nrows != self.nrows:
            raise DimensionMismatchError(f"right-hand side {rhs.shape} does not fit {self.shape}")
        n = self.ncols
        reduced, pivots = self.hstack(rhs)._rref()
        if any(p >= n for p in pivots):
            return None
        rows = reduced.to_list()
        solution = [[self.field.zero] * rhs.ncols for _ in range(n)]
        for r, p in enumerate(pivots):
            solution[p] = rows[r][n:]
        return RatMatrix(self.field, solution, rhs.ncols)

    # comparison

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"RatMatrix({self.to_strings()})"


def kron_power(matrix: RatMatrix, n: int) -> RatMatrix:
    """matrix tensored with itself n times (the 1 x 1 identity when n = 0)."""
    result = RatMatrix.identity(matrix.field, 1)
    for _ in range(n):
        result = result.kron(matrix)
    return result


def kron_sum(field: DiffField, blocks: Sequence[RatMatrix]) -> RatMatrix:
    """sum_p I (x) ... (x) blocks[p] (x) ... (x) I: the derivation of a tensor product."""
    dims = [b.nrows for b in blocks]
    total = 1
    for d in dims:
        total *= d
    result = RatMatrix.zeros(field, total, total)
    for p, block in enumerate(blocks):
        left = 1
        for d in dims[:p]:
            left *= d
        right = 1
        for d in dims[p + 1:]:
            right *= d
        term = RatMatrix.identity(field, left).kron(block).kron(RatMatrix.identity(field, right))
        result = result + term
    return result
