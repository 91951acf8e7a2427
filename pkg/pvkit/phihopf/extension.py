"""
Finite differential Hopf-Galois extensions S/F for a finite constant group.

S is a commutative F-algebra of dimension k with basis e_0..e_(k-1):

  mult[i][j]   coordinates of e_i * e_j
  derivation   E with delta(e_j) = sum_i E[i][j] e_i (the algebra derivation)
  coaction[g]  matrix of rho_g = (1 (x) ev_g) o Delta_S, so that
               Delta_S(s) = sum_g rho_g(s) (x) delta_g
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from pvkit.exceptions import ConstantsFieldError, DimensionMismatchError, InputError
from pvkit.fieldcore.matrix import RatMatrix
from pvkit.fieldcore.ratfunc import DiffField, RatFunc
from pvkit.phihopf.groups import FinGroupHopf

logger = logging.getLogger(__name__)

Vector = Tuple[RatFunc, ...]


@dataclass(frozen=True)
class HopfGaloisCheck:
    failures: Tuple[str, ...]
    can_rank: int
    can_shape: Tuple[int, int]

    @property
    def is_hopf_galois(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "is_hopf_galois": self.is_hopf_galois,
            "failures": list(self.failures),
            "can_rank": self.can_rank,
            "can_shape": list(self.can_shape),
        }


@dataclass(frozen=True)
class FinHopfGalois:
    field: DiffField
    group: FinGroupHopf
    mult: Tuple[Tuple[Vector, ...], ...]
    derivation: RatMatrix
    coaction: Tuple[RatMatrix, ...]
    name: str = "S"

    def __post_init__(self):
        k = self.dim
        if any(len(row) != k for row in self.mult) or any(len(v) != k for row in self.mult for v in row):
            raise DimensionMismatchError(f"structure constants must form a {k} x {k} x {k} table")
        if self.derivation.shape != (k, k):
            raise DimensionMismatchError(f"derivation must be {k} x {k}, got {self.derivation.shape}")
        if len(self.coaction) != self.group.order:
            raise DimensionMismatchError(
                f"expected one coaction matrix per group element ({self.group.order}), got {len(self.coaction)}"
            )
        if any(m.shape != (k, k) for m in self.coaction):
            raise DimensionMismatchError(f"coaction matrices must be {k} x {k}")

    @property
    def dim(self) -> int:
        return len(self.mult)

    # constructors

    @classmethod
    def kummer(cls, field: DiffField, k: int) -> "FinHopfGalois":
        """F[t]/(t^k - x) with t' = t/(k x) and mu_k acting by t -> zeta_k^s t."""
        if k < 1:
            raise InputError(f"Kummer degree must be positive, got {k}")
        constants = field.constants
        if constants.root_count % k != 0:
            raise ConstantsFieldError(
                f"requires larger constants field: the Kummer coaction for k={k} needs zeta_{k}"
            )
        zero, one, x = field.zero, field.one, field.x

        def basis_product(i: int, j: int) -> Vector:
            coords = [zero] * k
            total = i + j
            coords[total % k] = x if total >= k else one
            return tuple(coords)

        mult = tuple(tuple(basis_product(i, j) for j in range(k)) for i in range(k))
        derivation = RatMatrix.diag(field, [field.from_int(i) / (k * x) for i in range(k)])
        coaction = tuple(
            RatMatrix.diag(field, [field.root_of_unity(k, s * i) for i in range(k)]) for s in range(k)
        )
        return cls(field, FinGroupHopf.cyclic(k), mult, derivation, coaction, name=f"kummer-{k}")

    @classmethod
    def split(cls, field: DiffField, group: FinGroupHopf) -> "FinHopfGalois":
        """Functions on the group, idempotents e_h, with rho_g(e_h) = e_(h g^-1)."""
        k = group.order
        zero, one = field.zero, field.one

        def basis_product(i: int, j: int) -> Vector:
            return tuple(one if (i == j == l) else zero for l in range(k))

        mult = tuple(tuple(basis_product(i, j) for j in range(k)) for i in range(k))
        coaction = tuple(
            RatMatrix.from_function(
                field, k, k, lambda row, col, g=g: one if row == group.multiply(col, group.inverse(g)) else zero
            )
            for g in range(k)
        )
        return cls(field, group, mult, RatMatrix.zeros(field, k, k), coaction, name=f"split-{k}")

    @classmethod
    def trivial(cls, field: DiffField) -> "FinHopfGalois":
        return cls.split(field, FinGroupHopf.trivial())

    def with_coaction(self, coaction: Sequence[RatMatrix], name: Optional[str] = None) -> "FinHopfGalois":
        return FinHopfGalois(self.field, self.group, self.mult, self.derivation, tuple(coaction), name or self.name)

    def with_trivial_coaction(self) -> "FinHopfGalois":
        """s -> s (x) 1."""
        identity = RatMatrix.identity(self.field, self.dim)
        return self.with_coaction([identity] * self.group.order, f"{self.name}-trivial-coaction")

    def with_zero_coaction(self) -> "FinHopfGalois":
        zero = RatMatrix.zeros(self.field, self.dim, self.dim)
        return self.with_coaction([zero] * self.group.order, f"{self.name}-zero-coaction")

    # algebra

    def multiply(self, u: Sequence[RatFunc], v: Sequence[RatFunc]) -> Vector:
        k = self.dim
        out = [self.field.zero] * k
        for i in range(k):
            if u[i].is_zero:
                continue
            for j in range(k):
                if v[j].is_zero:
                    continue
                coeff = u[i] * v[j]
                for l, c in enumerate(self.mult[i][j]):
                    if not c.is_zero:
                        out[l] = out[l] + coeff * c
        return tuple(out)

    def multiplication_matrix(self, j: int) -> RatMatrix:
        """Matrix of s -> s * e_j."""
        k = self.dim
        return RatMatrix.from_function(self.field, k, k, lambda l, m: self.mult[m][j][l])

    def unit(self) -> Optional[Vector]:
        """Coordinates of 1_S, or None when S has no unit."""
        k = self.dim
        # u * e_j = e_j for all j: sum_i u_i mult[i][j][l] = delta_jl
        rows = []
        rhs = []
        for j in range(k):
            for l in range(k):
                rows.append([self.mult[i][j][l] for i in range(k)])
                rhs.append([self.field.one if j == l else self.field.zero])
        system = RatMatrix(self.field, rows)
        solution = system.solve(RatMatrix(self.field, rhs))
        if solution is None:
            return None
        return tuple(solution.entries())

    def derive(self, v: Sequence[RatFunc]) -> Vector:
        """delta(sum v_j e_j) = sum v_j' e_j + v_j delta(e_j)."""
        column = RatMatrix.column(self.field, v)
        return tuple((column.derive() + self.derivation * column).entries())

    def module_connection(self) -> RatMatrix:
        """S as a differential module in the connection convention: -E."""
        return -self.derivation

    def coaction_table(self) -> RatMatrix:
        """k x (k * |G|) matrix: column (j, g) holds rho_g(e_j)."""
        k, order = self.dim, self.group.order
        return RatMatrix.from_function(
            self.field, k, k * order, lambda i, col: self.coaction[col % order][i, col // order]
        )

    def basis_vector(self, i: int) -> Vector:
        return tuple(self.field.one if j == i else self.field.zero for j in range(self.dim))


def can_map(S: FinHopfGalois) -> RatMatrix:
    """
    Matrix of s (x) s' -> (s (x) 1) Delta_S(s') from S (x) S to S (x) H.

    Rows are indexed by (l, g) -> l * |G| + g, columns by (i, j) -> i * k + j.
    """
    k, order = S.dim, S.group.order
    field = S.field
    rows = [[field.zero] * (k * k) for _ in range(k * order)]
    for g in range(order):
        rho = S.coaction[g]
        for i in range(k):
            for j in range(k):
                # e_i * rho_g(e_j) = sum_m rho_g[m][j] e_i e_m
                for m in range(k):
                    weight = rho[m, j]
                    if weight.is_zero:
                        continue
                    for l, c in enumerate(S.mult[i][m]):
                        if not c.is_zero:
                            rows[l * order + g][i * k + j] = rows[l * order + g][i * k + j] + weight * c
    return RatMatrix(field, rows, k * k)


def _algebra_failures(S: FinHopfGalois) -> List[str]:
    failures = []
    k = S.dim
    basis = [S.basis_vector(i) for i in range(k)]
    if any(S.mult[i][j] != S.mult[j][i] for i in range(k) for j in range(k)):
        failures.append("multiplication is not commutative")
    for i in range(k):
        for j in range(k):
            for l in range(k):
                if S.multiply(S.mult[i][j], basis[l]) != S.multiply(basis[i], S.mult[j][l]):
                    failures.append("multiplication is not associative")
                    return failures
    if S.unit() is None:
        failures.append("algebra has no unit")
    for i in range(k):
        for j in range(k):
            lhs = S.derive(S.mult[i][j])
            rhs = tuple(
                a + b for a, b in zip(S.multiply(S.derive(basis[i]), basis[j]), S.multiply(basis[i], S.derive(basis[j])))
            )
            if lhs != rhs:
                failures.append("derivation violates the Leibniz rule")
                return failures
    return failures


def _coaction_failures(S: FinHopfGalois) -> List[str]:
    failures = []
    field, group, k = S.field, S.group, S.dim
    if S.coaction[group.identity] != RatMatrix.identity(field, k):
        failures.append("coaction is not counital")
    if any(
        S.coaction[g] * S.coaction[h] != S.coaction[group.multiply(g, h)]
        for g in range(group.order)
        for h in range(group.order)
    ):
        failures.append("coaction is not coassociative")

    unit = S.unit()
    for g, rho in enumerate(S.coaction):

        def apply(v: Sequence[RatFunc], rho: RatMatrix = rho) -> Vector:
            return tuple((rho * RatMatrix.column(field, v)).entries())

        multiplicative = all(
            apply(S.mult[i][j]) == S.multiply(apply(S.basis_vector(i)), apply(S.basis_vector(j)))
            for i in range(k)
            for j in range(k)
        )
        if not multiplicative or (unit is not None and apply(unit) != unit):
            failures.append(f"coaction at {group.labels[g]} is not an algebra map")
            break
    for g, rho in enumerate(S.coaction):
        if rho.derive() + S.derivation * rho != rho * S.derivation:
            failures.append(f"coaction at {group.labels[g]} does not commute with the derivation")
            break
    return failures


def is_hopf_galois(S: FinHopfGalois) -> HopfGaloisCheck:
    """Check every axiom and the bijectivity of can_S; failures name the broken axioms."""
    failures = _algebra_failures(S) + _coaction_failures(S)
    if not S.group.hopf_axioms_hold():
        failures.append("group Hopf algebra axioms fail")
    can = can_map(S)
    rank = can.rank()
    if not can.is_square:
        failures.append(f"canonical map is not square ({can.nrows} x {can.ncols})")
    elif rank != can.nrows:
        failures.append(f"canonical map is singular (rank {rank} of {can.nrows})")
    if failures:
        logger.warning(f"{S.name} is not Hopf-Galois: {'; '.join(failures)}")
    else:
        logger.info(f"{S.name} is Hopf-Galois of degree {S.dim}")
    return HopfGaloisCheck(tuple(failures), rank, can.shape)
