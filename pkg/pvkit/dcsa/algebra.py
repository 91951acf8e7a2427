"""
Differential central simple algebras on M_n(F).

Every derivation of M_n(F) extending the one on F is
delta_P(x) = x' + P x - x P for a traceless P. Matrices in M_n are vectorized
row-major over e_11, e_12, ..., e_nn.

Witness convention: u relates P to Q when y -> u y u^-1 carries delta_Q to
delta_P, that is delta_P(u y u^-1) = u delta_Q(y) u^-1. If u relates P to Q
and v relates Q to R, then u v relates P to R.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Union

from sympy import Poly

from pvkit.config import settings
from pvkit.diffmod.linsys import GaugeWitness, LinSys
from pvkit.exceptions import DegreeLimitError, DimensionMismatchError, InputError
from pvkit.fieldcore.matrix import RatMatrix
from pvkit.fieldcore.polys import coefficient, degree, factor_irreducible, factor_sort_key
from pvkit.fieldcore.ratfunc import RatFunc
from pvkit.torsor.torsor import (
    PGL_ADJOINT_PRESENTATION,
    DiffTorsorGLn,
    SplitReport,
    splitting_report,
    torsor_iso_check,
)

logger = logging.getLogger(__name__)

Witness = Union[GaugeWitness, RatMatrix]


@dataclass(frozen=True)
class DeltaCSA:
    P: RatMatrix

    def __post_init__(self):
        if not self.P.is_square:
            raise DimensionMismatchError(f"P must be square, got {self.P.shape}")
        if not self.P.trace().is_zero:
            raise InputError(f"P must be traceless, trace is {self.P.trace()}")

    @property
    def n(self) -> int:
        return self.P.nrows

    @property
    def field(self):
        return self.P.field


@dataclass(frozen=True)
class AdjointSys:
    """vec(x)' = M vec(x), the linearization of delta_P(x) = 0."""

    system: LinSys

    @property
    def matrix(self) -> RatMatrix:
        return self.system.A


def _witness(u: Witness) -> GaugeWitness:
    return u if isinstance(u, GaugeWitness) else GaugeWitness.from_matrix(u)


def apply_delta(A: DeltaCSA, x: RatMatrix) -> RatMatrix:
    if x.shape != (A.n, A.n):
        raise DimensionMismatchError(f"element of shape {x.shape} in an algebra of degree {A.n}")
    return x.derive() + A.P * x - x * A.P


def make_traceless(P_raw: RatMatrix) -> DeltaCSA:
    if not P_raw.is_square:
        raise DimensionMismatchError(f"P must be square, got {P_raw.shape}")
    n = P_raw.nrows
    shift = P_raw.trace() / n
    return DeltaCSA(P_raw - RatMatrix.scalar(P_raw.field, n, shift))


def _unit_matrix(A: DeltaCSA, i: int, j: int) -> RatMatrix:
    field = A.field
    return RatMatrix.from_function(
        field, A.n, A.n, lambda r, c: field.one if (r, c) == (i, j) else field.zero
    )


def iso_witness_check(A: DeltaCSA, B: DeltaCSA, u: Witness) -> bool:
    """delta_A(u e_ij u^-1) = u delta_B(e_ij) u^-1 on every basis matrix."""
    if A.n != B.n:
        raise DimensionMismatchError(f"algebras of degrees {A.n} and {B.n}")
    w = _witness(u)
    if w.n != A.n:
        raise DimensionMismatchError(f"witness of size {w.n} for algebras of degree {A.n}")
    for i in range(A.n):
        for j in range(A.n):
            e = _unit_matrix(A, i, j)
            if apply_delta(A, w.P * e * w.P_inv) != w.P * apply_delta(B, e) * w.P_inv:
                return False
    return True


def gauge_transform(A: DeltaCSA, u: Witness) -> DeltaCSA:
    """The Q related to A.P by u: u^-1 u' + u^-1 P u - (1/n) tr(u^-1 u') I."""
    w = _witness(u)
    if w.n != A.n:
        raise DimensionMismatchError(f"witness of size {w.n} for an algebra of degree {A.n}")
    log_part = w.P_inv * w.P.derive()
    raw = log_part + w.P_inv * A.P * w.P
    return DeltaCSA(raw - RatMatrix.scalar(A.field, A.n, log_part.trace() / A.n))


def compose_witnesses(u: Witness, v: Witness) -> GaugeWitness:
    """u relating P to Q and v relating Q to R give u v relating P to R."""
    first, second = _witness(u), _witness(v)
    return GaugeWitness(first.P * second.P, second.P_inv * first.P_inv)


# adjoint presentation


def adjoint_matrix(A: DeltaCSA) -> RatMatrix:
    """(I (x) P^T) - (P (x) I): x -> x P - P x in row-major coordinates."""
    identity = RatMatrix.identity(A.field, A.n)
    return identity.kron(A.P.transpose()) - A.P.kron(identity)


def adjoint_system(A: DeltaCSA) -> AdjointSys:
    return AdjointSys(LinSys(adjoint_matrix(A)))


def adjoint_conjugation(u: Witness) -> GaugeWitness:
    """Ad(u) = u (x) (u^-1)^T, the matrix of y -> u y u^-1, with its inverse Ad(u^-1)."""
    w = _witness(u)
    return GaugeWitness(w.P.kron(w.P_inv.transpose()), w.P_inv.kron(w.P.transpose()))


def to_pgl_torsor(A: DeltaCSA) -> DiffTorsorGLn:
    return DiffTorsorGLn(adjoint_matrix(A), presentation=PGL_ADJOINT_PRESENTATION)


def transport_witness(u: Witness) -> GaugeWitness:
    """Torsor isomorphism to_pgl_torsor(P) -> to_pgl_torsor(Q) for u relating P to Q: Ad(u)^-1."""
    return adjoint_conjugation(u).inverse()


def transport_check(A: DeltaCSA, B: DeltaCSA, u: Witness) -> bool:
    return torsor_iso_check(to_pgl_torsor(A), to_pgl_torsor(B), transport_witness(u))


# splitting


def splitting_degree(A: DeltaCSA) -> SplitReport:
    """Exact for diagonal P through the adjoint rates p_j - p_i; otherwise the bound n^2 - 1."""
    if A.P.is_diagonal():
        report = splitting_report(to_pgl_torsor(A))
        logger.info(f"splitting degree of a diagonal algebra of degree {A.n}: {report.degree}")
        return report
    bound = A.n * A.n - 1
    logger.info(f"splitting degree of a non-diagonal algebra bounded by dim PGL_{A.n} = {bound}")
    return SplitReport(None, bound, True, f"bounded by dim PGL_{A.n}; no minimal field constructed")


def _pole_factors(P: RatMatrix) -> List[Poly]:
    factors = {}
    for value in P.entries():
        for p, _ in factor_irreducible(value.den):
            factors.setdefault(str(p.rep.to_list()), p)
    return sorted(factors.values(), key=factor_sort_key)


def _rational_solutions(B: RatMatrix, d: RatFunc, top: int) -> List[RatMatrix]:
    """Columns y = N/d with deg N <= top solving y' = B y, as a basis over the constants."""
    field = B.field
    n = B.nrows
    dB = B.scale(d)
    clear = field.one.num
    for value in dB.entries():
        clear = clear.lcm(value.den)
    residuals = []
    for j in range(n):
        for k in range(top + 1):
            N = RatMatrix.column(field, [field.x ** k if i == j else field.zero for i in range(n)])
            residual = N.derive().scale(d) - N.scale(d.derive()) - dB * N
            residuals.append(residual.scale(field.element(clear)).entries())
    height = max((degree(r.num) for column in residuals for r in column), default=-1)
    rows = [
        [field.constant(coefficient(column[i].num, t)) for column in residuals]
        for i in range(n)
        for t in range(height + 1)
    ]
    if rows:
        kernel = RatMatrix(field, rows, len(residuals)).nullspace()
    else:
        kernel = RatMatrix.identity(field, len(residuals)).columns()
    solutions = []
    for c in kernel:
        coeffs = c.entries()
        entries = []
        for j in range(n):
            value = field.zero
            for k in range(top + 1):
                value = value + coeffs[j * (top + 1) + k] * field.x ** k
            entries.append(value / d)
        solutions.append(RatMatrix.column(field, entries))
    return solutions


def split_witness(A: DeltaCSA) -> Optional[GaugeWitness]:
    """
    A u with gauge_transform(A, u) = 0, searched among u = N/d for d a product
    of the pole factors of P up to the configured order, solving
    u' = (lambda - P) u for lambda = (1/n) sum k_i p_i'/p_i with 0 <= k_i < n.
    None when nothing is found.
    """
    field = A.field
    n = A.n
    try:
        poles = _pole_factors(A.P)
    except DegreeLimitError:
        logger.warning("pole factorization exceeds the degree limit; skipping the splitting search")
        return None
    d = field.one
    for p in poles:
        d = d * field.element(p) ** settings.SPLIT_SEARCH_POLE_ORDER
    top = degree(d.num) + settings.SPLIT_SEARCH_DEGREE
    log_derivatives = [field.element(p.diff()) / field.element(p) for p in poles]
    for shifts in itertools.product(range(n), repeat=len(poles)):
        total = field.zero
        for k, rate in zip(shifts, log_derivatives):
            total = total + rate * k
        B = RatMatrix.scalar(field, n, total / n) - A.P
        solutions = _rational_solutions(B, d, top)
        if len(solutions) < n:
            continue
        S = RatMatrix.from_columns(field, solutions, n)
        pivots = S.pivot_columns()
        if len(pivots) < n:
            continue
        u = S.submatrix(range(n), pivots)
        if gauge_transform(A, u).P.is_zero():
            logger.info(f"found a splitting witness for an algebra of degree {n}")
            return GaugeWitness.from_matrix(u)
    logger.debug(f"no splitting witness with pole order {settings.SPLIT_SEARCH_POLE_ORDER} and degree {top}")
    return None


def is_split(A: DeltaCSA) -> Optional[bool]:
    """Whether A is isomorphic to (M_n(F), delta_0); None when undecided."""
    if A.P.is_zero():
        return True
    if A.P.is_diagonal():
        group = splitting_report(to_pgl_torsor(A)).group
        return group.is_trivial()
    if split_witness(A) is not None:
        return True
    logger.warning(f"splitting of a non-diagonal algebra of degree {A.n} is undecided")
    return None
