"""
Linear differential systems Y' = A Y over F and gauge transformations.
"""

import logging
from dataclasses import dataclass

from pvkit.exceptions import DimensionMismatchError, SingularMatrixError
from pvkit.fieldcore.matrix import RatMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinSys:
    """Y' = A Y. As a differential module: coordinates c have delta(c) = c' - A c."""

    A: RatMatrix

    def __post_init__(self):
        if not self.A.is_square:
            raise DimensionMismatchError(f"system matrix must be square, got {self.A.shape}")

    @property
    def n(self) -> int:
        return self.A.nrows

    @property
    def field(self):
        return self.A.field


@dataclass(frozen=True)
class GaugeWitness:
    """An invertible P with its inverse."""

    P: RatMatrix
    P_inv: RatMatrix

    @classmethod
    def from_matrix(cls, P: RatMatrix) -> "GaugeWitness":
        try:
            return cls(P, P.inverse())
        except SingularMatrixError as e:
            raise SingularMatrixError("witness not invertible") from e

    @property
    def n(self) -> int:
        return self.P.nrows

    def inverse(self) -> "GaugeWitness":
        return GaugeWitness(self.P_inv, self.P)


def _as_witness(P) -> GaugeWitness:
    return P if isinstance(P, GaugeWitness) else GaugeWitness.from_matrix(P)


def gauge(A: RatMatrix, P) -> RatMatrix:
    """P' P^-1 + P A P^-1: the system satisfied by P Y when Y' = A Y."""
    witness = _as_witness(P)
    if witness.n != A.nrows:
        raise DimensionMismatchError(f"witness of size {witness.n} does not fit a system of size {A.nrows}")
    return witness.P.derive() * witness.P_inv + witness.P * A * witness.P_inv


def is_gauge_witness(A: RatMatrix, B: RatMatrix, P) -> bool:
    if A.shape != B.shape:
        raise DimensionMismatchError(f"systems of shapes {A.shape} and {B.shape}")
    return gauge(A, P) == B


def compose_witnesses(P, Q) -> GaugeWitness:
    """Witness for gauge(gauge(A, P), Q), namely Q P."""
    first, second = _as_witness(P), _as_witness(Q)
    return GaugeWitness(second.P * first.P, first.P_inv * second.P_inv)


def inverse_witness(P) -> GaugeWitness:
    return _as_witness(P).inverse()


def tensor(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    """A (x) I + I (x) B."""
    field = A.field
    return A.kron(RatMatrix.identity(field, B.nrows)) + RatMatrix.identity(field, A.nrows).kron(B)


def dual(A: RatMatrix) -> RatMatrix:
    return -A.transpose()


def direct_sum(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    return A.block_diag(B)
