"""
Phi-objects: differential modules with structure maps of prescribed tensor
signatures, optionally carrying equivariant data over a Hopf-Galois
extension S.

Derivation matrices use the connection convention: delta acts on coordinate
vectors by c -> c' - D c, so phi is delta-linear from M to N exactly when
phi' + phi D_M = D_N phi.

A signature (n1, n2, n3, n4) names a map M^(x)n1 (x) H^(x)n2 -> M^(x)n3 (x) H^(x)n4.
Tensor indices are lexicographic: (a_1, ..., a_n, h_1, ..., h_m) and, for
equivariant objects, a trailing S index.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from pvkit.exceptions import DimensionMismatchError
from pvkit.fieldcore.matrix import RatMatrix, kron_power, kron_sum
from pvkit.fieldcore.ratfunc import DiffField, RatFunc
from pvkit.phihopf.extension import FinHopfGalois
from pvkit.phihopf.groups import FinGroupHopf

logger = logging.getLogger(__name__)

Signature = Tuple[int, int, int, int]


@dataclass(frozen=True)
class PhiType:
    hopf: Optional[FinGroupHopf] = None
    signatures: Tuple[Signature, ...] = ()

    def __post_init__(self):
        for sig in self.signatures:
            if len(sig) != 4 or any(v < 0 for v in sig):
                raise ValueError(f"signature must be four nonnegative integers, got {sig}")

    @property
    def hopf_dim(self) -> int:
        return 1 if self.hopf is None else self.hopf.order


@dataclass(frozen=True)
class Equivariance:
    """M (x) S with a coaction: coaction[g] is the matrix of (1 (x) ev_g) o Delta_N."""

    extension: FinHopfGalois
    base: "PhiObject"
    coaction: Tuple[RatMatrix, ...]


@dataclass(frozen=True)
class PhiObject:
    field: DiffField
    derivation: RatMatrix
    phi_type: PhiType = PhiType()
    maps: Tuple[RatMatrix, ...] = ()
    equivariance: Optional[Equivariance] = None

    def __post_init__(self):
        if not self.derivation.is_square:
            raise DimensionMismatchError(f"derivation must be square, got {self.derivation.shape}")
        if len(self.maps) != len(self.phi_type.signatures):
            raise DimensionMismatchError(
                f"{len(self.phi_type.signatures)} signatures but {len(self.maps)} structure maps"
            )
        for sig, matrix in zip(self.phi_type.signatures, self.maps):
            n1, n2, n3, n4 = sig
            expected = (self.tensor_dim(n3, n4), self.tensor_dim(n1, n2))
            if matrix.shape != expected:
                raise DimensionMismatchError(f"structure map {sig} must be {expected}, got {matrix.shape}")

    @property
    def dim(self) -> int:
        return self.derivation.nrows

    @property
    def is_equivariant(self) -> bool:
        return self.equivariance is not None

    @property
    def base_dim(self) -> int:
        return self.equivariance.base.dim if self.equivariance else self.dim

    @property
    def signatures(self) -> Tuple[Signature, ...]:
        return self.phi_type.signatures

    def is_trivial(self) -> bool:
        return self.derivation.is_zero()

    def tensor_dim(self, n: int, m: int) -> int:
        size = self.base_dim ** n * self.phi_type.hopf_dim ** m
        if self.equivariance:
            size *= self.equivariance.extension.dim
        return size

    def tensor_connection(self, n: int, m: int) -> RatMatrix:
        """Connection matrix of M^(x)n (x) H^(x)m (over S for equivariant objects)."""
        if self.equivariance:
            S = self.equivariance.extension
            inner = self.equivariance.base.tensor_connection(n, m)
            return inner.kron(RatMatrix.identity(self.field, S.dim)) + RatMatrix.identity(
                self.field, inner.nrows
            ).kron(S.module_connection())
        h = self.phi_type.hopf_dim
        blocks = [self.derivation] * n + [RatMatrix.zeros(self.field, h, h)] * m
        if not blocks:
            return RatMatrix.zeros(self.field, 1, 1)
        return kron_sum(self.field, blocks)

    def coaction_matrix(self, g: int) -> RatMatrix:
        if not self.equivariance:
            raise ValueError("object carries no coaction")
        return self.equivariance.coaction[g]

    def structure_map_failures(self) -> List[Signature]:
        """Signatures whose map is not delta-linear."""
        failures = []
        for sig, matrix in zip(self.signatures, self.maps):
            n1, n2, n3, n4 = sig
            lhs = matrix.derive() + matrix * self.tensor_connection(n1, n2)
            if lhs != self.tensor_connection(n3, n4) * matrix:
                failures.append(sig)
        return failures

    def describe(self) -> Dict:
        return {
            "dim": self.dim,
            "derivation": self.derivation.to_strings(),
            "signatures": [list(s) for s in self.signatures],
            "maps": [m.to_strings() for m in self.maps],
            "equivariant": self.is_equivariant,
        }


def trivial_object(field: DiffField, d: int, phi_type: PhiType = PhiType(), maps: Sequence[RatMatrix] = ()) -> PhiObject:
    return PhiObject(field, RatMatrix.zeros(field, d, d), phi_type, tuple(maps))


# tensor products over S


def _s_tensor(S: FinHopfGalois, u: Sequence[RatFunc], u_dim: int, w: Sequence[RatFunc], w_dim: int) -> List[RatFunc]:
    """(V (x) S) x (W (x) S) -> (V (x) W) (x) S, multiplying the S parts."""
    k = S.dim
    zero = S.field.zero
    out = [zero] * (u_dim * w_dim * k)
    for a in range(u_dim):
        for j in range(k):
            left = u[a * k + j]
            if left.is_zero:
                continue
            for b in range(w_dim):
                for j2 in range(k):
                    right = w[b * k + j2]
                    if right.is_zero:
                        continue
                    coeff = left * right
                    for l, c in enumerate(S.mult[j][j2]):
                        if not c.is_zero:
                            index = (a * w_dim + b) * k + l
                            out[index] = out[index] + coeff * c
    return out


def _s_scale(S: FinHopfGalois, v: Sequence[RatFunc], v_dim: int, j: int) -> List[RatFunc]:
    """v * e_j on V (x) S."""
    k = S.dim
    zero = S.field.zero
    out = [zero] * (v_dim * k)
    for a in range(v_dim):
        for l in range(k):
            coeff = v[a * k + l]
            if coeff.is_zero:
                continue
            for l2, c in enumerate(S.mult[l][j]):
                if not c.is_zero:
                    out[a * k + l2] = out[a * k + l2] + coeff * c
    return out


def s_tensor_product(S: FinHopfGalois, vectors: Sequence[Sequence[RatFunc]], dims: Sequence[int]) -> List[RatFunc]:
    """v_1 (x)_S ... (x)_S v_n; the unit of S when there are no factors."""
    unit = S.unit()
    result: List[RatFunc] = list(unit)
    size = 1
    for v, d in zip(vectors, dims):
        result = _s_tensor(S, result, size, v, d)
        size *= d
    return result


def index_digits(index: int, base: int, n: int) -> Tuple[int, ...]:
    digits = []
    for _ in range(n):
        digits.append(index % base)
        index //= base
    return tuple(reversed(digits))


def _insert_hopf(S: FinHopfGalois, matrix: RatMatrix, src_dim: int, tgt_dim: int, h_size: int) -> RatMatrix:
    """T on V (x) S extended to V (x) H^(x)m (x) S, acting as identity on the H factor."""
    k = S.dim
    field = S.field
    rows = [[field.zero] * (src_dim * h_size * k) for _ in range(tgt_dim * h_size * k)]
    for b in range(tgt_dim):
        for l2 in range(k):
            for a in range(src_dim):
                for l in range(k):
                    value = matrix[b * k + l2, a * k + l]
                    if value.is_zero:
                        continue
                    for h in range(h_size):
                        rows[(b * h_size + h) * k + l2][(a * h_size + h) * k + l] = value
    return RatMatrix(field, rows, src_dim * h_size * k)


def s_tensor_power(phi: RatMatrix, n: int, src_dim: int, tgt_dim: int, S: FinHopfGalois) -> RatMatrix:
    """phi^(x_S)n: (M^(x)n) (x) S -> (N^(x)n) (x) S for an S-linear phi: M (x) S -> N (x) S."""
    field = S.field
    k = S.dim
    unit = S.unit()
    images = []
    for a in range(src_dim):
        column = [field.zero] * (src_dim * k)
        for l in range(k):
            column[a * k + l] = unit[l]
        images.append((phi * RatMatrix.column(field, column)).entries())
    columns = []
    for index in range(src_dim ** n):
        digits = index_digits(index, src_dim, n)
        product = s_tensor_product(S, [images[a] for a in digits], [tgt_dim] * n)
        for j in range(k):
            columns.append(RatMatrix.column(field, _s_scale(S, product, tgt_dim ** n, j)))
    return RatMatrix.from_columns(field, columns, tgt_dim ** n * k)


def _tensor_map(phi: RatMatrix, n: int, m: int, src: PhiObject, tgt: PhiObject) -> RatMatrix:
    """phi^(x)n (x) id_H^(x)m between the tensor spaces of src and tgt."""
    h_size = src.phi_type.hopf_dim ** m
    if src.equivariance:
        S = src.equivariance.extension
        power = s_tensor_power(phi, n, src.base_dim, tgt.base_dim, S)
        return _insert_hopf(S, power, src.base_dim ** n, tgt.base_dim ** n, h_size)
    return kron_power(phi, n).kron(RatMatrix.identity(phi.field, h_size))


def is_delta_linear(phi: RatMatrix, D_src: RatMatrix, D_tgt: RatMatrix) -> bool:
    return phi.derive() + phi * D_src == D_tgt * phi


def is_phi_morphism(phi: RatMatrix, M: PhiObject, N: PhiObject) -> bool:
    """delta-linearity, S-linearity for equivariant objects, and every structure-map square."""
    if phi.shape != (N.dim, M.dim):
        raise DimensionMismatchError(f"map of shape {phi.shape} between objects of dims {M.dim} and {N.dim}")
    if M.signatures != N.signatures or M.phi_type.hopf_dim != N.phi_type.hopf_dim:
        return False
    if M.is_equivariant != N.is_equivariant:
        return False
    if not is_delta_linear(phi, M.derivation, N.derivation):
        return False
    if M.equivariance:
        S = M.equivariance.extension
        if N.equivariance.extension != S:
            return False
        for j in range(S.dim):
            right_mult = S.multiplication_matrix(j)
            if phi * RatMatrix.identity(M.field, M.base_dim).kron(right_mult) != RatMatrix.identity(
                N.field, N.base_dim
            ).kron(right_mult) * phi:
                return False
    for sig, map_m, map_n in zip(M.signatures, M.maps, N.maps):
        n1, n2, n3, n4 = sig
        if _tensor_map(phi, n3, n4, M, N) * map_m != map_n * _tensor_map(phi, n1, n2, M, N):
            logger.debug(f"structure map square {sig} does not commute")
            return False
    return True


def aut_is_constant_check(phi: RatMatrix, M: PhiObject) -> bool:
    """Whether phi is a Phi-automorphism of the trivial object M with constant entries."""
    if not M.is_trivial():
        raise ValueError("aut_is_constant_check requires a trivial object")
    return phi.is_constant() and phi.is_invertible() and is_phi_morphism(phi, M, M)


def transport(M: PhiObject, Q: RatMatrix) -> PhiObject:
    """The object M' for which the invertible Q is a Phi-isomorphism M -> M'."""
    if M.equivariance:
        raise ValueError("transport is defined for plain objects")
    Q_inv = Q.inverse()
    derivation = Q.derive() * Q_inv + Q * M.derivation * Q_inv
    h = M.phi_type.hopf_dim
    maps = []
    for (n1, n2, n3, n4), matrix in zip(M.signatures, M.maps):
        outer = kron_power(Q, n3).kron(RatMatrix.identity(M.field, h ** n4))
        inner_inv = kron_power(Q_inv, n1).kron(RatMatrix.identity(M.field, h ** n2))
        maps.append(outer * matrix * inner_inv)
    return PhiObject(M.field, derivation, M.phi_type, tuple(maps))
