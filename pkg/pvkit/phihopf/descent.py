"""
Descent along a finite Hopf-Galois extension S/F.

extend_scalars sends M to M (x) S with coaction id (x) Delta_S; coinvariants
recovers an F-object from an equivariant one by solving Delta_N(n) = n (x) 1.
The unit embedding iota_M and the multiplication map mu_N realise the two
natural isomorphisms of the descent equivalence.
"""

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence

from pvkit.exceptions import DescentError, DimensionMismatchError
from pvkit.fieldcore.matrix import RatMatrix
from pvkit.phihopf.extension import FinHopfGalois
from pvkit.phihopf.objects import (
    Equivariance,
    PhiObject,
    index_digits,
    is_phi_morphism,
    s_tensor_product,
)

logger = logging.getLogger(__name__)


class Descent(NamedTuple):
    """The descended object and the columns of its basis inside N."""

    descended: PhiObject
    basis: RatMatrix


@dataclass(frozen=True)
class DescentRoundtrip:
    descended: PhiObject
    iota: RatMatrix
    iso_ok: bool
    multiplication_bijective: bool

    @property
    def ok(self) -> bool:
        return self.iso_ok and self.multiplication_bijective

    def to_dict(self) -> dict:
        return {
            "descended_dim": self.descended.dim,
            "descended_derivation": self.descended.derivation.to_strings(),
            "iso_ok": self.iso_ok,
            "multiplication_bijective": self.multiplication_bijective,
        }


def extend_scalars(M: PhiObject, S: FinHopfGalois) -> PhiObject:
    """M (x)_F S with coaction id_M (x) Delta_S and structure maps tensored with id_S."""
    if M.equivariance:
        raise ValueError("object is already equivariant")
    field = M.field
    k = S.dim
    id_m = RatMatrix.identity(field, M.dim)
    id_s = RatMatrix.identity(field, k)
    derivation = M.derivation.kron(id_s) + id_m.kron(S.module_connection())
    maps = tuple(matrix.kron(id_s) for matrix in M.maps)
    coaction = tuple(id_m.kron(rho) for rho in S.coaction)
    return PhiObject(field, derivation, M.phi_type, maps, Equivariance(S, M, coaction))


def twist_coaction(N: PhiObject, values: Sequence[RatMatrix]) -> PhiObject:
    """Replace the coaction by (a_g (x) id_S) o rho_g for a family a_g of base automorphisms."""
    if not N.equivariance:
        raise ValueError("object carries no coaction")
    eq = N.equivariance
    if len(values) != eq.extension.group.order:
        raise DimensionMismatchError(f"need one value per group element ({eq.extension.group.order})")
    id_s = RatMatrix.identity(N.field, eq.extension.dim)
    coaction = tuple(a.kron(id_s) * rho for a, rho in zip(values, eq.coaction))
    return PhiObject(N.field, N.derivation, N.phi_type, N.maps, Equivariance(eq.extension, eq.base, coaction))


def _embedding(N: PhiObject, basis: RatMatrix, n: int, m: int) -> RatMatrix:
    """W^(x)n (x) H^(x)m -> M^(x)n (x) H^(x)m (x) S for W spanned by basis inside N."""
    S = N.equivariance.extension
    field = N.field
    k = S.dim
    d = N.base_dim
    r = basis.ncols
    h_size = N.phi_type.hopf_dim ** m
    vectors = [basis.get_column(i).entries() for i in range(r)]
    columns = []
    for index in range(r ** n):
        digits = index_digits(index, r, n)
        product = s_tensor_product(S, [vectors[i] for i in digits], [d] * n)
        for h in range(h_size):
            column = [field.zero] * (d ** n * h_size * k)
            for a in range(d ** n):
                for l in range(k):
                    column[(a * h_size + h) * k + l] = product[a * k + l]
            columns.append(RatMatrix.column(field, column))
    return RatMatrix.from_columns(field, columns, d ** n * h_size * k)


def descend(N: PhiObject) -> Descent:
    """Coinvariants of N with the restricted derivation and structure maps."""
    if not N.equivariance:
        raise ValueError("coinvariants need an object with coaction data")
    field = N.field
    identity = RatMatrix.identity(field, N.dim)
    stacked: Optional[RatMatrix] = None
    for rho in N.equivariance.coaction:
        block = rho - identity
        stacked = block if stacked is None else stacked.vstack(block)
    kernel = stacked.nullspace()
    basis = RatMatrix.from_columns(field, kernel, N.dim)
    r = basis.ncols
    logger.info(f"coinvariants: dimension {r} inside an object of dimension {N.dim}")

    # delta(B c) = B c' + (B' - D B) c must equal B (c' - X c)
    restricted = basis.solve(N.derivation * basis - basis.derive()) if r else RatMatrix.zeros(field, 0, 0)
    if restricted is None:
        raise DescentError("derivation does not restrict to the coinvariants")
    derivation = restricted if r else RatMatrix.zeros(field, 0, 0)

    maps: List[RatMatrix] = []
    for sig, matrix in zip(N.signatures, N.maps):
        n1, n2, n3, n4 = sig
        source = _embedding(N, basis, n1, n2)
        target = _embedding(N, basis, n3, n4)
        solved = target.solve(matrix * source)
        if solved is None or target * solved != matrix * source:
            raise DescentError(f"structure maps do not restrict (signature {sig})")
        maps.append(solved)
    descended = PhiObject(field, derivation, N.phi_type, tuple(maps))
    return Descent(descended, basis)


def coinvariants(N: PhiObject) -> PhiObject:
    return descend(N).descended


def multiplication_map(basis: RatMatrix, N: PhiObject) -> RatMatrix:
    """mu_N: W (x) S -> N, w_i (x) e_j -> w_i * e_j, columns ordered i * k + j."""
    S = N.equivariance.extension
    id_base = RatMatrix.identity(N.field, N.base_dim)
    columns = []
    for i in range(basis.ncols):
        w = basis.get_column(i)
        for j in range(S.dim):
            columns.append(id_base.kron(S.multiplication_matrix(j)) * w)
    return RatMatrix.from_columns(N.field, columns, N.dim)


def unit_embedding(M: PhiObject, S: FinHopfGalois) -> RatMatrix:
    """iota_M: M -> M (x) S, m -> m (x) 1."""
    unit = S.unit()
    if unit is None:
        raise DescentError("extension has no unit")
    return RatMatrix.identity(M.field, M.dim).kron(RatMatrix.column(M.field, unit))


def descent_roundtrip(M: PhiObject, S: FinHopfGalois) -> DescentRoundtrip:
    """Extend, descend, and check iota_M and mu_N are isomorphisms."""
    N = extend_scalars(M, S)
    descended, basis = descend(N)
    iota = unit_embedding(M, S)
    coords = basis.solve(iota) if basis.ncols else None
    iso_ok = (
        coords is not None
        and basis * coords == iota
        and coords.is_invertible()
        and is_phi_morphism(coords, M, descended)
    )
    mu = multiplication_map(basis, N)
    bijective = mu.is_invertible()
    logger.info(f"descent roundtrip for dim {M.dim} over {S.name}: iso={iso_ok} mu_bijective={bijective}")
    return DescentRoundtrip(descended, coords if coords is not None else iota, iso_ok, bijective)
