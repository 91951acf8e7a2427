"""
Twisted forms of a Phi-object and the two constructions relating them to
1-cocycles.

The group acts on M (x) S through the coaction, sigma = id_M (x) rho_sigma.
From an isomorphism phi: N (x) S -> M (x) S one reads off the cocycle
a_sigma = phi o sigma o phi^-1 o sigma^-1; from a cocycle one recovers a
twisted form as the fixed points of a_sigma o sigma.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from pvkit.cocycle.actions import GammaAction
from pvkit.cocycle.cohomology import Cocycle, is_cocycle
from pvkit.exceptions import CocycleError, DescentError, DimensionMismatchError, TwistedFormError
from pvkit.fieldcore.matrix import RatMatrix
from pvkit.phihopf.descent import descend, extend_scalars, multiplication_map, twist_coaction
from pvkit.phihopf.extension import FinHopfGalois
from pvkit.phihopf.objects import PhiObject, is_phi_morphism

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwistedFormDesc:
    """iso realises N (x) S = M (x) S as Phi_S-objects."""

    base: PhiObject
    twisted: PhiObject
    extension: FinHopfGalois
    iso: RatMatrix

    def __post_init__(self):
        size = self.base.dim * self.extension.dim
        if self.twisted.dim != self.base.dim:
            raise DimensionMismatchError(
                f"twisted object has dimension {self.twisted.dim}, base has {self.base.dim}"
            )
        if self.iso.shape != (size, size):
            raise DimensionMismatchError(f"isomorphism must be {size} x {size}, got {self.iso.shape}")


def validate_twisted_form(tf: TwistedFormDesc) -> bool:
    """Whether tf.iso is an invertible Phi_S-morphism N (x) S -> M (x) S."""
    S = tf.extension
    if not tf.iso.is_invertible():
        return False
    return is_phi_morphism(tf.iso, extend_scalars(tf.twisted, S), extend_scalars(tf.base, S))


def _group_action(d: int, S: FinHopfGalois, sigma: int) -> RatMatrix:
    return RatMatrix.identity(S.field, d).kron(S.coaction[sigma])


def _check_action(act: GammaAction, d: int, S: FinHopfGalois) -> None:
    if act.group.order != S.group.order:
        raise DimensionMismatchError(
            f"action of a group of order {act.group.order} on an extension for order {S.group.order}"
        )
    if act.size != d:
        raise DimensionMismatchError(f"target of rank {act.size} for an object of dimension {d}")


def construction_F(tf: TwistedFormDesc, act: GammaAction) -> Cocycle:
    """The cocycle a_sigma = phi o sigma o phi^-1 o sigma^-1, read off as constant automorphisms of M."""
    S = tf.extension
    d, k = tf.base.dim, S.dim
    _check_action(act, d, S)
    if not validate_twisted_form(tf):
        raise TwistedFormError("isomorphism is not a Phi_S-isomorphism")
    field = tf.base.field
    iso_inv = tf.iso.inverse()
    group = S.group
    values = []
    for sigma in range(group.order):
        A = tf.iso * _group_action(d, S, sigma) * iso_inv * _group_action(d, S, group.inverse(sigma))
        value = RatMatrix.from_function(field, d, d, lambda i, j: A[i * k, j * k])
        if A != value.kron(RatMatrix.identity(field, k)) or not value.is_constant():
            raise TwistedFormError(f"automorphism at {group.labels[sigma]} is not a constant automorphism of M")
        values.append(value)
    cocycle = Cocycle(tuple(values))
    if not is_cocycle(cocycle, act):
        raise CocycleError("not a cocycle")
    logger.info(f"construction F over {S.name}: {[v.to_strings() for v in values]}")
    return cocycle


def _fixed_points(a: Cocycle, ambient: PhiObject):
    if not ambient.is_equivariant:
        raise ValueError("ambient object must carry a coaction")
    twisted_ambient = twist_coaction(ambient, a.values)
    descended, basis = descend(twisted_ambient)
    if descended.dim != ambient.base_dim:
        raise DescentError(
            f"dimension defect: fixed space has dimension {descended.dim}, expected {ambient.base_dim}"
        )
    return descended, basis, twisted_ambient


def construction_G(a: Cocycle, act: GammaAction, ambient: PhiObject) -> PhiObject:
    """{m in M (x) S : (a_sigma o sigma)(m) = m for all sigma} with the restricted structure."""
    if not is_cocycle(a, act):
        raise CocycleError("not a cocycle")
    descended, _, _ = _fixed_points(a, ambient)
    logger.info(f"construction G: fixed space of dimension {descended.dim}")
    return descended


def twisted_form(a: Cocycle, act: GammaAction, ambient: PhiObject) -> TwistedFormDesc:
    """construction_G together with the multiplication isomorphism G(a) (x) S -> M (x) S."""
    if not is_cocycle(a, act):
        raise CocycleError("not a cocycle")
    descended, basis, twisted_ambient = _fixed_points(a, ambient)
    iso = multiplication_map(basis, twisted_ambient)
    eq = ambient.equivariance
    return TwistedFormDesc(eq.base, descended, eq.extension, iso)


def descended_isomorphism(tf: TwistedFormDesc, descended: PhiObject, basis: RatMatrix) -> Optional[RatMatrix]:
    """
    The map N -> G(F(tf)), n -> iso(n (x) 1) written in the fixed-space basis,
    or None when it is not a Phi-isomorphism.
    """
    S = tf.extension
    unit = S.unit()
    if unit is None:
        raise DescentError("extension has no unit")
    field = tf.base.field
    embed = tf.iso * RatMatrix.identity(field, tf.twisted.dim).kron(RatMatrix.column(field, unit))
    X = basis.solve(embed)
    if X is None or basis * X != embed:
        return None
    if not X.is_invertible() or not is_phi_morphism(X, tf.twisted, descended):
        return None
    return X


def roundtrip_from_twisted_form(
    tf: TwistedFormDesc, act: GammaAction, cocycle: Optional[Cocycle] = None
) -> Optional[RatMatrix]:
    """Run F (unless its cocycle is supplied) then G, and return the Phi-isomorphism back to tf.twisted."""
    a = cocycle if cocycle is not None else construction_F(tf, act)
    ambient = extend_scalars(tf.base, tf.extension)
    descended, basis, _ = _fixed_points(a, ambient)
    return descended_isomorphism(tf, descended, basis)
