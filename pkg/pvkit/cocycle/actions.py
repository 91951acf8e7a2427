"""
Finite groups acting on the constant points of a target group.

Target elements are square constant matrices: m x m for GL_m, diagonal r x r
for a torus, 1 x 1 for G_m, mu_j and the additive group G_a.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

from pvkit.exceptions import DimensionMismatchError, InputError
from pvkit.fieldcore.matrix import RatMatrix
from pvkit.fieldcore.ratfunc import DiffField, RatFunc
from pvkit.phihopf.groups import FinGroupHopf

logger = logging.getLogger(__name__)


class TargetKind(str, Enum):
    GL = "gl"
    GM = "gm"
    MU = "mu"
    GA = "ga"
    TORUS = "torus"


@dataclass(frozen=True)
class Target:
    kind: TargetKind
    rank: int = 1
    order: Optional[int] = None

    def __post_init__(self):
        if self.rank < 1:
            raise InputError(f"target rank must be positive, got {self.rank}")
        if self.kind in (TargetKind.GM, TargetKind.MU, TargetKind.GA) and self.rank != 1:
            raise InputError(f"{self.kind.value} has rank 1")
        if self.kind == TargetKind.MU and (self.order is None or self.order < 1):
            raise InputError("mu target needs a positive order")

    @classmethod
    def gl(cls, m: int) -> "Target":
        return cls(TargetKind.GL, m)

    @classmethod
    def gm(cls) -> "Target":
        return cls(TargetKind.GM)

    @classmethod
    def mu(cls, j: int) -> "Target":
        return cls(TargetKind.MU, 1, j)

    @classmethod
    def ga(cls) -> "Target":
        return cls(TargetKind.GA)

    @classmethod
    def torus(cls, r: int) -> "Target":
        return cls(TargetKind.TORUS, r)

    @property
    def is_additive(self) -> bool:
        return self.kind == TargetKind.GA

    @property
    def is_abelian(self) -> bool:
        return self.kind != TargetKind.GL or self.rank == 1

    def describe(self) -> str:
        if self.kind == TargetKind.GL:
            return f"GL_{self.rank}"
        if self.kind == TargetKind.GM:
            return "G_m"
        if self.kind == TargetKind.MU:
            return f"mu({self.order})"
        if self.kind == TargetKind.GA:
            return "G_a"
        return "G_m" if self.rank == 1 else f"G_m^{self.rank}"


IntMatrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class GammaAction:
    """
    Action of a finite group on target points, one automorphism per element:

      GL_m      sigma(g) = T_sigma g T_sigma^-1          (conjugators)
      G_m, mu_j sigma(c) = c^e_sigma                      (exponents, 1 x 1)
      torus     sigma(g)_i = prod_j g_j^U_sigma[i][j]     (exponents, r x r)
      G_a       sigma(c) = lambda_sigma c                 (scalars)
    """

    field: DiffField
    group: FinGroupHopf
    target: Target
    conjugators: Optional[Tuple[RatMatrix, ...]] = None
    exponents: Optional[Tuple[IntMatrix, ...]] = None
    scalars: Optional[Tuple[RatFunc, ...]] = None

    def __post_init__(self):
        order = self.group.order
        for name, data in (("conjugators", self.conjugators), ("exponents", self.exponents), ("scalars", self.scalars)):
            if data is not None and len(data) != order:
                raise DimensionMismatchError(f"{name} must list one entry per group element ({order})")
        if self.conjugators is not None and self.target.kind != TargetKind.GL:
            raise InputError("conjugation data applies to GL targets only")
        if self.scalars is not None and self.target.kind != TargetKind.GA:
            raise InputError("scalar data applies to the additive target only")
        if self.exponents is not None and self.target.kind not in (TargetKind.GM, TargetKind.MU, TargetKind.TORUS):
            raise InputError("exponent data applies to multiplicative targets only")

    @classmethod
    def trivial(cls, field: DiffField, group: FinGroupHopf, target: Target) -> "GammaAction":
        return cls(field, group, target)

    @property
    def size(self) -> int:
        return self.target.rank

    def is_trivial(self) -> bool:
        if self.conjugators is not None:
            return all(t.is_diagonal() and len(set(t.diagonal())) == 1 for t in self.conjugators)
        if self.exponents is not None:
            r = self.size
            identity = tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))
            if self.target.kind == TargetKind.MU:
                j = self.target.order
                return all(e[0][0] % j == 1 % j for e in self.exponents)
            return all(e == identity for e in self.exponents)
        if self.scalars is not None:
            return all(s == self.field.one for s in self.scalars)
        return True

    # group law on the target

    def identity(self) -> RatMatrix:
        if self.target.is_additive:
            return RatMatrix.zeros(self.field, 1, 1)
        return RatMatrix.identity(self.field, self.size)

    def combine(self, a: RatMatrix, b: RatMatrix) -> RatMatrix:
        return a + b if self.target.is_additive else a * b

    def invert(self, a: RatMatrix) -> RatMatrix:
        return -a if self.target.is_additive else a.inverse()

    def contains(self, element: RatMatrix) -> bool:
        r = self.size
        if element.shape != (r, r) or not element.is_constant():
            return False
        kind = self.target.kind
        if kind == TargetKind.GA:
            return True
        if kind == TargetKind.TORUS and not element.is_diagonal():
            return False
        if not element.is_invertible():
            return False
        if kind == TargetKind.MU:
            return element[0, 0] ** self.target.order == self.field.one
        return True

    def apply(self, sigma: int, element: RatMatrix) -> RatMatrix:
        """sigma(element)."""
        kind = self.target.kind
        if kind == TargetKind.GL:
            if self.conjugators is None:
                return element
            T = self.conjugators[sigma]
            return T * element * T.inverse()
        if kind == TargetKind.GA:
            if self.scalars is None:
                return element
            return element.scale(self.scalars[sigma])
        if self.exponents is None:
            return element
        U = self.exponents[sigma]
        entries = element.diagonal()
        image = []
        for i in range(self.size):
            value = self.field.one
            for j, e in enumerate(U[i]):
                if e:
                    value = value * entries[j] ** e
            image.append(value)
        return RatMatrix.diag(self.field, image)

    def check_homomorphism(self) -> bool:
        """sigma tau acts as sigma after tau on a sample element."""
        sample = self._sample_element()
        g = self.group
        for s in range(g.order):
            for t in range(g.order):
                lhs = self.apply(g.multiply(s, t), sample)
                if lhs != self.apply(s, self.apply(t, sample)):
                    return False
        return self.apply(g.identity, sample) == sample

    def _sample_element(self) -> RatMatrix:
        r = self.size
        field = self.field
        if self.target.kind == TargetKind.MU:
            return RatMatrix(field, [[field.root_of_unity(self.target.order, 1)]]) if (
                field.constants.root_count % self.target.order == 0
            ) else self.identity()
        if self.target.kind == TargetKind.GL:
            return RatMatrix.from_function(field, r, r, lambda i, j: (i + 1) if j >= i else 2 * j + 3)
        return RatMatrix.diag(field, [field.from_int(p) for p in (2, 3, 5, 7, 11, 13, 17, 19)[:r]])

    def describe(self) -> str:
        kind = "trivial" if self.is_trivial() else "nontrivial"
        return f"{kind} action of a group of order {self.group.order} on {self.target.describe()}"


def cyclic_inversion_action(field: DiffField, k: int, target: Target) -> GammaAction:
    """mu_k acting on a multiplicative rank-1 target through s -> (-1)^s inversion (k even)."""
    if k % 2:
        raise InputError("inversion action needs an even group order")
    exponents = tuple(((1 if s % 2 == 0 else -1,),) for s in range(k))
    return GammaAction(field, FinGroupHopf.cyclic(k), target, exponents=exponents)


def scaling_action(field: DiffField, k: int, scalars: Sequence[RatFunc]) -> GammaAction:
    """mu_k acting on G_a by sigma(c) = lambda_sigma c."""
    return GammaAction(field, FinGroupHopf.cyclic(k), Target.ga(), scalars=tuple(scalars))
