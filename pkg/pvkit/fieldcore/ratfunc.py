"""
The base differential field F = C0(x) with derivation d/dx.

An element is stored as (a_0 + a_1 zeta + ... + a_(phi-1) zeta^(phi-1)) / d
with every a_i and d in Q[x], d monic, and no irreducible factor of d dividing
all of the a_i. That form is unique, so structural equality is field equality,
and every gcd is taken in Q[x] where sympy's heuristic gcd applies.

The num/den views over C0[x] (coprime, den monic) are derived on demand for
printing and for the partial-fraction algorithms.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

from sympy import Poly, Symbol
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from pvkit.fieldcore.constants import ConstantField, CycloNum, get_constant_field

logger = logging.getLogger(__name__)

X = Symbol("x")

# Q[x], shared by every constants level
QX, QX_GEN = ring("x", QQ)

Scalar = Union["RatFunc", int, Fraction]
Parts = Tuple[PolyElement, ...]


def _is_unit(p: PolyElement) -> bool:
    return p.is_ground and bool(p)


class DiffField:
    """Computation context for one constants field; builds and parses RatFunc values."""

    def __init__(self, constants: ConstantField):
        self.constants = constants
        self.domain = constants.domain
        self.phi = constants.degree
        self._no_parts = (QX.zero,) * self.phi
        self.zero = RatFunc(self, self._no_parts, QX.one)
        self.one = RatFunc(self, (QX.one,) + self._no_parts[1:], QX.one)
        self.x = RatFunc(self, (QX_GEN,) + self._no_parts[1:], QX.one)

    @property
    def level(self) -> int:
        return self.constants.level

    # canonical forms

    def _reduce(self, parts: Sequence[PolyElement], den: PolyElement, seed: Optional[PolyElement] = None) -> "RatFunc":
        """
        Canonical parts/den. Common factors are searched among the factors of
        seed (den when omitted).
        """
        if not any(parts):
            return self.zero
        g = den if seed is None else seed
        for p in parts:
            if _is_unit(g):
                break
            if p:
                g = g.gcd(p)
        if not _is_unit(g):
            parts = [p.exquo(g) for p in parts]
            den = den.exquo(g)
        lc = den.LC
        if lc != QQ.one:
            parts = [p.quo_ground(lc) for p in parts]
            den = den.quo_ground(lc)
        return RatFunc(self, tuple(parts), den)

    def _multiply_parts(self, a: Parts, b: Parts) -> List[PolyElement]:
        """(sum a_i zeta^i)(sum b_j zeta^j) written back in the power basis."""
        if self.phi == 1:
            return [a[0] * b[0]]
        result = list(self._no_parts)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                product = ai * bj
                for t, c in enumerate(self.constants.power_coordinates(i + j)):
                    if c:
                        result[t] = result[t] + product.mul_ground(c)
        return result

    def _conjugate_parts(self, a: Parts, k: int) -> List[PolyElement]:
        """Image of sum a_i zeta^i under zeta -> zeta^k."""
        result = list(self._no_parts)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for t, c in enumerate(self.constants.power_coordinates(i * k)):
                if c:
                    result[t] = result[t] + ai.mul_ground(c)
        return result

    # constructors

    def element(self, num: Poly, den: Optional[Poly] = None) -> "RatFunc":
        """num/den for polynomials over C0."""
        value = self._from_poly(num)
        if den is None:
            return value
        if den.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        return value / self._from_poly(den)

    def _from_poly(self, p: Poly) -> "RatFunc":
        coeffs = p.rep.to_list()
        columns = [self.constants.coordinates(c) for c in coeffs]
        parts = [QX.from_list([QQ(col[i].numerator, col[i].denominator) for col in columns]) for i in range(self.phi)]
        return self._reduce(parts, QX.one)

    def constant(self, value) -> "RatFunc":
        """Embed a constants-field element."""
        coords = self.constants.coordinates(value)
        parts = tuple(QX.ground_new(QQ(c.numerator, c.denominator)) for c in coords)
        if not any(parts):
            return self.zero
        return RatFunc(self, parts, QX.one)

    def from_int(self, value: int) -> "RatFunc":
        if value == 0:
            return self.zero
        return RatFunc(self, (QX.ground_new(QQ(value)),) + self._no_parts[1:], QX.one)

    def from_fraction(self, value: Fraction) -> "RatFunc":
        value = Fraction(value)
        if value == 0:
            return self.zero
        return RatFunc(self, (QX.ground_new(QQ(value.numerator, value.denominator)),) + self._no_parts[1:], QX.one)

    def coerce(self, value: Scalar) -> "RatFunc":
        if isinstance(value, RatFunc):
            if value.field is not self:
                raise ValueError(
                    f"cannot mix elements of Q(zeta_{value.field.level})(x) and Q(zeta_{self.level})(x)"
                )
            return value
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into a rational function")

    @property
    def zeta(self) -> "RatFunc":
        return self.constant(self.constants.zeta)

    def root_of_unity(self, order: int, exponent: int = 1) -> "RatFunc":
        return self.constant(self.constants.root_of_unity(order, exponent))

    def parse(self, text: str) -> "RatFunc":
        from pvkit.fieldcore.parser import parse

        return parse(text, self)

    def __repr__(self) -> str:
        return f"DiffField(Q(zeta_{self.level})(x))"


@lru_cache(maxsize=None)
def get_field(level: int) -> DiffField:
    """Cached differential field per cyclotomic level."""
    logger.debug(f"Building differential field Q(zeta_{level})(x)")
    return DiffField(get_constant_field(level))


class RatFunc:
    """An element of F in canonical form."""

    __slots__ = ("field", "parts", "denom", "_hash", "_view")

    def __init__(self, field: DiffField, parts: Parts, denom: PolyElement):
        self.field = field
        self.parts = parts
        self.denom = denom
        self._hash = None
        self._view = None

    # arithmetic

    def __add__(self, other: Scalar) -> "RatFunc":
        other = self.field.coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        b, d = self.denom, other.denom
        if b == d:
            return self.field._reduce([p + q for p, q in zip(self.parts, other.parts)], b)
        g = b.gcd(d)
        if _is_unit(g):
            parts = [p * d + q * b for p, q in zip(self.parts, other.parts)]
            return self.field._reduce(parts, b * d, seed=QX.one)
        b_g, d_g = b.exquo(g), d.exquo(g)
        parts = [p * d_g + q * b_g for p, q in zip(self.parts, other.parts)]
        return self.field._reduce(parts, b * d_g, seed=g)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        if self.is_zero:
            return self
        return RatFunc(self.field, tuple(-p for p in self.parts), self.denom)

    def __sub__(self, other: Scalar) -> "RatFunc":
        return self + (-self.field.coerce(other))

    def __rsub__(self, other: Scalar) -> "RatFunc":
        return self.field.coerce(other) - self

    def __mul__(self, other: Scalar) -> "RatFunc":
        other = self.field.coerce(other)
        if self.is_zero or other.is_zero:
            return self.field.zero
        field = self.field
        # a unit constant factor keeps the form canonical
        if other.is_constant:
            return RatFunc(field, tuple(field._multiply_parts(self.parts, other.parts)), self.denom)
        if self.is_constant:
            return RatFunc(field, tuple(field._multiply_parts(self.parts, other.parts)), other.denom)
        parts = field._multiply_parts(self.parts, other.parts)
        return field._reduce(parts, self.denom * other.denom)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        field = self.field
        if field.phi == 1:
            return field._reduce([self.denom], self.parts[0], seed=QX.one)
        # the product of the other conjugates turns the numerator into its norm in Q[x]
        cofactor = (QX.one,) + field._no_parts[1:]
        for k in field.constants.galois_exponents[1:]:
            cofactor = tuple(field._multiply_parts(cofactor, field._conjugate_parts(self.parts, k)))
        norm = field._multiply_parts(self.parts, cofactor)[0]
        return field._reduce([p * self.denom for p in cofactor], norm)

    def __truediv__(self, other: Scalar) -> "RatFunc":
        return self * self.field.coerce(other).inverse()

    def __rtruediv__(self, other: Scalar) -> "RatFunc":
        return self.field.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "RatFunc":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if exponent == 0:
            return self.field.one
        # C0[x]/(p) is reduced for every irreducible p in Q[x], so powers stay canonical
        field = self.field
        parts, base, e = None, self.parts, exponent
        while e:
            if e & 1:
                parts = base if parts is None else tuple(field._multiply_parts(parts, base))
            e >>= 1
            if e:
                base = tuple(field._multiply_parts(base, base))
        return RatFunc(field, parts, self.denom ** exponent)

    def derive(self) -> "RatFunc":
        """d/dx."""
        if self.is_constant:
            return self.field.zero
        b = self.denom
        if _is_unit(b):
            parts = tuple(p.diff(QX_GEN) for p in self.parts)
            return self.field.zero if not any(parts) else RatFunc(self.field, parts, b)
        db = b.diff(QX_GEN)
        g = b.gcd(db)
        b_g, db_g = b.exquo(g), db.exquo(g)
        # (a/b)' = (a' b/g - a b'/g) / (b * b/g) needs no further cancellation
        parts = tuple(p.diff(QX_GEN) * b_g - p * db_g for p in self.parts)
        return RatFunc(self.field, parts, b * b_g)

    # predicates and views

    def __bool__(self) -> bool:
        return not self.is_zero

    @property
    def is_zero(self) -> bool:
        return not any(self.parts)

    @property
    def is_one(self) -> bool:
        return self == self.field.one

    @property
    def is_polynomial(self) -> bool:
        return _is_unit(self.denom)

    @property
    def is_constant(self) -> bool:
        return _is_unit(self.denom) and all(p.is_ground for p in self.parts)

    @property
    def num(self) -> Poly:
        """Numerator over C0[x], coprime to den."""
        return self._views()[0]

    @property
    def den(self) -> Poly:
        """Monic denominator over C0[x]."""
        return self._views()[1]

    def _poly_over_constants(self, parts: Sequence[PolyElement]) -> Poly:
        constants = self.field.constants
        dense = [p.to_dense() for p in parts]
        top = max(len(d) for d in dense)
        padded = [[QQ.zero] * (top - len(d)) + list(d) for d in dense]
        coeffs = [constants.from_qq([column[i] for column in padded]) for i in range(top)]
        return Poly.from_list(coeffs, X, domain=self.field.domain)

    def _views(self) -> Tuple[Poly, Poly]:
        if self._view is None:
            num = self._poly_over_constants(self.parts)
            den = self._poly_over_constants((self.denom,) + self.field._no_parts[1:])
            if self.field.phi > 1 and not num.is_zero:
                g = num.gcd(den)
                if g.degree() > 0:
                    num, den = num.exquo(g), den.exquo(g)
                    lc = den.LC()
                    num, den = num.quo_ground(lc), den.monic()
            self._view = (num, den)
        return self._view

    def constant_value(self):
        """The constants-field element of a constant function."""
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self.field.constants.from_qq([p.coeff(1) for p in self.parts])

    def constant_coordinates(self) -> CycloNum:
        return self.field.constants.to_cyclo(self.constant_value())

    def rational_value(self) -> Optional[Fraction]:
        """The value as a Fraction when the function is a rational constant."""
        if not self.is_constant:
            return None
        coords = self.constant_coordinates()
        return coords.rational_part if coords.is_rational else None

    def key(self) -> Tuple:
        return (self.field.level, self.parts, self.denom)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.field.level == other.field.level and self.denom == other.denom and self.parts == other.parts

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __str__(self) -> str:
        from pvkit.fieldcore.parser import format_ratfunc

        return format_ratfunc(self)

    def __repr__(self) -> str:
        return f"RatFunc({self})"
