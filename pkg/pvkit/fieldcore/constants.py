"""
The constants field C0 = Q(zeta_N).

Elements are sympy domain elements: rationals (QQ) when phi(N) = 1, algebraic
numbers over the N-th cyclotomic polynomial otherwise. CycloNum is the
domain-free coordinate view used for printing and hashing.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence, Tuple

from sympy import totient
from sympy.polys.domains import QQ

from pvkit.exceptions import ConstantsFieldError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CycloNum:
    """Coordinates of an element of Q(zeta_N) in the basis 1, zeta, ..., zeta^(phi(N)-1)."""

    level: int
    coeffs: Tuple[Fraction, ...]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    @property
    def rational_part(self) -> Fraction:
        return self.coeffs[0]

    def __str__(self) -> str:
        return format_cyclo(self.coeffs)


def _format_fraction(value: Fraction) -> str:
    return str(value)


def format_cyclo(coeffs: Sequence[Fraction]) -> str:
    """Render coordinates as a polynomial in zeta, highest power first."""
    parts = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        magnitude = abs(c)
        if power == 0:
            body = _format_fraction(magnitude)
        else:
            mono = "zeta" if power == 1 else f"zeta^{power}"
            body = mono if magnitude == 1 else f"{_format_fraction(magnitude)}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    text = f"-{first_body}" if first_sign == "-" else first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class ConstantField:
    """Q(zeta_N) together with conversions between sympy elements and coordinates."""

    def __init__(self, level: int):
        if level < 1:
            raise ValueError(f"zeta level must be positive, got {level}")
        self.level = level
        self.degree = int(totient(level))
        if self.degree == 1:
            self.domain = QQ
        else:
            self.domain = QQ.cyclotomic_field(level)
        # Q(zeta_N) contains exactly the roots of unity of order dividing this.
        self.root_count = 2 * level if level % 2 == 1 else level
        self.galois_exponents = tuple(k for k in range(1, level + 1) if gcd(k, level) == 1)
        self._power_table = tuple(
            tuple(QQ(c.numerator, c.denominator) for c in self.coordinates(self.power(self.zeta, m)))
            for m in range(level)
        )
        logger.debug(f"Constants field Q(zeta_{level}) of degree {self.degree}")

    def power_coordinates(self, exponent: int) -> Tuple:
        """Coordinates of zeta ** exponent as QQ elements (zeta ** N = 1)."""
        return self._power_table[exponent % self.level]

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    @property
    def zeta(self):
        """The generator zeta_N (equal to -1 when N = 2 and to 1 when N = 1)."""
        if self.degree == 1:
            return self.domain.convert(-1 if self.level == 2 else 1)
        return self.domain([QQ.one, QQ.zero])

    def from_fraction(self, value: Fraction):
        return self.domain.convert(QQ(value.numerator, value.denominator))

    def from_int(self, value: int):
        return self.domain.convert(value)

    def from_coordinates(self, coords: Sequence[Fraction]):
        if len(coords) > self.degree:
            raise ValueError(f"expected at most {self.degree} coordinates, got {len(coords)}")
        if self.degree == 1:
            return self.from_fraction(Fraction(coords[0]) if coords else Fraction(0))
        rep = [QQ(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(coords)]
        return self.domain(rep)

    def from_qq(self, coords: Sequence):
        """Element with the given QQ coordinates."""
        if self.degree == 1:
            return self.domain.convert(coords[0])
        return self.domain(list(reversed(list(coords))))

    def coordinates(self, element) -> Tuple[Fraction, ...]:
        if self.degree == 1:
            values = [element]
        else:
            values = list(reversed(element.to_list()))
        values += [QQ.zero] * (self.degree - len(values))
        return tuple(Fraction(int(QQ.numer(v)), int(QQ.denom(v))) for v in values)

    def to_cyclo(self, element) -> CycloNum:
        return CycloNum(self.level, self.coordinates(element))

    def is_rational(self, element) -> bool:
        return all(c == 0 for c in self.coordinates(element)[1:])

    def divide(self, a, b):
        if b == self.zero:
            raise ZeroDivisionError("division by zero in the constants field")
        return self.domain.quo(a, b)

    def power(self, element, exponent: int):
        if exponent < 0:
            return self.divide(self.one, self.power(element, -exponent))
        result = self.one
        for _ in range(exponent):
            result = result * element
        return result

    def root_of_unity(self, order: int, exponent: int = 1):
        """zeta_order ** exponent, provided zeta_order lies in Q(zeta_N)."""
        if order < 1:
            raise ValueError(f"root of unity order must be positive, got {order}")
        if self.root_count % order != 0:
            raise ConstantsFieldError(
                f"requires larger constants field: zeta_{order} is not in Q(zeta_{self.level})"
            )
        step = (self.root_count // order) * (exponent % order)
        return self.power(self._primitive_root(), step % self.root_count)

    def roots_of_unity(self, order: int):
        """All order-th roots of unity, listed as zeta_order ** i for i = 0..order-1."""
        return [self.root_of_unity(order, i) for i in range(order)]

    def _primitive_root(self):
        if self.level % 2 == 0:
            return self.zeta
        # -zeta_N has order 2N when N is odd
        return -self.zeta

    def format(self, element) -> str:
        return format_cyclo(self.coordinates(element))

    def __eq__(self, other) -> bool:
        return isinstance(other, ConstantField) and other.level == self.level

    def __hash__(self) -> int:
        return hash(("ConstantField", self.level))

    def __repr__(self) -> str:
        return f"ConstantField(level={self.level})"


@lru_cache(maxsize=None)
def get_constant_field(level: int) -> ConstantField:
    """Cached constants field per cyclotomic level."""
    return ConstantField(level)
