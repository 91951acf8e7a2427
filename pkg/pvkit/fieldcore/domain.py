"""
F = C0(x) as a sympy ground domain, so DomainMatrix can run its elimination
routines on RatFunc entries.
"""

from functools import lru_cache

from sympy.polys.domains.characteristiczero import CharacteristicZero
from sympy.polys.domains.field import Field
from sympy.polys.domains.simpledomain import SimpleDomain

from pvkit.fieldcore.ratfunc import DiffField, RatFunc


class FunctionFieldDomain(Field, CharacteristicZero, SimpleDomain):
    """Q(zeta_N)(x) with RatFunc elements."""

    dtype = RatFunc

    has_assoc_Ring = False
    has_assoc_Field = True

    def __init__(self, field: DiffField):
        self.field = field
        self.zero = field.zero
        self.one = field.one
        self.rep = f"Q(zeta_{field.level})(x)"

    def __eq__(self, other) -> bool:
        return isinstance(other, FunctionFieldDomain) and other.field.level == self.field.level

    def __hash__(self) -> int:
        return hash(("FunctionFieldDomain", self.field.level))

    def __str__(self) -> str:
        return self.rep

    def new(self, value):
        return self.field.coerce(value)

    def of_type(self, element) -> bool:
        return isinstance(element, RatFunc) and element.field is self.field

    def to_sympy(self, a: RatFunc):
        return a.num.as_expr() / a.den.as_expr()

    def from_sympy(self, a):
        return self.field.parse(str(a))

    def from_ZZ(K1, a, K0):
        return K1.field.from_int(int(a))

    from_ZZ_python = from_ZZ
    from_ZZ_gmpy = from_ZZ

    def from_QQ(K1, a, K0):
        return K1.field.from_int(int(K0.numer(a))) / int(K0.denom(a))

    from_QQ_python = from_QQ
    from_QQ_gmpy = from_QQ

    def from_AlgebraicField(K1, a, K0):
        return K1.field.constant(a)

    def get_field(self) -> "FunctionFieldDomain":
        return self

    def is_positive(self, a) -> bool:
        return False

    def is_negative(self, a) -> bool:
        return False


@lru_cache(maxsize=None)
def get_domain(field: DiffField) -> FunctionFieldDomain:
    return FunctionFieldDomain(field)
