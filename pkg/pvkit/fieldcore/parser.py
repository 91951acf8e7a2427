"""
Text form of rational functions.

Grammar (whitespace ignored):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'x' | 'zeta' | '(' expr ')'

Printing is fully parenthesized, "(num)/(den)" or "(num)", so that printed
output always parses back to the same element.
"""

import logging
import re
from typing import List, NamedTuple

from sympy import Poly

from pvkit.exceptions import ParseError
from pvkit.fieldcore.constants import format_cyclo
from pvkit.fieldcore.ratfunc import DiffField, RatFunc

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(r"\s*(?:(\d+)|(zeta|x)|([+\-*/^()]))")


class Token(NamedTuple):
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        if text[position].isspace():
            position += 1
            continue
        match = TOKEN_PATTERN.match(text, position)
        if match is None:
            raise ParseError(f"unexpected character {text[position]!r}", position)
        number, name, symbol = match.groups()
        start = match.start(1) if number else match.start(2) if name else match.start(3)
        if number:
            tokens.append(Token("int", number, start))
        elif name:
            tokens.append(Token(name, name, start))
        else:
            tokens.append(Token(symbol, symbol, start))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, field: DiffField):
        self.tokens = tokenize(text)
        self.index = 0
        self.field = field

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str) -> Token:
        token = self.current
        if token.kind != kind:
            wanted = "end of input" if kind == "end" else repr(kind)
            found = "end of input" if token.kind == "end" else repr(token.text)
            raise ParseError(f"expected {wanted}, found {found}", token.position)
        return self.advance()

    def parse(self) -> RatFunc:
        if self.current.kind == "end":
            raise ParseError("empty expression", self.current.position)
        value = self.expr()
        self.expect("end")
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while self.current.kind in ("+", "-"):
            op = self.advance()
            rhs = self.term()
            value = value + rhs if op.kind == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.unary()
        while self.current.kind in ("*", "/"):
            op = self.advance()
            rhs = self.unary()
            if op.kind == "*":
                value = value * rhs
            else:
                if rhs.is_zero:
                    raise ParseError("division by the zero polynomial", op.position)
                value = value / rhs
        return value

    def unary(self) -> RatFunc:
        if self.current.kind == "-":
            self.advance()
            return -self.unary()
        if self.current.kind == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.current.kind == "^":
            self.advance()
            token = self.current
            if token.kind != "int":
                raise ParseError("exponent must be a nonnegative integer", token.position)
            self.advance()
            return base ** int(token.text)
        return base

    def atom(self) -> RatFunc:
        token = self.current
        if token.kind == "int":
            self.advance()
            return self.field.from_int(int(token.text))
        if token.kind == "x":
            self.advance()
            return self.field.x
        if token.kind == "zeta":
            self.advance()
            return self.field.zeta
        if token.kind == "(":
            self.advance()
            if self.current.kind == ")":
                raise ParseError("empty parentheses", self.current.position)
            value = self.expr()
            self.expect(")")
            return value
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise ParseError(f"unexpected {found}", token.position)


def parse(text: str, field: DiffField) -> RatFunc:
    """Parse text into a canonical element of field."""
    return _Parser(text, field).parse()


def _monomial(power: int) -> str:
    return "x" if power == 1 else f"x^{power}"


def format_poly(p: Poly, field: DiffField) -> str:
    constants = field.constants
    coeffs = p.rep.to_list()
    top = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        power = top - i
        if c == field.domain.zero:
            continue
        coords = constants.coordinates(c)
        if all(q == 0 for q in coords[1:]):
            value = coords[0]
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            if power == 0:
                body = str(magnitude)
            elif magnitude == 1:
                body = _monomial(power)
            else:
                body = f"{magnitude}*{_monomial(power)}"
        else:
            # the sign of the top zeta coordinate goes outside the parentheses
            leading = next(q for q in reversed(coords) if q != 0)
            sign = "-" if leading < 0 else "+"
            if leading < 0:
                coords = tuple(-q for q in coords)
            body = f"({format_cyclo(coords)})"
            if power > 0:
                body += f"*{_monomial(power)}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    text = f"-{first_body}" if first_sign == "-" else first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def format_ratfunc(f: RatFunc) -> str:
    """Canonical text of f: "(num)" or "(num)/(den)"."""
    num = format_poly(f.num, f.field)
    if f.den.is_one:
        return f"({num})"
    return f"({num})/({format_poly(f.den, f.field)})"
