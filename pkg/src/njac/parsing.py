"""Parser for polynomial germ expressions.

Grammar (UTF-8 text): variables x, y (u, v accepted as synonyms at the CLI
layer); integer and p/q rational literals; operators + - * ^ and parentheses;
^ takes a nonnegative integer; * may be omitted between a literal and a
variable or between variables ("3x^2y").  Whitespace is insignificant.
"""

from .errors import NegativeExponent, ParseError
from .polynomials import MPoly
from .rationals import Q

_DEFAULT_VARS = ("x", "y")


class _Lexer:
    def __init__(self, text, var_names):
        self.text = text
        self.pos = 0
        self.var_names = var_names

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def error(self, message, pos=None):
        raise ParseError(message, self.pos if pos is None else pos)

    def take_int(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start : self.pos])


def parse_polynomial(text, var_names=_DEFAULT_VARS):
    """Parse an expression into an exact polynomial in `var_names`.

    Raises ParseError (with position) on malformed input and
    NegativeExponent for exponents written with a minus sign.
    """
    if not isinstance(text, str):
        raise ParseError("expression must be a string", 0)
    lex = _Lexer(text, tuple(var_names))
    poly = _parse_sum(lex)
    if lex.peek() is not None:
        lex.error(f"unexpected character {lex.text[lex.pos]!r}")
    return poly


def _parse_sum(lex):
    ch = lex.peek()
    negate = False
    if ch in ("+", "-"):
        lex.pos += 1
        negate = ch == "-"
    acc = _parse_product(lex)
    if negate:
        acc = -acc
    while True:
        ch = lex.peek()
        if ch == "+":
            lex.pos += 1
            acc = acc + _parse_product(lex)
        elif ch == "-":
            lex.pos += 1
            acc = acc - _parse_product(lex)
        else:
            return acc


def _parse_product(lex):
    acc = _parse_power(lex)
    while True:
        ch = lex.peek()
        if ch == "*":
            lex.pos += 1
            acc = acc * _parse_power(lex)
        elif ch is not None and (ch.isalpha() or ch.isdigit() or ch == "("):
            # implicit multiplication: "3x", "x^2y", "2(x+y)"
            acc = acc * _parse_power(lex)
        else:
            return acc


def _parse_power(lex):
    base = _parse_atom(lex)
    ch = lex.peek()
    if ch != "^":
        return base
    lex.pos += 1
    ch = lex.peek()
    if ch == "-":
        raise NegativeExponent("negative exponent", lex.pos)
    if ch is None or not ch.isdigit():
        lex.error("exponent must be a nonnegative integer")
    n = lex.take_int()
    return base**n


def _parse_atom(lex):
    ch = lex.peek()
    if ch is None:
        lex.error("unexpected end of expression")
    if ch == "(":
        lex.pos += 1
        inner = _parse_sum(lex)
        if lex.peek() != ")":
            lex.error("expected ')'")
        lex.pos += 1
        return inner
    if ch.isdigit():
        num = lex.take_int()
        if lex.peek() == "/":
            lex.pos += 1
            if lex.peek() is None or not lex.peek().isdigit():
                lex.error("expected denominator after '/'")
            den = lex.take_int()
            if den == 0:
                lex.error("zero denominator")
            return MPoly.const(lex.var_names, Q(num, den))
        return MPoly.const(lex.var_names, Q(num))
    if ch.isalpha():
        if ch not in lex.var_names:
            lex.error(f"unknown variable {ch!r}")
        lex.pos += 1
        return MPoly.var(lex.var_names, ch)
    lex.error(f"unexpected character {ch!r}")
