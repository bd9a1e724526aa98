import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from njac.errors import NegativeExponent, ParseError
from njac.parsing import parse_polynomial as P
from njac.polynomials import MPoly, format_poly
from njac.rationals import Q


def test_implicit_multiplication():
    assert P("3x^2y") == P("3*x^2*y")
    assert P("2(x+y)") == P("2*x+2*y")


def test_rational_literals():
    assert P("1/2*x + 3/4") == P("x").scale(Q(1, 2)) + MPoly.const(("x", "y"), Q(3, 4))


def test_whitespace_insignificant():
    assert P("  y ^ 2 -  x^3 ") == P("y^2-x^3")


def test_unary_minus():
    assert P("-x + y") == P("y") - P("x")


def test_negative_exponent_rejected():
    with pytest.raises(NegativeExponent):
        P("x^-1")


def test_malformed_reports_position():
    with pytest.raises(ParseError) as err:
        P("x + ?")
    assert err.value.position == 4


def test_unknown_variable_rejected():
    with pytest.raises(ParseError):
        P("x + t")


def test_unbalanced_parens():
    with pytest.raises(ParseError):
        P("(x+y")


small_coeff = st.integers(min_value=-5, max_value=5)
exponent = st.tuples(st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=4))


@given(st.dictionaries(exponent, small_coeff, min_size=0, max_size=6))
@settings(max_examples=80, deadline=None)
def test_print_parse_roundtrip(d):
    f = MPoly(("x", "y"), {e: Q(c) for e, c in d.items()})
    assert P(format_poly(f)) == f
