from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from resinterp.algebra.order import LEX
from resinterp.algebra.poly import MultiPoly
from resinterp.algebra.scalar import I, ONE, ZERO, GaussianRational, format_scalar
from resinterp.errors import ParseError, UnknownIdentifierError
from resinterp.polyparse import PolySource, format_poly, parse_poly, parse_scalar

from helpers import rand_poly, seeded

V = ("s1", "s2")


def test_parse_scalar_examples():
    assert parse_scalar("3/2") == GaussianRational(Fraction(3, 2))
    assert parse_scalar("-1+2i") == GaussianRational(-1, 2)
    assert parse_scalar("0") == ZERO


@pytest.mark.parametrize("text,value", [
    ("1/2-1/3*i", GaussianRational(Fraction(1, 2), Fraction(-1, 3))),
    ("-7", GaussianRational(-7)),
    ("i", I),
    ("-i", -I),
    ("1/2*i", GaussianRational(0, Fraction(1, 2))),
    ("2i", GaussianRational(0, 2)),
    ("4 + i", GaussianRational(4, 1)),
    ("6/4", GaussianRational(Fraction(3, 2))),
])
def test_parse_scalar_forms(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["", "1/", "1//2", "abc", "1+2", "1+2j", "--1", "1/0", "3 i i"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ParseError):
        parse_scalar(text)


@given(st.integers(-10**6, 10**6), st.integers(1, 999), st.integers(-10**6, 10**6), st.integers(1, 999))
def test_scalar_format_round_trip(a, b, c, d):
    z = GaussianRational(Fraction(a, b), Fraction(c, d))
    text = format_scalar(z)
    assert " " not in text
    assert parse_scalar(text) == z


def test_parse_poly_examples():
    s1, s2 = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    assert parse_poly("s1^2 - s2", V) == s1 * s1 - s2
    assert parse_poly("(s1+s2)^2", V) == s1 * s1 + 2 * s1 * s2 + s2 * s2
    with pytest.raises(UnknownIdentifierError) as err:
        parse_poly("s3", V)
    assert err.value.position == 1


def test_parse_poly_precedence():
    s1 = MultiPoly.variable(2, 0)
    assert parse_poly("-s1^2", V) == -(s1 * s1)
    assert parse_poly("2*s1^3", V) == 2 * s1 ** 3
    assert parse_poly("1 - s1 - s1", V) == 1 - 2 * s1
    assert parse_poly("s1 * -1", V) == -s1
    assert parse_poly("(1+i)*s1", V) == GaussianRational(1, 1) * s1
    assert parse_poly("2i*s1", V) == GaussianRational(0, 2) * s1
    assert parse_poly("s1^0", V) == MultiPoly.one(2)
    assert parse_poly(PolySource("x*y - 1", ("x", "y"))) == parse_poly("s1*s2 - 1", V)


@pytest.mark.parametrize("text,position,cls", [
    ("s1 + * s2", 6, ParseError),
    ("s1**2", 4, ParseError),
    ("s1 + s3", 6, UnknownIdentifierError),
    ("2 s1", 3, ParseError),
    ("s1s2", 1, UnknownIdentifierError),
    ("s1^-1", 4, ParseError),
    ("s1^1/2", 4, ParseError),
    ("s1^2^2", 5, ParseError),
    ("(s1", 4, ParseError),
    ("s1 + é", 6, ParseError),
    ("é + s1", 1, ParseError),
    ("s1)", 3, ParseError),
    ("", 1, ParseError),
    ("s1 + 1/0", 6, ParseError),
])
def test_parse_poly_error_positions(text, position, cls):
    with pytest.raises(cls) as err:
        parse_poly(text, V)
    assert type(err.value) is cls
    assert err.value.position == position


def test_error_position_counts_bytes():
    # a no-break space is whitespace but two bytes wide in UTF-8
    with pytest.raises(ParseError) as err:
        parse_poly("s1\u00a0+ $", V)
    assert err.value.position == 7


def test_declared_names_are_checked():
    with pytest.raises(ParseError):
        PolySource("x", ("x", "x"))
    with pytest.raises(ParseError):
        PolySource("i", ("i",))


def test_format_examples():
    assert format_poly(parse_poly("s1^2 - s2", V)) == "s1^2 - s2"
    assert format_poly(MultiPoly.zero(2)) == "0"
    assert format_poly(MultiPoly.monomial((1, 0), GaussianRational(0, Fraction(1, 2)))) == "1/2*i*s1"


def test_format_details():
    p = parse_poly("-s2^3 + (2-i)*s1*s2 - 3/4 + s1^2*s2", V)
    assert format_poly(p) == "s1^2*s2 - s2^3 + (2-i)*s1*s2 - 3/4"
    assert format_poly(p, LEX) == "s1^2*s2 + (2-i)*s1*s2 - s2^3 - 3/4"
    assert format_poly(parse_poly("-i*s1 - 1", V)) == "-i*s1 - 1"
    assert format_poly(parse_poly("x^2 + 1", ("x",)), variables=("x",)) == "x^2 + 1"


def test_round_trip_500_random_polynomials():
    rng = seeded(21)
    names = [("s1", "s2", "s3"), ("x", "y", "z"), ("alpha", "b_2", "Z")]
    for k in range(500):
        n = rng.randint(1, 3)
        p = rand_poly(rng, n, rng.randint(0, 5), density=rng.random(), complex_=True)
        variables = names[k % 3][:n]
        for order in (None, LEX):
            text = format_poly(p, order, variables) if order else format_poly(p, variables=variables)
            assert parse_poly(text, variables) == p


def test_format_is_deterministic():
    p = parse_poly("s2 + s1 + 1 + s1*s2", V)
    q = MultiPoly(2, dict(reversed(list(p.items()))))
    assert format_poly(p) == format_poly(q)
    assert ONE == parse_poly(format_poly(MultiPoly.one(2)), V).constant_term()
