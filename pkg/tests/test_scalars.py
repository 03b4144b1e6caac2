from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from l2betti.scalars import (
    ParseError,
    Scalar,
    format_rational,
    parse_rational,
    sc,
)

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=40
)
scalars = st.builds(Scalar, rationals, rationals)


def test_construction_and_parts():
    z = Scalar(Fraction(1, 2), Fraction(-3, 4))
    assert z.re == Fraction(1, 2)
    assert z.im == Fraction(-3, 4)
    assert not z.is_zero()
    assert Scalar(0, 0).is_zero()


def test_known_products():
    i = Scalar.i()
    assert i * i == Scalar(-1)
    assert sc(1, 1) * sc(1, -1) == sc(2)
    assert sc(3, 2) * sc(1, 4) == sc(3 - 8, 12 + 2)


def test_division_inverts_multiplication():
    a = sc(Fraction(2, 3), Fraction(-1, 5))
    b = sc(Fraction(7, 2), Fraction(1, 3))
    assert (a * b) / b == a
    with pytest.raises(ZeroDivisionError):
        a / Scalar.zero()


def test_conjugation_and_abs2():
    z = sc(3, -4)
    assert z.conj() == sc(3, 4)
    assert z.abs2() == Fraction(25)
    assert (z * z.conj()).re == z.abs2()


@given(scalars, scalars)
def test_mul_commutes(a, b):
    assert a * b == b * a


@given(scalars, scalars, scalars)
def test_mul_distributes(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(scalars, scalars)
def test_conj_is_multiplicative(a, b):
    assert (a * b).conj() == a.conj() * b.conj()


@given(scalars)
def test_nonzero_scalars_invert(a):
    if not a.is_zero():
        assert a * a.inverse() == Scalar.one()


def test_parse_and_format_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-6/8") == Fraction(-3, 4)
    assert parse_rational("5") == Fraction(5)
    assert format_rational(Fraction(3, 4)) == "3/4"
    assert format_rational(Fraction(-5)) == "-5"
    for bad in ["", "1/0", "a/b", "1.5", None, "1/2/3"]:
        with pytest.raises(ParseError):
            parse_rational(bad)  # type: ignore[arg-type]


def test_json_round_trip():
    z = sc(Fraction(1, 2), Fraction(-3, 7))
    assert Scalar.from_json(z.to_json()) == z
    r = sc(Fraction(5, 6))
    assert r.to_json() == "5/6"
    assert Scalar.from_json("5/6") == r
    assert Scalar.from_json({"re": "1/2"}) == sc(Fraction(1, 2))
    with pytest.raises(ParseError):
        Scalar.from_json({"re": "1", "bogus": "2"})


def test_immutability_and_hash():
    z = sc(1, 2)
    with pytest.raises(AttributeError):
        z.re = Fraction(9)  # type: ignore[misc]
    assert hash(sc(1, 2)) == hash(sc(1, 2))
    assert len({sc(1, 2), sc(1, 2), sc(2, 1)}) == 2
