import random
from fractions import Fraction

import pytest

from pathcenters import ParseError, format_scalar, parse_scalar
from pathcenters.scalars import GaussianRational


def test_construction_normalizes():
    z = GaussianRational(Fraction(2, 4), Fraction(-3, 9))
    assert z.re == Fraction(1, 2) and z.im == Fraction(-1, 3)
    assert GaussianRational(3) == 3
    assert not GaussianRational(0, 0)


def test_field_arithmetic():
    a = GaussianRational(Fraction(1, 2), Fraction(1, 3))
    b = GaussianRational(Fraction(-2, 5), Fraction(1))
    assert a + b == GaussianRational(Fraction(1, 10), Fraction(4, 3))
    assert a - a == 0
    assert a * b == GaussianRational(
        Fraction(1, 2) * Fraction(-2, 5) - Fraction(1, 3),
        Fraction(1, 2) + Fraction(1, 3) * Fraction(-2, 5),
    )
    assert (a / b) * b == a
    assert a * GaussianRational(1) == a
    assert -a + a == 0
    assert 2 * a == a + a
    assert a / 2 + a / 2 == a


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


def test_mul_cross_terms():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert (GaussianRational(1, 1)) * (GaussianRational(1, -1)) == 2


def test_abs1():
    assert GaussianRational(Fraction(-1, 2), Fraction(1, 3)).abs1() == Fraction(5, 6)
    assert GaussianRational(Fraction(3, 4)).abs1() == Fraction(3, 4)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("0", GaussianRational(0)),
        ("1", GaussianRational(1)),
        ("-3/4", GaussianRational(Fraction(-3, 4))),
        ("1/2+1/3*i", GaussianRational(Fraction(1, 2), Fraction(1, 3))),
        ("1/2-3/4*i", GaussianRational(Fraction(1, 2), Fraction(-3, 4))),
        ("i", GaussianRational(0, 1)),
        ("-i", GaussianRational(0, -1)),
        ("2+i", GaussianRational(2, 1)),
        ("2-i", GaussianRational(2, -1)),
        ("-2*i", GaussianRational(0, -2)),
        ("5/7*i", GaussianRational(0, Fraction(5, 7))),
    ],
)
def test_parse(text, expected):
    assert parse_scalar(text) == expected


@pytest.mark.parametrize("bad", ["", "x", "1/2/3", "1+", "1/0", "i*i", "1 2"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        parse_scalar(bad)


def test_format_parse_round_trip():
    rng = random.Random(1)
    for _ in range(200):
        z = GaussianRational(
            Fraction(rng.randint(-20, 20), rng.randint(1, 12)),
            Fraction(rng.randint(-20, 20), rng.randint(1, 12)),
        )
        assert parse_scalar(format_scalar(z)) == z


def test_hash_consistency():
    assert hash(GaussianRational(Fraction(1, 2))) == hash(Fraction(1, 2))
    table = {GaussianRational(1, 2): "a"}
    assert table[GaussianRational(1, 2)] == "a"
