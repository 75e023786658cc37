"""Coefficient ring tests."""
from fractions import Fraction

import pytest

from ncps.coefficients import (
    POLY_T,
    CoefficientRing,
    derivative_t,
    evaluate_t,
    parse_rational,
    poly_t_pairs,
    t_power,
)
from ncps.errors import InputError

RATIONAL = CoefficientRing.RATIONAL
POLY = CoefficientRing.RATIONAL_POLY_T


@pytest.mark.parametrize(
    "raw, expected",
    [("5/2", Fraction(5, 2)), ("-3", Fraction(-3)), ("0", Fraction(0)), ("-7/9", Fraction(-7, 9))],
)
def test_parse_rational(raw: str, expected: Fraction) -> None:
    """Test canonical rationals parse."""
    assert parse_rational(raw) == expected


@pytest.mark.parametrize("raw", ["4/2", "1/0", "abc", "+1", "1.5", "-0", "0/1", " 1", 3])
def test_parse_rational_rejects(raw) -> None:
    """Test non-canonical rationals are rejected."""
    with pytest.raises(InputError):
        parse_rational(raw)


def test_rational_ring() -> None:
    """Test the rational ring."""
    assert RATIONAL.zero == 0 and RATIONAL.one == 1
    assert RATIONAL.coerce(2) == Fraction(2)
    assert RATIONAL.scale(Fraction(1, 2), 3) == Fraction(3, 2)
    assert RATIONAL.to_json(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(InputError):
        RATIONAL.coerce(t_power(1))
    with pytest.raises(InputError):
        RATIONAL.coerce(0.5)


def test_poly_json() -> None:
    """Test ℚ[t] serialisation is structural and exact."""
    value = t_power(0, 1) + t_power(2, Fraction(5, 2))
    raw = POLY.to_json(value)
    assert raw == [["1", 0], ["5/2", 2]]
    assert POLY.from_json(raw) == value
    assert POLY.to_json(POLY_T.zero) == []


@pytest.mark.parametrize(
    "raw",
    [
        [["1", 2], ["1", 1]],
        [["0", 1]],
        [["1", 1], ["2", 1]],
        "1",
        [["1"]],
        [["1", -1]],
        [["1", True]],
    ],
)
def test_poly_json_rejects(raw) -> None:
    """Test malformed polynomial coefficients."""
    with pytest.raises(InputError):
        POLY.from_json(raw)


def test_poly_render() -> None:
    """Test human readable ℚ[t] rendering."""
    value = t_power(1, 3) + t_power(2, Fraction(5, 2)) + t_power(0, -1)
    assert POLY.render(value) == "-1 + 3*t + 5/2*t^2"
    assert POLY.render(POLY_T.zero) == "0"


def test_evaluate_and_derivative() -> None:
    """Test specialisation and formal derivative in t."""
    value = t_power(2) + t_power(0, 1)
    assert evaluate_t(value, 2) == 5
    assert evaluate_t(value, Fraction(1, 2)) == Fraction(5, 4)
    assert derivative_t(t_power(3, 2)) == t_power(2, 6)
    assert poly_t_pairs(derivative_t(value)) == [(Fraction(2), 1)]


def test_poly_coerce() -> None:
    """Test rationals lift into ℚ[t]."""
    assert POLY.coerce(Fraction(1, 2)) == t_power(0, Fraction(1, 2))
    assert POLY.scale(t_power(1), Fraction(2, 3)) == t_power(1, Fraction(2, 3))
    assert not POLY.coerce(0)
