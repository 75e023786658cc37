"""Coefficient rings.

Series coefficients live either in ℚ (``fractions.Fraction``) or in ℚ[t]
(sympy sparse polynomials over ``QQ``). Both rings only need addition,
multiplication and scaling by a rational, so the series kernel stays ring
agnostic and asks the ring for its zero, one and conversions.
"""
import enum
import re
from fractions import Fraction
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from ncps.errors import InputError

POLY_T, T = ring("t", QQ)

RE_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")

Coefficient = Fraction | PolyElement


def parse_rational(raw: str) -> Fraction:
    """Parse a canonical ``p/q`` or ``p`` string."""
    if not isinstance(raw, str) or not RE_RATIONAL.match(raw):
        raise InputError(f"Malformed rational {raw!r}")
    try:
        value = Fraction(raw)
    except ZeroDivisionError as e:
        raise InputError(f"Zero denominator in {raw!r}") from e
    if str(value) != raw:
        raise InputError(f"Rational {raw!r} is not in lowest terms ({value})")
    return value


def to_qq(value: Fraction | int) -> Any:
    """Fraction to a sympy QQ element."""
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(value: Any) -> Fraction:
    """QQ element (python or gmpy backend) to a Fraction."""
    return Fraction(int(value.numerator), int(value.denominator))


def t_power(exponent: int, scale: Fraction | int = 1) -> PolyElement:
    """scale · t^exponent."""
    if exponent < 0:
        raise InputError(f"Negative t exponent {exponent}")
    return POLY_T.from_dict({(exponent,): to_qq(scale)}) if scale else POLY_T.zero


def poly_t_pairs(value: PolyElement) -> list[tuple[Fraction, int]]:
    """(coefficient, exponent) pairs sorted by exponent, zeros dropped."""
    pairs = [(from_qq(c), monom[0]) for monom, c in value.items() if c]
    return sorted(pairs, key=lambda pair: pair[1])


def evaluate_t(value: PolyElement, point: Fraction | int) -> Fraction:
    """Specialise t to a rational point."""
    point = Fraction(point)
    return sum(
        (c * point**k for c, k in poly_t_pairs(value)),
        start=Fraction(0),
    )


def derivative_t(value: PolyElement) -> PolyElement:
    """Formal derivative in t."""
    return value.diff(T)


class CoefficientRing(str, enum.Enum):
    """Coefficient rings supported by the engine."""

    RATIONAL = "rational"
    RATIONAL_POLY_T = "rational_poly_t"

    @property
    def zero(self) -> Coefficient:
        """Additive unit."""
        if self == CoefficientRing.RATIONAL:
            return Fraction(0)
        return POLY_T.zero

    @property
    def one(self) -> Coefficient:
        """Multiplicative unit."""
        if self == CoefficientRing.RATIONAL:
            return Fraction(1)
        return POLY_T.one

    def coerce(self, value: Any) -> Coefficient:
        """Bring an int, Fraction or ℚ[t] element into the ring."""
        if self == CoefficientRing.RATIONAL:
            if isinstance(value, PolyElement):
                raise InputError("Cannot coerce a polynomial in t to a rational")
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise InputError(f"Cannot coerce {value!r} to a rational")
        if isinstance(value, PolyElement):
            if value.ring != POLY_T:
                raise InputError(f"Polynomial over foreign ring {value.ring}")
            return value
        if isinstance(value, (int, Fraction)):
            return t_power(0, value)
        raise InputError(f"Cannot coerce {value!r} to a polynomial in t")

    def is_zero(self, value: Coefficient) -> bool:
        """Zero test."""
        return not value

    def scale(self, value: Coefficient, factor: Fraction | int) -> Coefficient:
        """Multiply by a rational scalar."""
        if self == CoefficientRing.RATIONAL:
            return value * factor
        return value * to_qq(factor)

    def to_json(self, value: Coefficient) -> str | list[list[Any]]:
        """Serialise a coefficient."""
        if self == CoefficientRing.RATIONAL:
            return str(value)
        return [[str(c), k] for c, k in poly_t_pairs(value)]

    def from_json(self, raw: Any) -> Coefficient:
        """Parse a serialised coefficient."""
        if self == CoefficientRing.RATIONAL:
            return parse_rational(raw)
        if not isinstance(raw, list):
            raise InputError(f"Expected [rational, exponent] pairs, got {raw!r}")
        value = POLY_T.zero
        last = -1
        for pair in raw:
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise InputError(f"Malformed polynomial term {pair!r}")
            c, k = parse_rational(pair[0]), pair[1]
            if not isinstance(k, int) or isinstance(k, bool) or k <= last:
                raise InputError(f"Exponents must be increasing integers ≥ 0: {raw!r}")
            if not c:
                raise InputError(f"Zero polynomial coefficient in {raw!r}")
            last = k
            value += t_power(k, c)
        return value

    def render(self, value: Coefficient) -> str:
        """Human readable rendering."""
        if self == CoefficientRing.RATIONAL:
            return str(value)
        parts = []
        for c, k in poly_t_pairs(value):
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{k}")
        return " + ".join(parts) if parts else "0"
