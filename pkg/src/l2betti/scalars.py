"""Exact scalars: Gaussian rationals, i.e. complex numbers with Fraction parts.

Every number that enters a dimension computation is a Scalar.  Floats exist
only in the optional float backend and never feed back into exact results.

Serialization conventions (used by the CLI and the file formats):
  * plain rationals are lowest-terms strings "p/q", with "p" for q = 1
  * Gaussian rationals are {"re": "p/q", "im": "p/q"}; a bare "p/q" string is
    accepted on input and means a real value
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]


class ParseError(ValueError):
    """Malformed rational or scalar text."""


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction.

    Rejects anything Fraction() would accept but the file formats do not
    (floats, exponents, whitespace padding inside the token).
    """
    if not isinstance(text, str):
        raise ParseError(f"expected rational string, got {text!r}")
    s = text.strip()
    if not s:
        raise ParseError("empty rational string")
    num, sep, den = s.partition("/")
    try:
        if sep:
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None
    return value


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Scalar:
    """Immutable Gaussian rational re + im*i with exact Fraction parts."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Scalar":
        return _ZERO

    @staticmethod
    def one() -> "Scalar":
        return _ONE

    @staticmethod
    def i() -> "Scalar":
        return _I

    @staticmethod
    def from_json(obj) -> "Scalar":
        if isinstance(obj, str):
            return Scalar(parse_rational(obj))
        if isinstance(obj, dict):
            extra = set(obj) - {"re", "im"}
            if extra:
                raise ParseError(f"unknown scalar fields {sorted(extra)}")
            re = parse_rational(obj["re"]) if "re" in obj else Fraction(0)
            im = parse_rational(obj["im"]) if "im" in obj else Fraction(0)
            return Scalar(re, im)
        if isinstance(obj, int):
            return Scalar(obj)
        raise ParseError(f"cannot parse scalar from {obj!r}")

    def to_json(self):
        if self.im == 0:
            return format_rational(self.re)
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "Scalar") -> "Scalar":
        a, b, c, d = self.re, self.im, other.re, other.im
        return Scalar(a * c - b * d, a * d + b * c)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Scalar")
        a, b, c, d = self.re, self.im, other.re, -other.im
        return Scalar((a * c - b * d) / n, (a * d + b * c) / n)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus; exact and rational."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Scalar":
        return _ONE / self

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- comparisons / hashing ----------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.re, self.im))
            object.__setattr__(self, "_hash", h)
        return h

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        if self.im == 0:
            return format_rational(self.re)
        if self.re == 0:
            return f"{format_rational(self.im)}i"
        return f"{format_rational(self.re)}{'+' if self.im > 0 else ''}{format_rational(self.im)}i"


_ZERO = Scalar(0)
_ONE = Scalar(1)
_I = Scalar(0, 1)

ZERO = _ZERO
ONE = _ONE
I = _I


def sc(re: RationalLike = 0, im: RationalLike = 0) -> Scalar:
    """Shorthand constructor used all over the tests."""
    return Scalar(re, im)
