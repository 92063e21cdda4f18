"""Exact Gaussian-rational arithmetic: the coefficient field for everything else.

A scalar is re + im*i with both parts arbitrary-precision rationals.  All
operations are exact; equality is decidable.  The text grammar accepted by
``parse_scalar`` is ``a/b`` or ``a/b+c/d*i`` (integer parts may omit the
denominator, either part may be negative, and a bare ``i`` is allowed).
"""

from __future__ import annotations

import re as _re
from fractions import Fraction

from .errors import ParseError

_FRACTION_RE = _re.compile(r"[+-]?\d+(?:/\d+)?")


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(other.re - self.re, other.im - self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        # Purely real factors are by far the most common; skip dead products.
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return GaussianRational(a * c)
            return GaussianRational(a * c, a * d)
        if not d:
            return GaussianRational(a * c, b * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero scalar")
        if not self.im and not other.im:
            return GaussianRational(self.re / other.re)
        norm = other.re * other.re + other.im * other.im
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs1(self):
        """l1 modulus |re| + |im|; rational, and equal to |.| on the real axis."""
        return abs(self.re) + abs(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return None


def as_scalar(value) -> GaussianRational:
    coerced = _coerce(value)
    if coerced is None:
        raise TypeError(f"cannot interpret {value!r} as a scalar")
    return coerced


def format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Canonical text form: ``a/b``, ``c/d*i`` or ``a/b+c/d*i``."""
    if not z.im:
        return format_fraction(z.re)
    imag = f"{format_fraction(abs(z.im))}*i"
    if not z.re:
        return imag if z.im > 0 else "-" + imag
    sign = "+" if z.im > 0 else "-"
    return f"{format_fraction(z.re)}{sign}{imag}"


def parse_fraction(text: str, pos: int = 0) -> Fraction:
    """Parse ``a`` or ``a/b``; ``pos`` is only used to annotate errors."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}", pos) from None


def parse_scalar(text: str, pos: int = 0) -> GaussianRational:
    """Parse the scalar grammar.  Raises ParseError with a position on failure."""
    s = text.strip()
    offset = pos + len(text) - len(text.lstrip())
    if not s:
        raise ParseError("empty scalar", pos)
    # Split off a trailing imaginary part, if any.
    if s.endswith("i"):
        head = s[:-1]
        if head.endswith("*"):
            head = head[:-1]
        if head in ("", "+"):
            return GaussianRational(0, 1)
        if head == "-":
            return GaussianRational(0, -1)
        # Bare "i" with an explicit real part, e.g. "2+i".
        if head.endswith("+"):
            return GaussianRational(parse_fraction(head[:-1], offset), 1)
        if head.endswith("-"):
            return GaussianRational(parse_fraction(head[:-1], offset), -1)
        # Otherwise the trailing fraction is the imaginary coefficient.
        matches = list(_FRACTION_RE.finditer(head))
        if not matches:
            raise ParseError(f"bad scalar {text!r}", offset)
        last = matches[-1]
        if last.end() != len(head):
            raise ParseError(f"bad scalar {text!r}", offset)
        im = parse_fraction(last.group(), offset + last.start())
        real_part = head[: last.start()]
        if real_part in ("", "+"):
            return GaussianRational(0, im)
        if real_part == "-":
            return GaussianRational(0, -im)
        if real_part.endswith("+"):
            return GaussianRational(parse_fraction(real_part[:-1], offset), im)
        if real_part.endswith("-"):
            return GaussianRational(parse_fraction(real_part[:-1], offset), -im)
        # The imaginary coefficient carried its own sign, e.g. "1/2-3/4*i".
        return GaussianRational(parse_fraction(real_part, offset), im)
    match = _FRACTION_RE.fullmatch(s)
    if not match:
        raise ParseError(f"bad scalar {text!r}", offset)
    return GaussianRational(parse_fraction(s, offset))
