"""Coefficient scalars.

Exact coefficients are ``int``, ``Fraction`` or :class:`QQi` (Gaussian
rationals); float coefficients are Python ``complex``.  Exact values are
always kept in normal form by :func:`normalize`: integral fractions become
``int`` and Gaussian rationals with zero imaginary part collapse to their
real part.  Keeping the common integer case as ``int`` matters for speed in
the fraction-free determinant code.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational
from typing import Union

EXACT = "qq_i"
FLOAT = "c64"
RINGS = (EXACT, FLOAT)


class QQi:
    """Gaussian rational ``re + im*i`` with ``Fraction`` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QQi is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, QQi):
            return other
        if isinstance(other, Rational):
            return QQi(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) + other
            return NotImplemented
        return normalize(QQi(self.re + o.re, self.im + o.im))

    __radd__ = __add__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) - other
            return NotImplemented
        return normalize(QQi(self.re - o.re, self.im - o.im))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            return normalize(QQi(self.re * other, self.im * other))
        o = self._coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) * other
            return NotImplemented
        return normalize(
            QQi(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) / other
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("QQi division by zero")
        return normalize(
            QQi(
                (self.re * o.re + self.im * o.im) / den,
                (self.im * o.re - self.re * o.im) / den,
            )
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return QQi(1) / (self ** (-e))
        result: Union[QQi, int] = 1
        base = self
        while e:
            if e & 1:
                result = base * result
            e >>= 1
            if e:
                base = base * base
        return result

    def conjugate(self):
        return QQi(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, QQi):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"


I = QQi(0, 1)


def normalize(x):
    """Return the canonical representative of an exact scalar."""
    if isinstance(x, QQi):
        if x.im == 0:
            return normalize(x.re)
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    raise TypeError(f"not an exact scalar: {x!r}")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QQi)) and not isinstance(x, bool)


def to_complex(x) -> complex:
    return complex(x)


def exact_div(a, b):
    """Exact quotient of two exact scalars, in normal form."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    if isinstance(a, QQi) or isinstance(b, QQi):
        return QQi._coerce(a) / QQi._coerce(b)
    return normalize(Fraction(a) / Fraction(b))


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a number into a ``Fraction``."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, float):
        return Fraction(text)
    return Fraction(str(text).strip())


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def scalar_to_json(x, ring: str) -> dict:
    if ring == EXACT:
        if isinstance(x, QQi):
            return {"re": format_rational(x.re), "im": format_rational(x.im)}
        return {"re": format_rational(x), "im": "0/1"}
    z = complex(x)
    return {"re": z.real, "im": z.imag}


def scalar_from_json(obj, ring: str):
    """Decode a scalar.

    Accepts ``{"re": .., "im": ..}`` objects, bare ``"p/q"`` strings and JSON
    numbers.  In the exact ring floats are rejected rather than silently
    converted.
    """
    if isinstance(obj, dict):
        re_part, im_part = obj.get("re", 0), obj.get("im", 0)
    else:
        re_part, im_part = obj, 0
    if ring == EXACT:
        for part in (re_part, im_part):
            if isinstance(part, float):
                raise ValueError(f"float {part!r} in exact-ring input")
        return normalize(QQi(parse_rational(re_part), parse_rational(im_part)))
    re_v = float(parse_rational(re_part)) if isinstance(re_part, str) else float(re_part)
    im_v = float(parse_rational(im_part)) if isinstance(im_part, str) else float(im_part)
    z = complex(re_v, im_v)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("non-finite float scalar")
    return z


def magnitude(x) -> float:
    return abs(complex(x))


def root_of_unity(k: int, m: int) -> complex:
    return cmath.exp(2j * math.pi * k / m)
