"""Exact arithmetic in the Gaussian rationals Q(i).

A :class:`Scalar` is stored as ``(a + b*i) / d`` with ``d > 0`` and
``gcd(a, b, d) == 1``.  That triple is a canonical form: two scalars are
equal exactly when their triples are equal.  The per-part fractions
``re_num/re_den`` and ``im_num/im_den`` are exposed as properties.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

__all__ = ["Scalar", "scalar_add", "scalar_mul", "scalar_inv", "parse_scalar", "ZERO", "ONE", "HALF", "I"]


def _frac_pair(value):
    if isinstance(value, int):
        return value, 1
    if isinstance(value, Fraction):
        return value.numerator, value.denominator
    raise TypeError(f"cannot build a Scalar part from {type(value).__name__}")


class Scalar:
    __slots__ = ("_a", "_b", "_d")

    def __new__(cls, re=0, im=0):
        if isinstance(re, Scalar) and im == 0:
            return re
        rn, rd = _frac_pair(re)
        in_, id_ = _frac_pair(im)
        if rd == id_:
            return cls._make(rn, in_, rd)
        return cls._make(rn * id_, in_ * rd, rd * id_)

    @classmethod
    def _make(cls, a, b, d):
        if d != 1:
            g = gcd(a, b, d)
            if g != 1:
                a //= g
                b //= g
                d //= g
        obj = object.__new__(cls)
        obj._a = a
        obj._b = b
        obj._d = d
        return obj

    # canonical fields -------------------------------------------------

    @property
    def real(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def imag(self) -> Fraction:
        return Fraction(self._b, self._d)

    @property
    def re_num(self) -> int:
        return self.real.numerator

    @property
    def re_den(self) -> int:
        return self.real.denominator

    @property
    def im_num(self) -> int:
        return self.imag.numerator

    @property
    def im_den(self) -> int:
        return self.imag.denominator

    def canonical(self) -> Scalar:
        return Scalar._make(self._a, self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def conjugate(self) -> Scalar:
        return Scalar._make(self._a, -self._b, self._d)

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is NotImplemented:
                return other
        d1, d2 = self._d, other._d
        if d1 == d2:
            if d1 == 1:
                obj = object.__new__(Scalar)
                obj._a, obj._b, obj._d = self._a + other._a, self._b + other._b, 1
                return obj
            return Scalar._make(self._a + other._a, self._b + other._b, d1)
        return Scalar._make(self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(Scalar)
        obj._a, obj._b, obj._d = -self._a, -self._b, self._d
        return obj

    def __sub__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is NotImplemented:
                return other
        a1, b1, a2, b2 = self._a, self._b, other._a, other._b
        if b1 == 0 and b2 == 0:
            return Scalar._make(a1 * a2, 0, self._d * other._d)
        return Scalar._make(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._d * other._d)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("zero has no inverse in Q(i)")
        return Scalar._make(d * a, -d * b, n)

    def __truediv__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    # comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __repr__(self):
        return f"Scalar('{self}')"

    def __str__(self):
        re_part, im_part = self.real, self.imag
        if im_part == 0:
            return str(re_part)
        im_txt = f"{im_part}i"
        if re_part == 0:
            return im_txt
        sign = "" if im_txt.startswith("-") else "+"
        return f"{re_part}{sign}{im_txt}"

    @classmethod
    def parse(cls, text: str) -> Scalar:
        return parse_scalar(text)


def _coerce(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return NotImplemented


# literal grammar: [-]A[/B][(+|-)C[/D]i], plus pure imaginary [-]C[/D]i
_RAT = r"\d+(?:/\d+)?"
_IMAG_ONLY = re.compile(rf"(-?)({_RAT})?i")
_FULL = re.compile(rf"(-?{_RAT})(?:([+-])({_RAT})?i)?")


def _parse_rat(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in scalar literal {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_scalar(text: str) -> Scalar:
    """Parse a scalar literal such as ``0``, ``1/2``, ``-3i`` or ``2/3+1/5i``."""
    if not isinstance(text, str):
        raise ValueError(f"scalar literal must be a string, got {text!r}")
    m = _IMAG_ONLY.fullmatch(text)
    if m:
        coeff = _parse_rat(m.group(2)) if m.group(2) else Fraction(1)
        return Scalar(0, -coeff if m.group(1) else coeff)
    m = _FULL.fullmatch(text)
    if not m:
        raise ValueError(f"malformed scalar literal {text!r}")
    re_part = _parse_rat(m.group(1).lstrip("-"))
    if m.group(1).startswith("-"):
        re_part = -re_part
    im_part = Fraction(0)
    if m.group(2):
        im_part = _parse_rat(m.group(3)) if m.group(3) else Fraction(1)
        if m.group(2) == "-":
            im_part = -im_part
    return Scalar(re_part, im_part)


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_inv(a: Scalar) -> Scalar:
    return a.inverse()


ZERO = Scalar(0)
ONE = Scalar(1)
HALF = Scalar(Fraction(1, 2))
I = Scalar(0, 1)
