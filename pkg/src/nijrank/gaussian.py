"""Exact Gaussian rationals.

A value is stored as ``(a + b*i) / d`` with integers ``a, b`` and ``d > 0``,
reduced so that ``gcd(a, b, d) == 1``.  Keeping a common denominator makes
multiplication four integer products and one gcd, which matters in the
elimination loops.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational

__all__ = ["GaussianRational", "gq", "parse_gaussian", "format_gaussian", "ZERO", "ONE", "I"]


class GaussianRational:
    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a, b, d):
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a = a
        self._b = b
        self._d = d

    @classmethod
    def _raw(cls, a, b, d):
        # d > 0 required; reduction happens here
        obj = object.__new__(cls)
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        obj._a = a
        obj._b = b
        obj._d = d
        return obj

    @classmethod
    def from_ints(cls, a, b=0, d=1):
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        if d < 0:
            a, b, d = -a, -b, -d
        return cls._raw(a, b, d)

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    @property
    def parts(self):
        """The reduced triple ``(a, b, d)``."""
        return self._a, self._b, self._d

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "GaussianRational":
        obj = object.__new__(GaussianRational)
        obj._a, obj._b, obj._d = self._a, -self._b, self._d
        return obj

    def abs2(self) -> Fraction:
        """Squared modulus, exactly."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._d, other._d
        if d1 == d2:
            return GaussianRational._raw(self._a + other._a, self._b + other._b, d1)
        return GaussianRational._raw(
            self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._d, other._d
        if d1 == d2:
            return GaussianRational._raw(self._a - other._a, self._b - other._b, d1)
        return GaussianRational._raw(
            self._a * d2 - other._a * d1, self._b * d2 - other._b * d1, d1 * d2
        )

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a1, b1, a2, b2 = self._a, self._b, other._a, other._b
        return GaussianRational._raw(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._d * other._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def inverse(self) -> "GaussianRational":
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        # 1 / ((a+bi)/d) = d (a - bi) / (a^2 + b^2)
        return GaussianRational._raw(d * a, -d * b, n)

    def __neg__(self):
        obj = object.__new__(GaussianRational)
        obj._a, obj._b, obj._d = -self._a, -self._b, self._d
        return obj

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"GaussianRational({format_gaussian(self)!r})"

    def __str__(self):
        return format_gaussian(self)


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, int):
        obj = object.__new__(GaussianRational)
        obj._a, obj._b, obj._d = x, 0, 1
        return obj
    if isinstance(x, Rational):
        return GaussianRational(x)
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact; use GaussianRational")
    return NotImplemented


def gq(x=0, im=0) -> GaussianRational:
    """Build a GaussianRational from ints, Fractions, strings or an existing value."""
    if isinstance(x, GaussianRational) and im == 0:
        return x
    if isinstance(x, str):
        value = parse_gaussian(x)
        return value if im == 0 else value + GaussianRational(0, im)
    return GaussianRational(x, im)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_gaussian(z: GaussianRational) -> str:
    """Canonical text: ``"1/2"``, ``"-3/4i"``, ``"1/2+3/4i"``, ``"i"``, ``"0"``."""
    re_, im_ = z.re, z.im
    if im_ == 0:
        return _frac_str(re_)
    if im_ == 1:
        im_text = "i"
    elif im_ == -1:
        im_text = "-i"
    else:
        im_text = _frac_str(im_) + "i"
    if re_ == 0:
        return im_text
    sep = "" if im_text.startswith("-") else "+"
    return _frac_str(re_) + sep + im_text


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_rational(tok: str, text: str) -> Fraction:
    if not _RATIONAL.match(tok):
        raise ValueError(f"not a Gaussian rational: {text!r}")
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def parse_gaussian(text: str) -> GaussianRational:
    """Parse ``"a/b"``, ``"a/b+c/d i"``, ``"-i"``, ``"3i"`` etc.

    Raises ValueError on anything that is not an exact Gaussian rational.
    """
    if not isinstance(text, str):
        raise TypeError(f"expected a string, got {type(text).__name__}")
    s = "".join(text.replace("\u2212", "-").split()).replace("*", "")
    if not s:
        raise ValueError("empty Gaussian rational")
    if s[-1] not in "ij":
        return GaussianRational(_parse_rational(s, text))
    body = s[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0:
        re_tok, im_tok = body[:cut], body[cut:]
    else:
        re_tok, im_tok = "", body
    if im_tok in ("", "+", "-"):
        im_tok += "1"
    re_val = _parse_rational(re_tok, text) if re_tok else Fraction(0)
    return GaussianRational(re_val, _parse_rational(im_tok, text))
