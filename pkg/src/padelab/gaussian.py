"""Exact complex scalars: pairs of arbitrary-precision rationals.

The coefficient field for everything in this package.  Values are immutable;
equality is exact.  `Fraction` keeps each part in lowest terms with a positive
denominator, so the canonical-form invariant holds by construction.

Text form is ``a/b+c/d*i`` with the imaginary part omitted when zero, e.g.
``3``, ``-1/2``, ``0+1*i``, ``3/4-2/5*i``.  Formatting and parsing round-trip
bit-exactly.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from numbers import Rational

_ZERO = Fraction(0)
_ONE = Fraction(1)

_PART = r"[+-]?\d+(?:/\d+)?"
_COMPLEX_RE = _re.compile(
    rf"^\s*(?P<re>{_PART})(?:(?P<im>[+-]\d+(?:/\d+)?)\*i)?\s*$"
)
_PURE_IM_RE = _re.compile(rf"^\s*(?P<im>{_PART})\*i\s*$")


def _as_fraction(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {x!r}")


class GaussianRational:
    """An element of Q(i), stored as exact real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        self = object.__new__(cls)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        return self

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("refusing to coerce an inexact complex float")
        return cls._raw(_as_fraction(x), _ZERO)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other).__sub__(self)

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, _ZERO)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        c, d = other.re, other.im
        if not c and not d:
            raise ZeroDivisionError("division by zero Gaussian rational")
        if not d:
            if not self.im:
                return GaussianRational._raw(self.re / c, _ZERO)
            return GaussianRational._raw(self.re / c, self.im / c)
        norm = c * c + d * d
        a, b = self.re, self.im
        return GaussianRational._raw((a * c + b * d) / norm, (b * c - a * d) / norm)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other).__truediv__(self)

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        if k < 0:
            return (GR_ONE / self) ** (-k)
        result = GR_ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Exact squared modulus |z|^2 as a rational."""
        return self.re * self.re + self.im * self.im

    # -- predicates and protocol glue -------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(self.re + 0.0, self.im + 0.0)

    # -- text form ---------------------------------------------------------

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def __repr__(self):
        return f"GaussianRational({str(self)!r})"

    @classmethod
    def from_string(cls, text: str) -> "GaussianRational":
        m = _COMPLEX_RE.match(text)
        if m:
            im = m.group("im")
            return cls._raw(Fraction(m.group("re")), Fraction(im) if im else _ZERO)
        m = _PURE_IM_RE.match(text)
        if m:
            return cls._raw(_ZERO, Fraction(m.group("im")))
        raise ValueError(f"not a Gaussian rational literal: {text!r}")


GR_ZERO = GaussianRational._raw(_ZERO, _ZERO)
GR_ONE = GaussianRational._raw(_ONE, _ZERO)
GR_I = GaussianRational._raw(_ZERO, _ONE)


def gr(re=0, im=0) -> GaussianRational:
    """Shorthand constructor; accepts ints, Fractions, and literal strings."""
    if isinstance(re, str) and im == 0:
        return GaussianRational.from_string(re)
    return GaussianRational(re, im)
