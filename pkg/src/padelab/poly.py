"""Exact polynomials over the Gaussian rationals, plus rational functions.

Coefficients are stored low-degree first with trailing zeros stripped, so the
zero polynomial has an empty coefficient tuple and ``degree is None``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .gaussian import GR_ONE, GR_ZERO, GaussianRational


def _coerce_coeffs(coeffs: Iterable) -> tuple[GaussianRational, ...]:
    out = [GaussianRational.coerce(c) for c in coeffs]
    while out and out[-1].is_zero():
        out.pop()
    return tuple(out)


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _coerce_coeffs(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _raw(cls, coeffs: tuple[GaussianRational, ...]) -> "Polynomial":
        self = object.__new__(cls)
        object.__setattr__(self, "coeffs", coeffs)
        return self

    @classmethod
    def monomial(cls, k: int, coeff=GR_ONE) -> "Polynomial":
        c = GaussianRational.coerce(coeff)
        if c.is_zero():
            return ZERO_POLY
        return cls._raw((GR_ZERO,) * k + (c,))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        """Index of the last nonzero coefficient; None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def valuation(self):
        """Index of the first nonzero coefficient; None for the zero polynomial."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def coefficient(self, k: int) -> GaussianRational:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return GR_ZERO

    def leading_coefficient(self) -> GaussianRational:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Polynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce_poly(other))

    def __rsub__(self, other):
        return _coerce_poly(other) + (-self)

    def __neg__(self):
        return Polynomial._raw(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (GaussianRational, int)):
            return self.scale(other)
        other = _coerce_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        out = [GR_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Polynomial._raw(tuple(out))

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = GaussianRational.coerce(c)
        if c.is_zero():
            return ZERO_POLY
        return Polynomial._raw(tuple(k * c for k in self.coeffs))

    def shift(self, k: int) -> "Polynomial":
        """Multiply by z**k."""
        if not self.coeffs:
            return ZERO_POLY
        return Polynomial._raw((GR_ZERO,) * k + self.coeffs)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = ONE_POLY
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, z) -> GaussianRational:
        z = GaussianRational.coerce(z)
        acc = GR_ZERO
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(c * k for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            raise ValueError("zero polynomial cannot be made monic")
        lead = self.coeffs[-1]
        if lead == GR_ONE:
            return self
        return Polynomial._raw(tuple(c / lead for c in self.coeffs))

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Exact field division with remainder."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return ZERO_POLY, self
        quot = [GR_ZERO] * (dq + 1)
        dcoeffs = other.coeffs
        lead = dcoeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(dcoeffs) - 1]
            if c.is_zero():
                continue
            factor = c / lead
            quot[k] = factor
            for j, dj in enumerate(dcoeffs):
                rem[k + j] = rem[k + j] - factor * dj
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other):
        return self.divmod(_coerce_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_coerce_poly(other))[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("polynomial division is not exact")
        return q

    # -- protocol glue -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, GaussianRational)):
            return self == _coerce_poly(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            txt = str(c)
            if not c.is_real():
                txt = f"({txt})"
            if k == 0:
                parts.append(txt)
            elif k == 1:
                parts.append(f"{txt}*z" if txt != "1" else "z")
            else:
                parts.append(f"{txt}*z^{k}" if txt != "1" else f"z^{k}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)})"


ZERO_POLY = Polynomial._raw(())
ONE_POLY = Polynomial._raw((GR_ONE,))
Z = Polynomial._raw((GR_ZERO, GR_ONE))


def _coerce_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    return Polynomial((GaussianRational.coerce(x),))


def poly(*coeffs) -> Polynomial:
    """Build a polynomial from low-degree-first coefficients."""
    return Polynomial(coeffs)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q(i) by the Euclidean algorithm.

    Both inputs zero is an error.  A single zero input yields the monic
    normalization of the other, so gcd(0, z) = z and the pair (0, z) is
    correctly flagged as non-coprime while (0, 1) stays coprime.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Dispatch form of +, -, * used by the batch front-end."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def product_of_linear_factors(points: Sequence) -> Polynomial:
    """Return prod_i (1 - z/w_i) for nonzero points w_i."""
    result = ONE_POLY
    for w in points:
        w = GaussianRational.coerce(w)
        if w.is_zero():
            raise ValueError("linear factor 1 - z/w needs w != 0")
        result = result * Polynomial((GR_ONE, -(GR_ONE / w)))
    return result


class RationalFunction:
    """A quotient of two polynomials; not automatically reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE_POLY):
        num = _coerce_poly(num)
        den = _coerce_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __call__(self, z) -> GaussianRational:
        d = self.den(z)
        if d.is_zero():
            raise ZeroDivisionError(f"denominator vanishes at {z}")
        return self.num(z) / d

    def reduced(self) -> "RationalFunction":
        if self.num.is_zero():
            return RationalFunction(ZERO_POLY, ONE_POLY)
        g = poly_gcd(self.num, self.den)
        return RationalFunction(self.num.exact_div(g), self.den.exact_div(g))

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def equals_function(self, other: "RationalFunction") -> bool:
        """Equality as functions: cross-multiplied exact comparison."""
        return self.num * other.den == other.num * self.den

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"
