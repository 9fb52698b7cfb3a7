"""Truncated power series with a strict truncation discipline.

A series stores exactly the coefficients a_0 .. a_{N-1}; N is the truncation
length.  Coefficients at or beyond the truncation are unknown, never zero, and
any access past them raises TruncationError.  Polynomials, by contrast, are
exact objects, so converting one to a series of any length is legitimate.
"""

from __future__ import annotations

from typing import Iterable

from .errors import TruncationError
from .gaussian import GR_ZERO, GaussianRational
from .poly import Polynomial, ZERO_POLY


class PowerSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        object.__setattr__(
            self, "coeffs", tuple(GaussianRational.coerce(c) for c in coeffs)
        )
        if not self.coeffs:
            raise ValueError("a series needs at least one known coefficient")

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    @classmethod
    def _raw(cls, coeffs: tuple[GaussianRational, ...]) -> "PowerSeries":
        self = object.__new__(cls)
        object.__setattr__(self, "coeffs", coeffs)
        return self

    @classmethod
    def from_polynomial(cls, p: Polynomial, truncation_len: int) -> "PowerSeries":
        if truncation_len < 1:
            raise ValueError("truncation length must be positive")
        pad = truncation_len - len(p.coeffs)
        if pad < 0:
            raise ValueError("truncation shorter than the polynomial")
        return cls._raw(p.coeffs + (GR_ZERO,) * pad)

    @property
    def truncation_len(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> GaussianRational:
        if not 0 <= k < len(self.coeffs):
            raise TruncationError(
                f"coefficient a_{k} requested but only a_0..a_{len(self.coeffs)-1} are known"
            )
        return self.coeffs[k]

    def coefficient_or_zero(self, k: int) -> GaussianRational:
        """a_k with negative indices read as 0; past-truncation still errors."""
        if k < 0:
            return GR_ZERO
        return self[k]

    # -- arithmetic (results keep only coefficients that are fully determined)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return PowerSeries._raw(
            tuple(self.coeffs[k] + other.coeffs[k] for k in range(n))
        )

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        return PowerSeries._raw(
            tuple(self.coeffs[k] - other.coeffs[k] for k in range(n))
        )

    def __neg__(self) -> "PowerSeries":
        return PowerSeries._raw(tuple(-c for c in self.coeffs))

    def scale(self, c) -> "PowerSeries":
        c = GaussianRational.coerce(c)
        return PowerSeries._raw(tuple(a * c for a in self.coeffs))

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(len(self.coeffs), len(other.coeffs))
        out = []
        for k in range(n):
            acc = GR_ZERO
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return PowerSeries._raw(tuple(out))

    def mul_poly(self, p: Polynomial) -> "PowerSeries":
        """Multiply by an exact polynomial; the truncation length is kept."""
        n = len(self.coeffs)
        out = [GR_ZERO] * n
        for j, pj in enumerate(p.coeffs):
            if pj.is_zero():
                continue
            for k in range(j, n):
                out[k] = out[k] + pj * self.coeffs[k - j]
        return PowerSeries._raw(tuple(out))

    def truncate(self, length: int) -> "PowerSeries":
        if not 1 <= length <= len(self.coeffs):
            raise TruncationError(
                f"cannot truncate a length-{len(self.coeffs)} series to {length}"
            )
        return PowerSeries._raw(self.coeffs[:length])

    def partial_sum(self, degree: int) -> Polynomial:
        """S_N: the polynomial of the first degree+1 coefficients."""
        if degree < 0:
            return ZERO_POLY
        if degree >= len(self.coeffs):
            raise TruncationError(
                f"partial sum of degree {degree} exceeds truncation {len(self.coeffs)}"
            )
        return Polynomial(self.coeffs[: degree + 1])

    def valuation_at_least(self, k: int) -> bool:
        """True iff a_0 .. a_{k-1} all vanish; needs them to be known."""
        if k > len(self.coeffs):
            raise TruncationError(
                f"valuation bound {k} not decidable at truncation {len(self.coeffs)}"
            )
        return all(c.is_zero() for c in self.coeffs[:k])

    def known_valuation(self):
        """Index of the first nonzero known coefficient, or None if all vanish."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return None

    def with_coefficient(self, k: int, value) -> "PowerSeries":
        """Copy with a_k replaced; used by mutation-hardening tests."""
        value = GaussianRational.coerce(value)
        if not 0 <= k < len(self.coeffs):
            raise TruncationError(f"coefficient a_{k} is outside the truncation")
        coeffs = list(self.coeffs)
        coeffs[k] = value
        return PowerSeries._raw(tuple(coeffs))

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        if len(self.coeffs) > 6:
            shown += ", ..."
        return f"PowerSeries([{shown}], len={len(self.coeffs)})"


def series(*coeffs) -> PowerSeries:
    return PowerSeries(coeffs)


def series_reciprocal(s: PowerSeries) -> PowerSeries:
    """Multiplicative inverse: b_0 = 1/a_0, b_n = -(1/a_0) sum a_i b_{n-i}."""
    a0 = s.coeffs[0]
    if a0.is_zero():
        raise ValueError("series with a_0 = 0 has no reciprocal")
    inv = GaussianRational(1) / a0
    out = [inv]
    for n in range(1, len(s.coeffs)):
        acc = GR_ZERO
        for i in range(1, n + 1):
            acc = acc + s.coeffs[i] * out[n - i]
        out.append(-inv * acc)
    return PowerSeries._raw(tuple(out))


def series_div_poly(s: PowerSeries, q: Polynomial) -> PowerSeries:
    """Coefficient recursion for s/q, exact, same truncation length."""
    q0 = q.coefficient(0)
    if q0.is_zero():
        raise ValueError("cannot divide a series by a polynomial vanishing at 0")
    out = []
    qc = q.coeffs
    for k in range(len(s.coeffs)):
        acc = s.coeffs[k]
        for j in range(1, min(k, len(qc) - 1) + 1):
            acc = acc - qc[j] * out[k - j]
        out.append(acc / q0)
    return PowerSeries._raw(tuple(out))
