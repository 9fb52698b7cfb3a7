"""Sample clouds standing in for compact sets, and sampled sup-norms.

True sup-norms on curves are not finitely checkable; every norm claim in this
package is made over declared finite sample clouds.  Square roots of exact
squared moduli are bounded above or below with integer square roots at a
configurable dyadic resolution, so all comparisons stay rational and sound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .gaussian import GaussianRational
from .poly import Polynomial, RationalFunction

DEFAULT_SLACK_BITS = 40


def sqrt_upper(x: Fraction, bits: int = DEFAULT_SLACK_BITS) -> Fraction:
    """A rational u with sqrt(x) <= u <= sqrt(x) + 2**-bits."""
    if x < 0:
        raise ValueError("square root of a negative rational")
    if x == 0:
        return Fraction(0)
    scaled = (x.numerator << (2 * bits)) // x.denominator
    return Fraction(isqrt(scaled) + 1, 1 << bits)


def sqrt_lower(x: Fraction, bits: int = DEFAULT_SLACK_BITS) -> Fraction:
    """A rational l with sqrt(x) - 2**-bits <= l <= sqrt(x) (roughly; always <=)."""
    if x < 0:
        raise ValueError("square root of a negative rational")
    if x == 0:
        return Fraction(0)
    scaled = (x.numerator << (2 * bits)) // x.denominator
    return Fraction(isqrt(scaled), 1 << bits)


def _as_rational_function(f) -> RationalFunction:
    if isinstance(f, RationalFunction):
        return f
    if isinstance(f, Polynomial):
        return RationalFunction(f)
    raise TypeError(f"expected a polynomial or rational function, got {type(f)!r}")


def sup_norm_on_samples(f, pts: Sequence, slack_bits: int = DEFAULT_SLACK_BITS) -> Fraction:
    """Rational upper bound of max |f(z)| over the samples.

    The bound exceeds the true sampled maximum by at most 2**-slack_bits.
    Raises ZeroDivisionError when a denominator vanishes at a sample.
    """
    f = _as_rational_function(f)
    best = Fraction(0)
    for z in pts:
        v = f(z)
        b = sqrt_upper(v.abs2(), slack_bits)
        if b > best:
            best = b
    return best


def min_distance_lower(
    points_a: Sequence, points_b: Sequence, slack_bits: int = DEFAULT_SLACK_BITS
) -> Fraction:
    """Rational lower bound of min |a - b| over the two clouds."""
    best = None
    for a in points_a:
        a = GaussianRational.coerce(a)
        for b in points_b:
            b = GaussianRational.coerce(b)
            d = sqrt_lower((a - b).abs2(), slack_bits)
            if best is None or d < best:
                best = d
    if best is None:
        raise ValueError("distance between empty point clouds")
    return best


@dataclass(frozen=True)
class CompactSetSpec:
    """Finite samples of a compact set outside the closed unit disk.

    `excluded` lists the points the set must stay away from (the exceptional
    points W); `margin` is the declared minimum distance to each of them.
    """

    samples: tuple
    margin: Fraction
    excluded: tuple = field(default_factory=tuple)

    def __post_init__(self):
        samples = tuple(GaussianRational.coerce(z) for z in self.samples)
        excluded = tuple(GaussianRational.coerce(w) for w in self.excluded)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "excluded", excluded)
        object.__setattr__(self, "margin", Fraction(self.margin))
        if not samples:
            raise ValueError("a compact-set spec needs at least one sample")
        if self.margin <= 0:
            raise ValueError("margin must be positive")
        m2 = self.margin * self.margin
        for z in samples:
            if z.abs2() < 1:
                raise ValueError(f"sample {z} lies inside the open unit disk")
            for w in excluded:
                if (z - w).abs2() < m2:
                    raise ValueError(
                        f"sample {z} is closer than the margin to excluded point {w}"
                    )


@dataclass(frozen=True)
class DiskSampleSpec:
    """Finite samples of a compact subset of the open unit disk."""

    samples: tuple
    radius: Fraction

    def __post_init__(self):
        samples = tuple(GaussianRational.coerce(z) for z in self.samples)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "radius", Fraction(self.radius))
        if not samples:
            raise ValueError("a disk-sample spec needs at least one sample")
        if not 0 < self.radius < 1:
            raise ValueError("radius must lie strictly between 0 and 1")
        r2 = self.radius * self.radius
        for z in samples:
            if z.abs2() > r2:
                raise ValueError(f"sample {z} lies outside radius {self.radius}")
