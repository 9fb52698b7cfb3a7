"""Series with prescribed approximant poles or zeros, and root utilities.

The perturbed-polynomial construction: given P of degree m-1, the series

    f = P + c1 z^{m-1+n} + c2 z^{m+n}

has a nonzero Hankel determinant at (m, n), and its approximant's denominator
(or numerator) is linear in c2, so one coefficient choice places a root at any
prescribed nonzero point.  The linear relation is extracted from the exact
determinantal pair rather than from a transcribed closed form; the closed
forms are recovered in the test suite for small n.

All correctness claims here are exact polynomial identities.  Floating-point
roots are reporting artifacts with certified residuals: each residual is an
upper bound of |q(r)| computed by exact evaluation at the binary-rational
reading of the float root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import NonConvergenceError, RetryableParameterError, VerificationError
from .gaussian import GR_ZERO, GaussianRational
from .pade import PadeResult, PadeStatus, jacobi_pair, pade_via_system
from .poly import Polynomial, product_of_linear_factors
from .sampling import sqrt_upper
from .series import PowerSeries, series_div_poly


def hankel_expansion_sign(n: int) -> int:
    """Sign of the reversal permutation entering the witness Hankel value.

    The witness determinant reduces to an anti-triangular block, whose
    determinant is a_{m-1}^{n-1} times this sign: C = sign * c1 * a^{n-1}.
    """
    return -1 if ((n - 1) * (n - 2) // 2) % 2 else 1


@dataclass(frozen=True)
class PolePlacementWitness:
    base: Polynomial
    m: int
    n: int
    c1: GaussianRational
    c2: GaussianRational
    witness: PowerSeries
    target: GaussianRational
    approximant: PadeResult
    kind: str  # "pole" or "zero"


def _validate_placement_args(P: Polynomial, m: int, n: int, target, c1):
    target = GaussianRational.coerce(target)
    c1 = GaussianRational.coerce(c1)
    if n < 1:
        raise ValueError("denominator degree n must be at least 1")
    if P.degree != m - 1:
        raise ValueError(f"base polynomial must have degree m-1 = {m - 1}")
    if target.is_zero():
        raise ValueError("target point must be nonzero")
    if c1.is_zero():
        raise ValueError("c1 must be nonzero")
    return target, c1


def witness_series(
    P: Polynomial, m: int, n: int, c1, c2, truncation_len: int | None = None
) -> PowerSeries:
    """P + c1 z^{m-1+n} + c2 z^{m+n}, as a series of the requested length."""
    c1 = GaussianRational.coerce(c1)
    c2 = GaussianRational.coerce(c2)
    if truncation_len is None:
        truncation_len = m + n + 1
    if truncation_len < m + n + 1:
        raise ValueError("witness needs at least m+n+1 coefficients")
    f = P + Polynomial.monomial(m - 1 + n, c1) + Polynomial.monomial(m + n, c2)
    return PowerSeries.from_polynomial(f, truncation_len)


def _linear_parts(P, m, n, c1, which):
    """A, B with (Jacobi numerator or denominator)(z; c2) = A(z) + c2 B(z)."""
    s0 = witness_series(P, m, n, c1, 0)
    s1 = witness_series(P, m, n, c1, 1)
    idx = 0 if which == "num" else 1
    a = jacobi_pair(s0, m, n)[idx]
    b = jacobi_pair(s1, m, n)[idx] - a
    return a, b


def pole_profile(P: Polynomial, m: int, n: int, c1):
    """(sign, aux) with Jacobi denominator = sign*(-c1^2 aux z^2 - c2 a^{n-1} z + c1 a^{n-1}).

    `aux` is the degree-(n-2) polynomial depending only on P; it is the zero
    polynomial for n = 1.
    """
    target_dummy, c1 = _validate_placement_args(P, m, n, 1, c1)
    a = P.leading_coefficient()
    sign = hankel_expansion_sign(n)
    A, B = _linear_parts(P, m, n, c1, "den")
    an1 = a ** (n - 1)
    expected_b = Polynomial.monomial(1, -an1 * sign)
    if B != expected_b:
        raise VerificationError("denominator c2-cofactor disagrees with expansion")
    # A = sign*(-c1^2 aux z^2 + c1 a^{n-1})
    num = Polynomial.constant(c1 * an1 * sign) - A
    aux = num.exact_div(Polynomial.monomial(2, c1 * c1 * sign))
    return sign, aux


def place_pole(P: Polynomial, m: int, n: int, target, c1) -> PolePlacementWitness:
    """Choose c2 so that the (m, n) approximant's denominator vanishes at target."""
    target, c1 = _validate_placement_args(P, m, n, target, c1)
    A, B = _linear_parts(P, m, n, c1, "den")
    bt = B(target)
    if bt.is_zero():
        raise VerificationError("denominator relation degenerated; B(target) = 0")
    c2 = -A(target) / bt
    if c2.is_zero():
        raise RetryableParameterError(
            "derived c2 = 0; pick a different c1 for this target"
        )
    return _verified_witness(P, m, n, c1, c2, target, kind="pole")


def place_zero(P: Polynomial, m: int, n: int, target, c1) -> PolePlacementWitness:
    """Choose c2 so that the (m, n) approximant's numerator vanishes at target."""
    target, c1 = _validate_placement_args(P, m, n, target, c1)
    if P(target).is_zero():
        raise ValueError("base polynomial must not vanish at the target")
    A, B = _linear_parts(P, m, n, c1, "num")
    bt = B(target)
    if bt.is_zero():
        raise VerificationError("numerator relation degenerated; B(target) = 0")
    c2 = -A(target) / bt
    if c2.is_zero():
        raise RetryableParameterError(
            "derived c2 = 0; pick a different c1 for this target"
        )
    return _verified_witness(P, m, n, c1, c2, target, kind="zero")


def _verified_witness(P, m, n, c1, c2, target, kind) -> PolePlacementWitness:
    s = witness_series(P, m, n, c1, c2)
    r = pade_via_system(s, m, n)
    if r.status is not PadeStatus.NORMAL:
        raise VerificationError(f"witness approximant is not normal: {r.status}")
    a = P.leading_coefficient()
    expected_c = c1 * a ** (n - 1) * hankel_expansion_sign(n)
    if r.c_mn != expected_c:
        raise VerificationError("witness Hankel value disagrees with the expansion")
    placed = r.denominator if kind == "pole" else r.numerator
    if not placed(target).is_zero():
        raise VerificationError(f"placed {kind} misses the target")
    return PolePlacementWitness(P, m, n, c1, c2, s, target, r, kind)


def poles_outside_disk_witness(
    P: Polynomial, m: int, n: int, mu, truncation_len: int
) -> PowerSeries:
    """Expansion of P/(1 - z/mu)^n; its (m, n) approximant is that function.

    All approximant poles sit at mu, hence outside every disk of radius < |mu|.
    """
    mu = GaussianRational.coerce(mu)
    if P.degree is None or P.degree > m:
        raise ValueError("numerator degree must be at most m (and P nonzero)")
    if mu.abs2() <= 1:
        raise ValueError("mu must lie outside the closed unit disk")
    if P(mu).is_zero():
        raise ValueError("P must not vanish at mu")
    if truncation_len < m + n + 1:
        raise ValueError("truncation too short to certify the approximant")
    q = product_of_linear_factors([mu] * n)
    f = series_div_poly(PowerSeries.from_polynomial(P, truncation_len), q)
    r = pade_via_system(f, m, n)
    if r.status is not PadeStatus.NORMAL:
        raise VerificationError("rational witness should be normal")
    if r.numerator != P or r.denominator != q:
        raise VerificationError("approximant does not reproduce the witness")
    if r.denominator.degree != n:
        raise VerificationError("denominator degree dropped")
    return f


@dataclass(frozen=True)
class RootEstimate:
    value: complex
    residual: Fraction


def poly_roots_numeric(
    q: Polynomial, precision: int = 53, max_steps: int = 200
) -> list[RootEstimate]:
    """All roots of q as floats with certified residual bounds.

    Residuals are exact upper bounds of |q(r)| at the binary-rational value of
    each reported root.  Deterministic: fixed starting configuration, fixed
    ordering by (modulus, argument in [0, 2pi), real, imaginary).
    """
    if q.is_zero():
        raise ValueError("the zero polynomial has no well-defined root set")
    if q.degree == 0:
        return []
    with mpmath.workprec(max(precision, 53) + 30):
        coeffs = [mpmath.mpc(float(c.re), float(c.im)) for c in reversed(q.coeffs)]
        try:
            roots = mpmath.polyroots(coeffs, maxsteps=max_steps, extraprec=precision)
        except mpmath.libmp.NoConvergence as exc:
            raise NonConvergenceError(
                f"root iteration did not converge at precision {precision}"
            ) from exc
        values = [complex(r) for r in roots]
    estimates = []
    for v in values:
        exact = GaussianRational(Fraction(v.real), Fraction(v.imag))
        residual = sqrt_upper(q(exact).abs2())
        estimates.append(RootEstimate(v, residual))
    estimates.sort(
        key=lambda e: (
            abs(e.value),
            math.atan2(e.value.imag, e.value.real) % (2 * math.pi),
            e.value.real,
            e.value.imag,
        )
    )
    return estimates


def order_roots_polar(roots, alpha: float, guard: float = 2.0**-20) -> list:
    """Sort points by (modulus, argument shifted into [alpha, alpha+2pi)).

    The cut angle alpha must stay a guard band away from every root's
    argument; ties (repeated roots) keep their input order.
    """
    values = [r.value if isinstance(r, RootEstimate) else complex(r) for r in roots]
    two_pi = 2 * math.pi

    def key(v: complex):
        if v == 0:
            return (0.0, 0.0)
        theta = math.atan2(v.imag, v.real)
        rel = (theta - alpha) % two_pi
        if min(rel, two_pi - rel) <= guard:
            raise ValueError(
                f"cut angle {alpha} is within the guard band of root {v}"
            )
        return (abs(v), alpha + rel)

    decorated = [(key(v), i, r) for i, (v, r) in enumerate(zip(values, roots))]
    decorated.sort(key=lambda t: (t[0], t[1]))
    return [r for _, _, r in decorated]
