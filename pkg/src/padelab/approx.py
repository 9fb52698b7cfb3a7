"""Constrained polynomial approximation on sample clouds.

A concrete, fully checkable stand-in for the Mergelyan step used by the
inductive constructions: find P = z^p * Q that is close to a rational target
on the outer samples, small on the disk samples, and avoids finitely many
forbidden values at the exceptional points.  Q is fitted by exact least
squares with degree escalation; once the degree reaches the number of sample
points the fit interpolates, so escalation terminates whenever the cap allows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import EscalationError, VerificationError
from .gaussian import GR_ONE, GaussianRational
from .linalg import lstsq_solve
from .poly import Polynomial, RationalFunction
from .sampling import (
    DEFAULT_SLACK_BITS,
    CompactSetSpec,
    DiskSampleSpec,
    sqrt_upper,
    sup_norm_on_samples,
)

DEFAULT_ESCALATION_CAP = 64


@dataclass(frozen=True)
class ApproxTask:
    target: RationalFunction
    K: CompactSetSpec
    L: DiskSampleSpec
    epsilon: Fraction
    valuation_floor: int
    point_constraints: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        constraints = tuple(
            (GaussianRational.coerce(w), GaussianRational.coerce(a))
            for w, a in self.point_constraints
        )
        object.__setattr__(self, "point_constraints", constraints)
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.valuation_floor < 1:
            raise ValueError("valuation floor must be at least 1")
        for z in self.K.samples:
            if self.target.den(z).is_zero():
                raise ValueError(f"target denominator vanishes on K at {z}")


@dataclass(frozen=True)
class OracleReport:
    fit_degree: int
    error_K: Fraction
    error_L: Fraction
    monomial_exponent: Optional[int] = None
    monomial_coeff: Optional[GaussianRational] = None


def _degree_schedule(cap: int, interpolation_degree: int):
    base = [0, 1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64]
    wanted = sorted({d for d in base if d <= cap} | {min(cap, interpolation_degree)})
    return wanted


def _fit_errors(P, task, slack_bits):
    err_k = sup_norm_on_samples(
        RationalFunction(P) - task.target, task.K.samples, slack_bits
    )
    err_l = sup_norm_on_samples(P, task.L.samples, slack_bits)
    return err_k, err_l


def _constraints_ok(P, constraints) -> bool:
    for w, alpha in constraints:
        v = P(w)
        if v.is_zero() or v == alpha:
            return False
    return True


def approx_with_valuation_report(
    task: ApproxTask,
    escalation_cap: int = DEFAULT_ESCALATION_CAP,
    slack_bits: int = DEFAULT_SLACK_BITS,
) -> tuple[Polynomial, OracleReport]:
    p = task.valuation_floor
    k_pts = list(task.K.samples)
    l_pts = list(task.L.samples)
    pts = k_pts + l_pts
    # Targets for Q: z^{-p} h on K, 0 on L.  Outer samples have |z| >= 1 > 0,
    # so the division is always defined.
    targets = [task.target(z) / z**p for z in k_pts]
    targets += [GaussianRational(0)] * len(l_pts)

    interpolation_degree = len(pts) - 1
    schedule = _degree_schedule(escalation_cap, interpolation_degree)
    max_d = schedule[-1]

    # Escalation reuses one design matrix: the degree-d fit takes the leading
    # (d+1) columns.
    powers = []
    for z in pts:
        row = [GR_ONE]
        for _ in range(max_d):
            row.append(row[-1] * z)
        powers.append(row)

    half = task.epsilon / 2
    best = None
    for d in schedule:
        rows = [row[: d + 1] for row in powers]
        coeffs = lstsq_solve(rows, targets)
        q_fit = Polynomial(coeffs)
        candidate = q_fit.shift(p)
        err_k, err_l = _fit_errors(candidate, task, slack_bits)
        best = (d, err_k, err_l)
        if err_k <= half and err_l <= half:
            break
    else:
        raise EscalationError(
            f"degree cap {escalation_cap} reached; best sampled errors "
            f"K={float(best[1]):.3g}, L={float(best[2]):.3g} exceed {float(half):.3g}",
            cap=escalation_cap,
            achieved=best,
        )

    d, err_k, err_l = best
    P = candidate
    mono_exp = None
    mono_coeff = None
    if task.point_constraints and not _constraints_ok(P, task.point_constraints):
        dq = q_fit.degree if not q_fit.is_zero() else 0
        mono_exp = p + dq + 1
        bound = Fraction(0)
        for z in pts:
            b = sqrt_upper(z.abs2() ** mono_exp, slack_bits)
            if b > bound:
                bound = b
        base = task.epsilon / (1024 * max(bound, Fraction(1)))
        for k in range(1, 2 * len(task.point_constraints) + 2):
            c = GaussianRational(base / k)
            trial = P + Polynomial.monomial(mono_exp, c)
            if _constraints_ok(trial, task.point_constraints):
                P = trial
                mono_coeff = c
                break
        else:
            raise VerificationError("could not break point constraints with a monomial")
        err_k, err_l = _fit_errors(P, task, slack_bits)

    # Self-verification: the four posted bounds, re-checked on the final P.
    if err_k > task.epsilon or err_l > task.epsilon:
        raise VerificationError("final approximant exceeds the epsilon budget")
    if not P.is_zero() and P.valuation < p:
        raise VerificationError("valuation floor violated")
    if not _constraints_ok(P, task.point_constraints):
        raise VerificationError("point constraints violated")
    return P, OracleReport(d, err_k, err_l, mono_exp, mono_coeff)


def approx_with_valuation(
    task: ApproxTask,
    escalation_cap: int = DEFAULT_ESCALATION_CAP,
    slack_bits: int = DEFAULT_SLACK_BITS,
) -> Polynomial:
    return approx_with_valuation_report(task, escalation_cap, slack_bits)[0]
