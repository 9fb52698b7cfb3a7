"""Inductive builds of series whose row approximants have a prescribed denominator.

Starting from f_0 = Q*T, each step adds a polynomial increment supplied by the
constrained approximation oracle.  The increment's valuation floor protects a
checkpoint degree: once step j finishes, the (p, q) approximant of the final
quotient f = f_tilde/Q at the checkpoint p equals f_j/Q exactly, with
denominator exactly Q, and later steps can never disturb it.

Also here: the finite-span linearity identity for shared-denominator members,
and the asymptotically-prescribed-poles membership predicate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .approx import (
    DEFAULT_ESCALATION_CAP,
    ApproxTask,
    OracleReport,
    approx_with_valuation_report,
)
from .errors import PadeLabError, VerificationError
from .gaussian import GaussianRational
from .pade import PadeResult, PadeStatus, pade_via_system
from .poly import ONE_POLY, Polynomial, RationalFunction, poly_gcd, product_of_linear_factors
from .sampling import (
    DEFAULT_SLACK_BITS,
    CompactSetSpec,
    DiskSampleSpec,
    min_distance_lower,
    sup_norm_on_samples,
)
from .series import PowerSeries, series_div_poly


@dataclass(frozen=True)
class DenominatorSpec:
    """Q(z) = prod_i (1 - z/w_i) with every root outside the open unit disk."""

    roots: tuple
    Q: Polynomial
    q: int

    @classmethod
    def from_roots(cls, roots: Sequence) -> "DenominatorSpec":
        pts = tuple(GaussianRational.coerce(w) for w in roots)
        if not pts:
            raise ValueError("a denominator spec needs at least one root")
        for w in pts:
            if w.abs2() < 1:
                raise ValueError(f"root {w} lies inside the open unit disk")
        return cls(pts, product_of_linear_factors(pts), len(pts))

    def distinct_roots(self) -> tuple:
        seen = []
        for w in self.roots:
            if w not in seen:
                seen.append(w)
        return tuple(seen)


@dataclass(frozen=True)
class UniversalTask:
    """One target to be approximated by checkpoint approximants on K."""

    target: RationalFunction
    K: CompactSetSpec
    epsilon: Fraction

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.epsilon <= 0:
            raise ValueError("task epsilon must be positive")
        for z in self.K.samples:
            if self.target.den(z).is_zero():
                raise ValueError(f"task target has a pole at sample {z}")


@dataclass(frozen=True)
class StepRecord:
    index: int                   # 1-based: the step that built f_index
    task_index: int
    increment: Polynomial
    valuation: int
    valuation_floor: int
    epsilon: Fraction
    checkpoint_degree: int       # least mu element >= deg(f_index)
    oracle: OracleReport


@dataclass(frozen=True)
class CheckpointRecord:
    step: int
    p: int
    error_K: Fraction
    error_L: Fraction
    denominator: Polynomial
    c_pq: GaussianRational
    c_p1q: GaussianRational
    normal: bool


@dataclass(frozen=True)
class TaskCertificate:
    task_index: int
    checkpoints: tuple

    @property
    def lambda_sequence(self) -> tuple:
        return tuple(c.p for c in self.checkpoints)


@dataclass(frozen=True)
class BuildTrace:
    spec: DenominatorSpec
    mu: tuple
    epsilon0: Fraction
    T: Polynomial
    L: DiskSampleSpec
    f0: Polynomial
    initial_checkpoint: int
    steps: tuple
    f_tilde: Polynomial
    f: PowerSeries
    certificates: tuple
    disk_error: Fraction

    def partial_build(self, j: int) -> Polynomial:
        """f_j: the state after j steps (f_0 for j = 0)."""
        if not 0 <= j <= len(self.steps):
            raise ValueError(f"step {j} outside 0..{len(self.steps)}")
        f = self.f0
        for step in self.steps[:j]:
            f = f + step.increment
        return f


def _least_at_least(mu: Sequence[int], bound: int) -> int:
    for p in mu:
        if p >= bound:
            return p
    raise PadeLabError(
        f"mu exhausted: no element of the row-index pool reaches {bound}"
    )


def _deg_or_zero(p: Polynomial) -> int:
    return p.degree if p.degree is not None else 0


def build_universal(
    spec: DenominatorSpec,
    tasks: Sequence[UniversalTask],
    mu: Sequence[int],
    T: Polynomial,
    L: DiskSampleSpec,
    epsilon0: Fraction,
    rounds: int,
    *,
    escalation_cap: int = DEFAULT_ESCALATION_CAP,
    slack_bits: int = DEFAULT_SLACK_BITS,
) -> BuildTrace:
    """Run the inductive construction and certify every checkpoint.

    Tasks are revisited `rounds` times in round-robin order; the step budget
    is epsilon0 * 2^{-j-1} * min(1, d(W, K_task), d(W, L)), the valuation
    floor is (least mu element >= deg f_j) + q + 1, and the increment is
    forbidden from taking the values 0 and -f_j(w) at the roots of Q.
    """
    epsilon0 = Fraction(epsilon0)
    if not 0 < epsilon0 < 1:
        raise ValueError("epsilon0 must lie strictly between 0 and 1")
    if rounds < 0:
        raise ValueError("rounds must be nonnegative")
    mu = tuple(sorted(set(int(p) for p in mu)))
    if not mu or mu[0] < 1:
        raise ValueError("mu must be a nonempty pool of positive integers")
    q = spec.q
    w_points = spec.distinct_roots()

    d_w_l = min_distance_lower(w_points, L.samples, slack_bits)
    if d_w_l <= 0:
        raise ValueError("disk samples touch a root of Q at the working resolution")
    d_w_k = []
    for task in tasks:
        d = min_distance_lower(w_points, task.K.samples, slack_bits)
        if d <= 0:
            raise ValueError(
                "task samples touch a root of Q at the working resolution"
            )
        d_w_k.append(d)

    steps = []
    f = spec.Q * T
    c0 = _least_at_least(mu, _deg_or_zero(f))
    total = rounds * len(tasks)
    for j in range(total):
        t = j % len(tasks)
        task = tasks[t]
        eps_j = epsilon0 * Fraction(1, 2 ** (j + 1)) * min(
            Fraction(1), d_w_k[t], d_w_l
        )
        checkpoint_before = _least_at_least(mu, _deg_or_zero(f))
        floor = checkpoint_before + q + 1
        step_target = RationalFunction(spec.Q) * task.target - RationalFunction(f)
        constraints = tuple((w, -f(w)) for w in w_points)
        atask = ApproxTask(
            target=step_target,
            K=task.K,
            L=L,
            epsilon=eps_j,
            valuation_floor=floor,
            point_constraints=constraints,
        )
        increment, report = approx_with_valuation_report(
            atask, escalation_cap, slack_bits
        )
        if increment.is_zero():
            raise VerificationError("oracle returned a zero increment")
        f = f + increment
        steps.append(
            StepRecord(
                index=j + 1,
                task_index=t,
                increment=increment,
                valuation=increment.valuation,
                valuation_floor=floor,
                epsilon=eps_j,
                checkpoint_degree=_least_at_least(mu, _deg_or_zero(f)),
                oracle=report,
            )
        )

    f_tilde = f
    last_checkpoint = steps[-1].checkpoint_degree if steps else c0
    trunc = last_checkpoint + q + 1
    f_series = series_div_poly(PowerSeries.from_polynomial(f_tilde, trunc), spec.Q)

    certificates = _certify(spec, tasks, steps, f0=spec.Q * T, f_series=f_series,
                            f_tilde=f_tilde, L=L, slack_bits=slack_bits)

    disk_error = sup_norm_on_samples(
        RationalFunction(f_tilde, spec.Q) - RationalFunction(T), L.samples, slack_bits
    )
    if disk_error > epsilon0:
        raise VerificationError(
            f"disk fidelity violated: sampled error {float(disk_error):.3g} > epsilon0"
        )

    return BuildTrace(
        spec=spec,
        mu=mu,
        epsilon0=epsilon0,
        T=T,
        L=L,
        f0=spec.Q * T,
        initial_checkpoint=c0,
        steps=tuple(steps),
        f_tilde=f_tilde,
        f=f_series,
        certificates=certificates,
        disk_error=disk_error,
    )


def _certify(spec, tasks, steps, f0, f_series, f_tilde, L, slack_bits):
    certificates = []
    partials = [f0]
    for step in steps:
        partials.append(partials[-1] + step.increment)
    for t, task in enumerate(tasks):
        records = []
        for step in steps:
            if step.task_index != t:
                continue
            p = step.checkpoint_degree
            r = pade_via_system(f_series, p, spec.q)
            if not r.exists:
                raise VerificationError(f"checkpoint ({p},{spec.q}) has no approximant")
            approx = RationalFunction(r.numerator, r.denominator)
            err_k = sup_norm_on_samples(
                approx - task.target, task.K.samples, slack_bits
            )
            err_l = sup_norm_on_samples(
                approx - RationalFunction(f_tilde, spec.Q), L.samples, slack_bits
            )
            records.append(
                CheckpointRecord(
                    step=step.index,
                    p=p,
                    error_K=err_k,
                    error_L=err_l,
                    denominator=r.denominator,
                    c_pq=r.c_mn,
                    c_p1q=r.c_m1n,
                    normal=r.status is PadeStatus.NORMAL,
                )
            )
        certificates.append(TaskCertificate(task_index=t, checkpoints=tuple(records)))
    return tuple(certificates)


@dataclass(frozen=True)
class CheckpointCertificate:
    step: int
    p: int
    q: int
    approximant: PadeResult
    expected_numerator: Polynomial
    expected_denominator: Polynomial
    c_pq: GaussianRational
    c_p1q: GaussianRational
    normal: bool


def verify_checkpoint(trace: BuildTrace, spec: DenominatorSpec, j: int) -> CheckpointCertificate:
    """Independently recompute the checkpoint approximant of step j.

    Asserts the exact identity [f; p_j/q] = f_j/Q in reduced form, plus
    normality for j >= 1.  Step 0 checks f_0/Q = T with denominator 1.
    """
    f_j = trace.partial_build(j)
    p = trace.steps[j - 1].checkpoint_degree if j >= 1 else trace.initial_checkpoint
    r = pade_via_system(trace.f, p, spec.q)
    if not r.exists:
        raise VerificationError(f"no approximant at checkpoint ({p},{spec.q})")
    if f_j.is_zero():
        exp_num, exp_den = f_j, ONE_POLY
    else:
        g = poly_gcd(f_j, spec.Q)
        exp_num = f_j.exact_div(g)
        exp_den = spec.Q.exact_div(g)
        c = exp_den.coefficient(0)
        exp_num = exp_num.scale(1 / c)
        exp_den = exp_den.scale(1 / c)
    if r.numerator != exp_num or r.denominator != exp_den:
        raise VerificationError(
            f"checkpoint {j}: approximant differs from f_j/Q in reduced form"
        )
    normal = r.status is PadeStatus.NORMAL
    if j >= 1 and not normal:
        raise VerificationError(f"checkpoint {j} is not normal: {r.status}")
    return CheckpointCertificate(
        step=j,
        p=p,
        q=spec.q,
        approximant=r,
        expected_numerator=exp_num,
        expected_denominator=exp_den,
        c_pq=r.c_mn,
        c_p1q=r.c_m1n,
        normal=normal,
    )


@dataclass(frozen=True)
class SpanCheckResult:
    combination: PadeResult
    member_results: tuple
    rhs_numerator: Polynomial
    rhs_denominator: Polynomial
    reduced_denominator: Polynomial
    p0: int
    linear: bool


def span_pade_check(members: Sequence[tuple], m: int, q: int) -> SpanCheckResult:
    """Exact Pade linearity over members sharing one denominator.

    members: pairs (series, coefficient).  Every member must have an existing
    (m, q) approximant with the same exact denominator Q; then the approximant
    of the linear combination equals the same combination of approximants, and
    its reduced denominator is a divisor Q_{p0} of Q.
    """
    if not members:
        raise ValueError("span check needs at least one member")
    results = []
    shared_q = None
    for s, _alpha in members:
        r = pade_via_system(s, m, q)
        if not r.exists:
            raise ValueError(f"member approximant ({m},{q}) does not exist")
        if shared_q is None:
            shared_q = r.denominator
        elif r.denominator != shared_q:
            raise ValueError("members do not share one exact denominator")
        results.append(r)

    combo = None
    rhs_num = Polynomial()
    for (s, alpha), r in zip(members, results):
        alpha = GaussianRational.coerce(alpha)
        scaled = s.scale(alpha)
        combo = scaled if combo is None else combo + scaled
        rhs_num = rhs_num + r.numerator.scale(alpha)

    r_combo = pade_via_system(combo, m, q)
    if not r_combo.exists:
        raise VerificationError("combination approximant unexpectedly missing")
    if rhs_num.is_zero():
        exp_num, exp_den = rhs_num, ONE_POLY
    else:
        g = poly_gcd(rhs_num, shared_q)
        exp_num = rhs_num.exact_div(g)
        exp_den = shared_q.exact_div(g)
        c = exp_den.coefficient(0)
        exp_num = exp_num.scale(1 / c)
        exp_den = exp_den.scale(1 / c)
    if r_combo.numerator != exp_num or r_combo.denominator != exp_den:
        raise VerificationError("Pade linearity identity failed")
    p0 = exp_den.degree if exp_den.degree is not None else 0
    return SpanCheckResult(
        combination=r_combo,
        member_results=tuple(results),
        rhs_numerator=exp_num,
        rhs_denominator=exp_den,
        reduced_denominator=r_combo.denominator,
        p0=p0,
        linear=True,
    )


@dataclass(frozen=True)
class PolePredicateResult:
    holds: bool
    p: Optional[int] = None
    root_gap: Optional[float] = None
    error_K: Optional[Fraction] = None
    error_L: Optional[Fraction] = None
    rejected: tuple = field(default_factory=tuple)


def asymptotic_pole_predicate(
    f: PowerSeries,
    mu: Sequence[int],
    q: int,
    W: Sequence,
    alpha: float,
    s_inv: Fraction,
    K: CompactSetSpec,
    h: RationalFunction,
    L: DiskSampleSpec,
    *,
    precision: int = 80,
    residual_bound: Fraction = Fraction(1, 10**9),
    guard: float = 2.0**-20,
) -> PolePredicateResult:
    """Search mu for a row index realizing poles near W and both approximations.

    A witness p must satisfy: C_{p,q}(f) != 0, the approximant's denominator
    has degree exactly q, its numerically certified roots are componentwise
    within s_inv of the ordered tuple W, and the sampled distances of [f;p/q]
    to h on K and to f on L are both below s_inv.  Inside the disk, f is
    evaluated as its truncation polynomial.
    """
    from .polelab import order_roots_polar, poly_roots_numeric

    s_inv = Fraction(s_inv)
    w_ordered = order_roots_polar([complex(GaussianRational.coerce(w)) for w in W], alpha, guard)
    if len(w_ordered) != q:
        raise ValueError("W must contain exactly q points")
    f_poly = Polynomial(f.coeffs)
    candidates = [p for p in sorted(set(mu)) if p + q + 1 <= f.truncation_len]
    if not candidates:
        raise ValueError("truncation too short to evaluate any candidate row index")
    rejected = []
    for p in candidates:
        r = pade_via_system(f, p, q)
        if not r.exists or r.c_mn.is_zero() or r.denominator.degree != q:
            rejected.append((p, "hankel-or-degree"))
            continue
        roots = poly_roots_numeric(r.denominator, precision)
        if any(e.residual > residual_bound for e in roots):
            rejected.append((p, "residual"))
            continue
        try:
            ordered = order_roots_polar(roots, alpha, guard)
        except ValueError:
            rejected.append((p, "guard-band"))
            continue
        gap = max(
            abs(e.value - w) for e, w in zip(ordered, w_ordered)
        )
        if gap >= float(s_inv):
            rejected.append((p, "roots"))
            continue
        approx = RationalFunction(r.numerator, r.denominator)
        err_k = sup_norm_on_samples(approx - h, K.samples)
        if err_k >= s_inv:
            rejected.append((p, "K-error"))
            continue
        err_l = sup_norm_on_samples(approx - RationalFunction(f_poly), L.samples)
        if err_l >= s_inv:
            rejected.append((p, "L-error"))
            continue
        return PolePredicateResult(True, p, gap, err_k, err_l, tuple(rejected))
    return PolePredicateResult(False, rejected=tuple(rejected))
