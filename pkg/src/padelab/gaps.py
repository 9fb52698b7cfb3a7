"""Gap universal series at finite truncation, and their transfer to Pade form.

A gap series keeps whole coefficient windows exactly zero.  Building one is
the partial-sum variant of the prescribed-denominator induction: each step
drops a polynomial block into the free window between consecutive gaps, so the
checkpoint partial sums approximate the targets while the gap windows stay
untouched.  Dividing by a polynomial Q whose roots avoid the partial sums'
zeros then turns checkpoint partial sums into Pade approximants with
denominator exactly Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .approx import ApproxTask, approx_with_valuation_report
from .errors import EscalationError, VerificationError
from .gaussian import GaussianRational
from .pade import PadeStatus, pade_via_system
from .poly import Polynomial, RationalFunction, poly_gcd
from .sampling import (
    DEFAULT_SLACK_BITS,
    DiskSampleSpec,
    sqrt_upper,
    sup_norm_on_samples,
)
from .series import PowerSeries, series_div_poly
from .universal import DenominatorSpec, UniversalTask


@dataclass(frozen=True)
class GapSchedule:
    """Interleaved gap windows (p_m, q_m] plus a sampled monotone weight."""

    pairs: tuple
    phi_table: tuple

    def __post_init__(self):
        pairs = tuple((int(p), int(q)) for p, q in self.pairs)
        phi = tuple(int(v) for v in self.phi_table)
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "phi_table", phi)
        if any(b < a for a, b in zip(phi, phi[1:])):
            raise ValueError("weight table must be monotone nondecreasing")
        prev_q = 0
        prev_ratio = None
        for m, (p, q) in enumerate(pairs):
            if p < 1 or not p < q:
                raise ValueError(f"gap {m}: need 1 <= p_{m} < q_{m}")
            if m > 0 and not prev_q <= p:
                raise ValueError(f"gap {m}: interleaving q_{m-1} <= p_{m} violated")
            if q >= len(phi):
                raise ValueError(f"gap {m}: weight table too short for q_{m} = {q}")
            if not p < phi[q] < q:
                raise ValueError(
                    f"gap {m}: weighted-gap condition p < phi(q) < q fails "
                    f"({p} < {phi[q]} < {q})"
                )
            ratio = Fraction(q, p)
            if prev_ratio is not None and ratio < prev_ratio:
                raise ValueError(f"gap {m}: ratio q/p decreased")
            prev_q, prev_ratio = q, ratio

    def phi(self, x: int) -> int:
        return self.phi_table[x]


@dataclass(frozen=True)
class GapSeries:
    """A truncated series whose gap windows are exactly zero.

    `checkpoints` lists the gap indices m whose partial sums S_{p_m} carry
    certificates; those require a nonzero coefficient at p_m.
    """

    g: PowerSeries
    schedule: GapSchedule
    checkpoints: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "checkpoints", tuple(int(m) for m in self.checkpoints))
        n = self.g.truncation_len
        for m, (p, q) in enumerate(self.schedule.pairs):
            for k in range(p + 1, min(q, n - 1) + 1):
                if not self.g[k].is_zero():
                    raise ValueError(f"gap {m}: coefficient a_{k} is not zero")
        for m in self.checkpoints:
            p = self.schedule.pairs[m][0]
            if p >= n:
                raise ValueError(f"checkpoint {m}: p_{m} beyond the truncation")
            if self.g[p].is_zero():
                raise ValueError(f"checkpoint {m}: a_(p_{m}) vanishes")


@dataclass(frozen=True)
class GapCheckpointRecord:
    step: int
    task_index: int
    gap_index: int
    p: int
    error_K: Fraction
    epsilon: Fraction


@dataclass(frozen=True)
class GapBuildResult:
    series: GapSeries
    certificates: tuple
    disk_error: Fraction


def build_gap_series(
    mu: Sequence[int],
    schedule: GapSchedule,
    tasks: Sequence[UniversalTask],
    T: Polynomial,
    L: DiskSampleSpec,
    epsilon0: Fraction,
    rounds: int,
    *,
    slack_bits: int = DEFAULT_SLACK_BITS,
) -> GapBuildResult:
    """Partial-sum induction: one polynomial block per free window.

    Step j targets task (j mod #tasks) with budget epsilon0 * 2^{-j-1}; the
    block's support lies in [q_j + 1, p_{j+1}], and the top coefficient at
    p_{j+1} is forced nonzero so the checkpoint partial sum has exact degree
    p_{j+1}.
    """
    epsilon0 = Fraction(epsilon0)
    if not 0 < epsilon0 < 1:
        raise ValueError("epsilon0 must lie strictly between 0 and 1")
    mu_set = set(int(p) for p in mu)
    pairs = schedule.pairs
    if not set(p for p, _ in pairs) <= mu_set:
        raise ValueError("every gap start p_m must belong to mu")
    total = rounds * len(tasks)
    if len(pairs) < total + 1:
        raise ValueError(
            f"schedule too short: {total} steps need {total + 1} gap pairs"
        )
    deg_t = T.degree if T.degree is not None else 0
    if deg_t > pairs[0][0]:
        raise ValueError("initial polynomial must not reach past the first gap start")

    g = T
    steps = []
    for j in range(total):
        t = j % len(tasks)
        task = tasks[t]
        eps_j = epsilon0 * Fraction(1, 2 ** (j + 1))
        floor = pairs[j][1] + 1
        top = pairs[j + 1][0]
        width = top - floor
        if width < 0:
            raise ValueError(f"window between gaps {j} and {j+1} is empty")
        step_target = task.target - RationalFunction(g)
        atask = ApproxTask(
            target=step_target,
            K=task.K,
            L=L,
            epsilon=eps_j / 2,
            valuation_floor=floor,
            point_constraints=(),
        )
        try:
            block, report = approx_with_valuation_report(atask, width, slack_bits)
        except EscalationError as exc:
            raise EscalationError(
                f"schedule too tight at block {j} (window [{floor},{top}]): {exc}",
                cap=width,
                achieved=exc.achieved,
            ) from exc
        g_next = g + block
        if g_next.coefficient(top).is_zero():
            bound = max(
                (
                    sqrt_upper(z.abs2() ** top, slack_bits)
                    for z in tuple(task.K.samples) + tuple(L.samples)
                ),
                default=Fraction(1),
            )
            c = eps_j / (4 * max(bound, Fraction(1)))
            g_next = g_next + Polynomial.monomial(top, c)
        err_k = sup_norm_on_samples(
            RationalFunction(g_next) - task.target, task.K.samples, slack_bits
        )
        if err_k > eps_j:
            raise VerificationError(
                f"block {j}: checkpoint error {float(err_k):.3g} exceeds budget"
            )
        g = g_next
        steps.append(
            GapCheckpointRecord(
                step=j + 1, task_index=t, gap_index=j + 1, p=top,
                error_K=err_k, epsilon=eps_j,
            )
        )

    trunc = pairs[total][1] + 1
    gap_series = GapSeries(
        g=PowerSeries.from_polynomial(g, trunc),
        schedule=schedule,
        checkpoints=tuple(range(1, total + 1)),
    )
    disk_error = sup_norm_on_samples(
        RationalFunction(g) - RationalFunction(T), L.samples, slack_bits
    )
    if disk_error > epsilon0:
        raise VerificationError("gap build drifted from T on the disk samples")
    certificates = []
    for t in range(len(tasks)):
        certificates.append(tuple(s for s in steps if s.task_index == t))
    return GapBuildResult(gap_series, tuple(certificates), disk_error)


@dataclass(frozen=True)
class TransferCheckpointRecord:
    gap_index: int
    p: int
    q: int
    exact_match: bool
    coprime: bool
    normal: bool
    denominator: Polynomial


@dataclass(frozen=True)
class TransferResult:
    f: PowerSeries
    records: tuple


def transfer_to_pade(
    gs: GapSeries, spec: DenominatorSpec, checkpoints: Optional[Sequence[int]] = None
) -> TransferResult:
    """f = g/Q; at every checkpoint, [f; p_m/q] = S_{p_m}(g)/Q exactly.

    Preconditions checked by exact evaluation: Q's roots avoid the zeros of
    every checkpoint partial sum, and each used gap is wider than deg Q.
    """
    if checkpoints is None:
        checkpoints = gs.checkpoints
    q = spec.q
    roots = spec.distinct_roots()
    partials = {}
    for m in checkpoints:
        p_m, q_m = gs.schedule.pairs[m]
        if q_m - p_m <= q:
            raise ValueError(
                f"gap too narrow at checkpoint {m}: width {q_m - p_m} <= q = {q}"
            )
        s_p = gs.g.partial_sum(p_m)
        for w in roots:
            if s_p(w).is_zero():
                raise ValueError(
                    f"Z_g violation: root {w} is a zero of S_{p_m} at checkpoint {m}"
                )
        partials[m] = s_p

    f = series_div_poly(gs.g, spec.Q)
    records = []
    for m in checkpoints:
        p_m = gs.schedule.pairs[m][0]
        s_p = partials[m]
        g_cd = poly_gcd(s_p, spec.Q)
        coprime = g_cd.degree == 0
        if not coprime:
            raise VerificationError(
                f"checkpoint {m}: partial sum shares a factor with Q"
            )
        r = pade_via_system(f, p_m, q)
        if not r.exists or r.numerator != s_p or r.denominator != spec.Q:
            raise VerificationError(
                f"checkpoint {m}: [f;{p_m}/{q}] differs from S_{p_m}(g)/Q"
            )
        records.append(
            TransferCheckpointRecord(
                gap_index=m, p=p_m, q=q, exact_match=True, coprime=True,
                normal=r.status is PadeStatus.NORMAL, denominator=r.denominator,
            )
        )
    return TransferResult(f, tuple(records))


@dataclass(frozen=True)
class ScheduleForS:
    mu: tuple
    phi_table: tuple
    constraint_rows: tuple  # (n, x_n = p_r + q_r, cap n-1) per horizon row


def schedule_for_S(
    S: Sequence[tuple], horizon: int, table_len: Optional[int] = None
) -> ScheduleForS:
    """Weight and index pool making gap series serve an arbitrary degree sequence.

    Returns mu = (p components of S) and a maximal monotone integer table with
    phi(p_r + q_r) < n for every n <= horizon, where (p_r, q_r) is the pair of
    S with the smallest p_r >= n.  Any gap series built against this weight
    has, at each checkpoint p_r, a gap end at least p_r + q_r, which makes the
    checkpoint partial sum equal to the (p_r, q_r) Pade approximant.
    """
    pairs = sorted((int(p), int(q)) for p, q in S)
    if horizon == 0:
        return ScheduleForS((), (), ())
    rows = []
    caps = {}
    for n in range(1, horizon + 1):
        admissible = [pq for pq in pairs if pq[0] >= n]
        if not admissible:
            raise ValueError(f"horizon {horizon} inconsistent with S at n = {n}")
        p_r, q_r = admissible[0]
        x = p_r + q_r
        rows.append((n, x, n - 1))
        caps[x] = min(caps.get(x, n - 1), n - 1)
    max_x = max(caps)
    if table_len is None:
        table_len = 4 * max_x + 8
    if table_len <= max_x:
        raise ValueError("weight table too short for the constraint points")
    suffix_min = [None] * table_len
    running = None
    for x in range(table_len - 1, -1, -1):
        if x in caps:
            running = caps[x] if running is None else min(running, caps[x])
        suffix_min[x] = running
    phi = []
    for x in range(table_len):
        if suffix_min[x] is not None:
            phi.append(max(suffix_min[x], phi[-1] if phi else 0))
        else:
            phi.append(phi[-1] + 1 if phi else 0)
    mu = tuple(sorted({p for p, _ in pairs}))
    return ScheduleForS(mu, tuple(phi), tuple(rows))


def weight_condition_rows(S: Sequence[tuple], horizon: int, phi_table: Sequence[int]):
    """Row-by-row scan of the weight condition phi(p_r + q_r) < n."""
    pairs = sorted((int(p), int(q)) for p, q in S)
    out = []
    for n in range(1, horizon + 1):
        admissible = [pq for pq in pairs if pq[0] >= n]
        if not admissible:
            raise ValueError(f"no pair of S reaches n = {n}")
        p_r, q_r = admissible[0]
        x = p_r + q_r
        out.append((n, x, phi_table[x], phi_table[x] < n))
    return out


def gap_pairs_for_weight(
    mu: Sequence[int], phi_table: Sequence[int], count: int, start_after: int = 0
):
    """Pick interleaved gap pairs realizing a weight table.

    Each start comes from mu past the previous gap's end; each end is the
    least index where the weight exceeds the start, pushed up if needed to
    keep the ratio q/p nondecreasing.
    """
    mu_sorted = sorted(set(int(p) for p in mu))
    pairs = []
    prev_q = start_after
    prev_ratio = None
    for _ in range(count):
        p = next((x for x in mu_sorted if x >= prev_q + 1), None)
        if p is None:
            raise ValueError("mu exhausted while picking gap starts")
        q = next((x for x in range(p + 1, len(phi_table)) if phi_table[x] > p), None)
        if q is None:
            raise ValueError("weight table too short to close a gap")
        if prev_ratio is not None:
            q = max(q, math.ceil(p * prev_ratio))
        if q >= len(phi_table):
            raise ValueError("weight table too short for the ratio discipline")
        pairs.append((p, q))
        prev_q = q
        prev_ratio = Fraction(q, p)
    return pairs


def weight_table_from_callable(fn, length: int) -> tuple:
    """Sample a closed-form weight into a monotone integer table."""
    table = [int(fn(x)) for x in range(length)]
    for a, b in zip(table, table[1:]):
        if b < a:
            raise ValueError("sampled weight is not monotone")
    return tuple(table)
