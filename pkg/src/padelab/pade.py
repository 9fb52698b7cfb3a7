"""Pade approximants over Q(i) by two independent routes.

Route one solves the denominator linear system by exact Gaussian elimination;
route two expands the classical determinantal (Jacobi) formulas.  Both return
the same fully classified result:

* NORMAL            -- C_{m,n} != 0 and C_{m+1,n} != 0
* EXISTS_NON_NORMAL -- C_{m,n} != 0 but C_{m+1,n} = 0
* DEGENERATE_EXISTS -- C_{m,n} = 0 yet the approximant exists; carries the
                       factor T with T(0) = 0 linking the Jacobi pair to the
                       irreducible pair
* NOT_EXISTS        -- no rational function of type (m, n) matches the series
                       to order m+n+1

Matrix entries a_j with j < 0 are taken as 0.  Every returned approximant is
re-verified against the linearized order condition before it leaves this
module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import TruncationError, VerificationError
from .gaussian import GR_ONE, GR_ZERO, GaussianRational
from .linalg import det, nullspace_vector, solve
from .poly import ONE_POLY, ZERO_POLY, Polynomial, poly_gcd
from .series import PowerSeries


class PadeStatus(enum.Enum):
    NORMAL = "normal"
    EXISTS_NON_NORMAL = "exists-non-normal"
    DEGENERATE_EXISTS = "degenerate-exists"
    NOT_EXISTS = "not-exists"


@dataclass(frozen=True)
class PadeResult:
    m: int
    n: int
    numerator: Optional[Polynomial]
    denominator: Optional[Polynomial]
    c_mn: GaussianRational
    c_m1n: GaussianRational
    status: PadeStatus
    degenerate_factor: Optional[Polynomial] = None

    @property
    def exists(self) -> bool:
        return self.status is not PadeStatus.NOT_EXISTS

    def as_fraction(self):
        from .poly import RationalFunction

        if not self.exists:
            raise ValueError("no approximant to convert")
        return RationalFunction(self.numerator, self.denominator)

    def __str__(self):
        if not self.exists:
            return f"[{self.m}/{self.n}]: does not exist"
        return f"[{self.m}/{self.n}] = ({self.numerator}) / ({self.denominator}) [{self.status.value}]"


def _entry(s: PowerSeries, k: int) -> GaussianRational:
    if k < 0:
        return GR_ZERO
    return s[k]


def hankel_matrix(s: PowerSeries, m: int, n: int):
    return [[_entry(s, m - n + 1 + i + j) for j in range(n)] for i in range(n)]


def hankel_det(s: PowerSeries, m: int, n: int) -> GaussianRational:
    """C_{m,n}: determinant of the n x n window of Taylor coefficients."""
    if m < 0 or n < 0:
        raise ValueError("degrees must be nonnegative")
    if s.truncation_len < m + n:
        raise TruncationError(
            f"C_({m},{n}) needs {m + n} known coefficients, have {s.truncation_len}"
        )
    if n == 0:
        return GR_ONE
    return det(hankel_matrix(s, m, n))


def in_D(s: PowerSeries, m: int, n: int) -> bool:
    """Membership in D_{m,n}: the Hankel determinant does not vanish."""
    return not hankel_det(s, m, n).is_zero()


def in_N(s: PowerSeries, m: int, n: int) -> bool:
    """Membership in N_{m,n}: both C_{m,n} and C_{m+1,n} are nonzero."""
    return in_D(s, m, n) and not hankel_det(s, m + 1, n).is_zero()


def jacobi_pair(s: PowerSeries, m: int, n: int) -> tuple[Polynomial, Polynomial]:
    """The determinantal numerator/denominator pair (Phat_m, Qhat_n).

    Both determinants share the same top coefficient rows, so the n+1 minors
    of the last-row cofactor expansion are computed once and reused.
    """
    if s.truncation_len < m + n + 1:
        raise TruncationError(
            f"Jacobi pair at ({m},{n}) needs {m + n + 1} coefficients, have {s.truncation_len}"
        )
    if n == 0:
        return s.partial_sum(m), ONE_POLY
    rows = [[_entry(s, m - n + 1 + i + j) for j in range(n + 1)] for i in range(n)]
    minors = []
    for j in range(n + 1):
        sub = [row[:j] + row[j + 1 :] for row in rows]
        minors.append(det(sub))
    qhat = [GR_ZERO] * (n + 1)
    phat = [GR_ZERO] * (m + 1)
    for j in range(n + 1):
        cof = minors[j] if (n + j) % 2 == 0 else -minors[j]
        if cof.is_zero():
            continue
        qhat[n - j] = qhat[n - j] + cof
        # E_j(z) = sum_{i=0}^{m-n+j} a_i z^{n+i-j}; empty when m-n+j < 0
        for i in range(0, m - n + j + 1):
            phat[n + i - j] = phat[n + i - j] + cof * s[i]
    return Polynomial(phat), Polynomial(qhat)


def _make_irreducible(p: Polynomial, q: Polynomial):
    """Reduce to the unique coprime pair with denominator 1 at the origin.

    Returns None when the reduced denominator vanishes at 0 (no normalizable
    representative exists).  The zero function is canonically 0/1.
    """
    if p.is_zero():
        return ZERO_POLY, ONE_POLY
    g = poly_gcd(p, q)
    p0 = p.exact_div(g)
    q0 = q.exact_div(g)
    c = q0.coefficient(0)
    if c.is_zero():
        return None
    inv = GR_ONE / c
    return p0.scale(inv), q0.scale(inv)


def order_condition_holds(
    s: PowerSeries, numerator: Polynomial, denominator: Polynomial, m: int, n: int
) -> bool:
    """val(Q*S - P) >= m+n+1, checked by exact series multiplication."""
    diff = s.mul_poly(denominator) - PowerSeries.from_polynomial(
        numerator, s.truncation_len
    )
    return diff.valuation_at_least(m + n + 1)


def _finish(s, m, n, num, den, c_mn, c_m1n, status, factor=None) -> PadeResult:
    if den.coefficient(0) != GR_ONE:
        raise VerificationError("denominator not normalized at the origin")
    if not order_condition_holds(s, num, den, m, n):
        raise VerificationError(
            f"order condition failed for the ({m},{n}) approximant"
        )
    deg_num = num.degree
    deg_den = den.degree
    if (deg_num is not None and deg_num > m) or (deg_den is not None and deg_den > n):
        raise VerificationError("approximant degree bounds violated")
    return PadeResult(m, n, num, den, c_mn, c_m1n, status, factor)


def pade_via_system(s: PowerSeries, m: int, n: int) -> PadeResult:
    """Solve the denominator linear system, then truncate Q*S for the numerator.

    Falls back to the Jacobi route when the system is singular, which is the
    only case where a degenerate-versus-nonexistent call must be made.
    """
    if s.truncation_len < m + n + 1:
        raise TruncationError(
            f"Pade at ({m},{n}) needs {m + n + 1} coefficients, have {s.truncation_len}"
        )
    c_mn = hankel_det(s, m, n)
    if c_mn.is_zero():
        return pade_via_jacobi(s, m, n)
    c_m1n = hankel_det(s, m + 1, n)
    if n == 0:
        den = ONE_POLY
    else:
        matrix = hankel_matrix(s, m, n)
        rhs = [-_entry(s, m + 1 + i) for i in range(n)]
        x = solve(matrix, rhs)  # unknowns ordered (q_n, ..., q_1)
        den = Polynomial([GR_ONE] + [x[n - k] for k in range(1, n + 1)])
    num = s.mul_poly(den).partial_sum(m)
    reduced = _make_irreducible(num, den)
    if reduced is None:
        raise VerificationError("nonsingular system produced a bad denominator")
    num, den = reduced
    status = PadeStatus.NORMAL if not c_m1n.is_zero() else PadeStatus.EXISTS_NON_NORMAL
    return _finish(s, m, n, num, den, c_mn, c_m1n, status)


def pade_via_jacobi(s: PowerSeries, m: int, n: int) -> PadeResult:
    """Determinantal route with full degeneracy classification."""
    if s.truncation_len < m + n + 1:
        raise TruncationError(
            f"Pade at ({m},{n}) needs {m + n + 1} coefficients, have {s.truncation_len}"
        )
    c_mn = hankel_det(s, m, n)
    c_m1n = hankel_det(s, m + 1, n)
    phat, qhat = jacobi_pair(s, m, n)

    if not c_mn.is_zero():
        reduced = _make_irreducible(phat, qhat)
        if reduced is None:
            raise VerificationError("Jacobi pair not normalizable despite C != 0")
        num, den = reduced
        status = (
            PadeStatus.NORMAL if not c_m1n.is_zero() else PadeStatus.EXISTS_NON_NORMAL
        )
        return _finish(s, m, n, num, den, c_mn, c_m1n, status)

    if phat.is_zero() and qhat.is_zero():
        # The determinant pair carries no information; take any nontrivial
        # solution of the linearized problem instead (all solutions represent
        # the same rational function).
        matrix = [[_entry(s, m + 1 + i - j) for j in range(n + 1)] for i in range(n)]
        v = nullspace_vector(matrix, n + 1)
        cand_q = Polynomial(v)
        cand_p = s.mul_poly(cand_q).partial_sum(m)
        factor = ZERO_POLY
    else:
        cand_p, cand_q = phat, qhat
        factor = None

    if cand_p.is_zero():
        num, den = ZERO_POLY, ONE_POLY
    else:
        reduced = _make_irreducible(cand_p, cand_q)
        if reduced is None:
            return PadeResult(m, n, None, None, c_mn, c_m1n, PadeStatus.NOT_EXISTS)
        num, den = reduced
    if not order_condition_holds(s, num, den, m, n):
        return PadeResult(m, n, None, None, c_mn, c_m1n, PadeStatus.NOT_EXISTS)
    if factor is None:
        # T is pinned by Qhat = T * denominator (exact); T(0) = 0 since both
        # determinants vanish at the origin together with C_{m,n}.
        factor = qhat.exact_div(den) if not qhat.is_zero() else phat.exact_div(num)
    if not factor.is_zero() and not factor.coefficient(0).is_zero():
        raise VerificationError("degenerate factor does not vanish at 0")
    return _finish(
        s, m, n, num, den, c_mn, c_m1n, PadeStatus.DEGENERATE_EXISTS, factor
    )


def pade(s: PowerSeries, m: int, n: int) -> PadeResult:
    """Default route: linear system with determinantal fallback."""
    return pade_via_system(s, m, n)


def reciprocal_duality_check(s: PowerSeries, m: int, n: int) -> bool:
    """[1/S; n/m] equals the swapped, renormalized pair of [S; m/n].

    Also cross-checks membership duality: S in D_{m,n} iff 1/S in D_{n,m}.
    """
    from .series import series_reciprocal

    if s[0].is_zero():
        raise ValueError("duality needs a_0 != 0")
    r = pade_via_system(s, m, n)
    if not r.exists:
        raise ValueError(f"[S;{m}/{n}] does not exist")
    p0 = r.numerator.coefficient(0)
    if p0.is_zero():
        raise ValueError("duality needs a numerator with nonzero constant term")
    recip = series_reciprocal(s)
    dual = pade_via_system(recip, n, m)
    if not dual.exists:
        return False
    inv = GR_ONE / p0
    pair_ok = (
        dual.numerator == r.denominator.scale(inv)
        and dual.denominator == r.numerator.scale(inv)
    )
    membership_ok = hankel_det(s, m, n).is_zero() == hankel_det(recip, n, m).is_zero()
    return pair_ok and membership_ok
