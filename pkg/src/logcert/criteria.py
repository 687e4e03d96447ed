"""Sequence-agnostic checkers for log-convexity, log-concavity and the
criteria built on them.

Every checker returns a :class:`CriterionReport`.  Per-index checks are exact
rational comparisons except for the n-th-root checks in interval mode, which
use outward-rounded logarithm enclosures and answer ``INDETERMINATE`` rather
than guess when the enclosure straddles zero.
"""

from __future__ import annotations

import contextlib
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterator, Optional, Sequence

from mpmath import iv

from .exact import (
    Polynomial,
    PreconditionError,
    RationalFunction,
    RootInterval,
    SignCertificate,
    format_rational,
    in_quadratic_root_interval,
    ratfun_sign_for_all_n_geq,
    sign_for_all_n_geq,
)
from .sequences import QuotientTable, SequenceTable, require_positive

DEFAULT_START_BITS = 128
DEFAULT_MAX_BITS = 4096
#: exact n-th-root comparisons refuse operands larger than this many decimal digits
EXACT_DIGIT_BUDGET = 2_000_000


class Verdict(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INDETERMINATE = "indeterminate"


class DigitBudgetExceeded(ValueError):
    pass


@dataclass
class CriterionReport:
    criterion: str
    range: tuple[int, int]
    verdict: Verdict
    strict: bool = True
    witness: Optional[int] = None
    lhs: Any = None
    rhs: Any = None
    reason: Optional[str] = None
    details: list["CriterionReport"] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_dict(self) -> dict:
        out: dict = {
            "criterion": self.criterion,
            "range": list(self.range),
            "verdict": self.verdict.value,
            "strict": self.strict,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.lhs is not None:
            out["lhs"] = _jsonable(self.lhs)
        if self.rhs is not None:
            out["rhs"] = _jsonable(self.rhs)
        if self.reason:
            out["reason"] = self.reason
        if self.info:
            out["info"] = {k: _jsonable(v) for k, v in self.info.items()}
        if self.details:
            out["details"] = [d.to_dict() for d in self.details]
        return out


def _jsonable(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, SignCertificate):
        return v.to_json()
    if isinstance(v, Polynomial):
        return v.to_json()
    if isinstance(v, RationalFunction):
        return v.to_json()
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return str(v)


def combine(criterion: str, rng: tuple[int, int], details: Sequence[CriterionReport],
            strict: bool = True, info: Optional[dict] = None) -> CriterionReport:
    """Fold sub-reports: any fail wins (smallest witness), then indeterminate, else pass."""
    fails = [d for d in details if d.verdict is Verdict.FAIL]
    undecided = [d for d in details if d.verdict is Verdict.INDETERMINATE]
    rep = CriterionReport(criterion, rng, Verdict.PASS, strict, details=list(details), info=info or {})
    if fails:
        first = min(fails, key=lambda d: (d.witness is None, d.witness or 0))
        rep.verdict = Verdict.FAIL
        rep.witness, rep.lhs, rep.rhs = first.witness, first.lhs, first.rhs
        rep.reason = f"{first.criterion}: {first.reason}" if first.reason else first.criterion
    elif undecided:
        first = min(undecided, key=lambda d: (d.witness is None, d.witness or 0))
        rep.verdict = Verdict.INDETERMINATE
        rep.witness = first.witness
        rep.reason = f"{first.criterion}: {first.reason}" if first.reason else first.criterion
    return rep


def scan(criterion: str, lo: int, hi: int, check: Callable[[int], Optional[tuple]],
         strict: bool = True, info: Optional[dict] = None) -> CriterionReport:
    """Run ``check(n)`` for n in [lo, hi]; it returns None on success or
    ``(lhs, rhs, reason)`` on failure.  Stops at the first (smallest) failure."""
    for n in range(lo, hi + 1):
        bad = check(n)
        if bad is not None:
            lhs, rhs, reason = bad
            return CriterionReport(criterion, (lo, hi), Verdict.FAIL, strict, n, lhs, rhs,
                                   reason, info=info or {})
    return CriterionReport(criterion, (lo, hi), Verdict.PASS, strict, info=info or {})


def certificate_report(criterion: str, cert: SignCertificate, want_sign: int,
                       hi: Optional[int] = None) -> CriterionReport:
    """Wrap a sign certificate as a sub-report that passes iff it proves ``want_sign``."""
    rng = (cert.threshold, hi if hi is not None else cert.scan_bound)
    info = {"certificate": cert}
    if cert.proves(want_sign):
        return CriterionReport(criterion, rng, Verdict.PASS, cert.strict, info=info)
    if cert.witness is not None:
        return CriterionReport(criterion, rng, Verdict.FAIL, cert.strict, cert.witness,
                               cert.witness_value, 0, "sign condition violated", info=info)
    return CriterionReport(criterion, rng, Verdict.FAIL, cert.strict, cert.threshold,
                           cert.polynomial(cert.threshold), 0,
                           f"eventual sign is {'positive' if cert.sign > 0 else 'negative'}", info=info)


def sign_report(criterion: str, expr, n0: int, want_sign: int, strict: bool = True) -> CriterionReport:
    """Certify sign(expr(n)) == want_sign for all integers n >= n0.

    The zero function has no sign certificate; it satisfies a weak claim
    trivially and fails a strict one at n0.
    """
    if RationalFunction.coerce(expr).num.is_zero():
        if strict:
            return CriterionReport(criterion, (n0, n0), Verdict.FAIL, strict, n0, Fraction(0), 0,
                                   "expression is identically zero")
        return CriterionReport(criterion, (n0, n0), Verdict.PASS, strict,
                               info={"identically_zero": True})
    if isinstance(expr, RationalFunction):
        cert = ratfun_sign_for_all_n_geq(expr, n0, strict)
    else:
        cert = sign_for_all_n_geq(Polynomial.coerce(expr), n0, strict)
    return certificate_report(criterion, cert, want_sign)


def identity_report(criterion: str, lhs, rhs) -> CriterionReport:
    """Exact equality of two polynomials or rational functions."""
    lhs_n = RationalFunction.coerce(lhs)
    rhs_n = RationalFunction.coerce(rhs)
    if lhs_n == rhs_n:
        return CriterionReport(criterion, (0, 0), Verdict.PASS)
    return CriterionReport(criterion, (0, 0), Verdict.FAIL, lhs=lhs_n, rhs=rhs_n,
                           reason="expressions differ")


# --- pairwise log-behavior ------------------------------------------------------


def _pairwise(values: SequenceTable, strict: bool, lo: int, hi: int, convex: bool) -> CriterionReport:
    values.require(lo - 1, hi + 1)
    require_positive(values, lo - 1, hi + 1)
    name = "log_convex" if convex else "log_concave"

    def check(n):
        outer = Fraction(values[n - 1]) * values[n + 1]
        mid = Fraction(values[n]) ** 2
        diff = outer - mid if convex else mid - outer
        if diff < 0 or (strict and diff == 0):
            return outer, mid, "z_{n-1} z_{n+1} vs z_n^2"
        return None

    return scan(name, lo, hi, check, strict)


def check_log_convex_range(values: SequenceTable, strict: bool, n_lo: int, n_hi: int) -> CriterionReport:
    """z_{n-1} z_{n+1} >= z_n^2 (> when strict) for every n in [n_lo, n_hi]."""
    return _pairwise(values, strict, n_lo, n_hi, convex=True)


def check_log_concave_range(values: SequenceTable, strict: bool, n_lo: int, n_hi: int) -> CriterionReport:
    """z_{n-1} z_{n+1} <= z_n^2 (< when strict); works on rational-valued tables."""
    return _pairwise(values, strict, n_lo, n_hi, convex=False)


def check_quotients_monotone(q: QuotientTable, lo: int, hi: int, increasing: bool,
                             strict: bool = True) -> CriterionReport:
    q.require(lo, hi + 1)

    def check(n):
        d = q[n + 1] - q[n] if increasing else q[n] - q[n + 1]
        if d < 0 or (strict and d == 0):
            return q[n], q[n + 1], "consecutive quotients out of order"
        return None

    return scan("quotients_increasing" if increasing else "quotients_decreasing", lo, hi, check, strict)


# --- three-term log-convexity criterion -----------------------------------------


def three_term_criterion_check(a: Polynomial, b: Polynomial, c: Polynomial, N: int,
                               quotients: QuotientTable, n_hi: int,
                               strict: bool = False) -> CriterionReport:
    """Log-convexity criterion for a(n) z_{n+1} + b(n) z_n + c(n) z_{n-1} = 0.

    Conditions for n > N: (i) a(n) > 0, (ii) b^2 - 4ac >= 0, (iii) the
    quotient z_n/z_{n-1} lies between the roots of a t^2 + b t + c.  (i) and
    (ii) are tail certificates; (iii) is checked per n on [max(N+1, 1), n_hi].
    With ``strict`` a quotient on a root counts as a failure.
    """
    lo = max(N + 1, 1)
    quotients.require(lo, n_hi)
    disc = b * b - 4 * a * c
    cond_i = sign_report("a_positive", a, N + 1, +1, strict=True)
    cond_ii = sign_report("discriminant_nonnegative", disc, N + 1, +1, strict=False)

    def check(n):
        try:
            where = in_quadratic_root_interval(a, b, c, n, quotients[n])
        except PreconditionError as exc:
            return quotients[n], None, str(exc)
        if where is RootInterval.OUTSIDE or (strict and where is RootInterval.ON_BOUNDARY):
            val = (a(n) * quotients[n] + b(n)) * quotients[n] + c(n)
            return val, 0, f"quotient {where.value.lower()} the root interval"
        return None

    cond_iii = scan("quotient_in_root_interval", lo, n_hi, check, strict)
    details = [cond_i, cond_ii, cond_iii]
    if all(d.passed for d in details) and n_hi > lo:
        details.append(check_quotients_monotone(quotients, lo, n_hi - 1, increasing=True, strict=False))
    return combine("three_term_criterion", (lo, n_hi), details, strict,
                   info={"discriminant": disc})


# --- interlacing ----------------------------------------------------------------


@dataclass(frozen=True)
class BoundFunction:
    expr: RationalFunction
    valid_from: int

    def __call__(self, n: int) -> Fraction:
        if n < self.valid_from:
            raise PreconditionError(f"bound is only defined for n >= {self.valid_from} (asked n={n})")
        return self.expr(n)


def interlacing_check(quotients: QuotientTable, bound: BoundFunction, N: int, n_hi: int,
                      mode: str = "increasing", strict: bool = True) -> CriterionReport:
    """Sandwich b(n-1) <= q_n <= b(n) (reversed when decreasing) for n in [N+1, n_hi].

    A pass forces the quotients to be monotone in the same direction, which
    is re-checked directly as a sub-report.
    """
    if mode not in ("increasing", "decreasing"):
        raise ValueError("mode must be 'increasing' or 'decreasing'")
    if N < bound.valid_from:
        raise PreconditionError(f"bound needed from n={N} but only valid from {bound.valid_from}")
    lo = N + 1
    quotients.require(lo, n_hi)
    sign = 1 if mode == "increasing" else -1

    def check(n):
        lower, q, upper = bound(n - 1), quotients[n], bound(n)
        d1, d2 = sign * (q - lower), sign * (upper - q)
        if min(d1, d2) < 0 or (strict and min(d1, d2) == 0):
            side = "b(n-1)" if d1 <= d2 else "b(n)"
            return q, lower if side == "b(n-1)" else upper, f"quotient not inside the sandwich ({side})"
        return None

    sandwich = scan("sandwich", lo, n_hi, check, strict)
    details = [sandwich]
    if sandwich.passed and n_hi > lo:
        details.append(check_quotients_monotone(quotients, lo, n_hi - 1, mode == "increasing", strict))
    return combine(f"interlacing_{mode}", (lo, n_hi), details, strict)


# --- ratio log-concavity criterion -----------------------------------------------


def cgw_condition_ii(u: RationalFunction, v: RationalFunction, h: RationalFunction) -> RationalFunction:
    """h(n)^4 - u(n) h(n)^3 - u(n+1) v(n) h(n) - v(n) v(n+1)."""
    return h ** 4 - u * h ** 3 - u.shift(1) * v * h - v * v.shift(1)


def cgw_ratio_check(u: RationalFunction, v: RationalFunction, h: BoundFunction, N: int,
                    quotients: QuotientTable, n_hi: int) -> CriterionReport:
    """Ratio log-concavity criterion for z_n = u(n) z_{n-1} + v(n) z_{n-2}, v(n) < 0.

    (i) 3u(n)/4 <= z_n/z_{n-1} <= h(n) and (ii) the quartic expression
    returned by :func:`cgw_condition_ii` is negative, both for n >= N+2.
    Condition (ii) is checked per n and also as one tail certificate; the two
    routes must agree in sign at every checked n.
    """
    lo = N + 2
    quotients.require(lo, n_hi)

    def v_negative(n):
        val = v(n)
        if val >= 0:
            return val, 0, "sign convention: v(n) must be negative (z_n = u z_{n-1} + v z_{n-2})"
        return None

    sign_conv = scan("v_negative", max(2, lo), n_hi, v_negative)

    def cond_i(n):
        q = quotients[n]
        low = Fraction(3, 4) * u(n)
        if q < low:
            return q, low, "quotient below 3u(n)/4"
        if q > h(n):
            return q, h(n), "quotient above h(n)"
        return None

    expr = cgw_condition_ii(u, v, h.expr)

    def cond_ii(n):
        direct = h(n) ** 4 - u(n) * h(n) ** 3 - u(n + 1) * v(n) * h(n) - v(n) * v(n + 1)
        if direct != expr(n):
            return direct, expr(n), "per-n value disagrees with the symbolic expression"
        if direct >= 0:
            return direct, 0, "condition (ii) expression not negative"
        return None

    details = [
        sign_conv,
        scan("bounds_3u/4_and_h", lo, n_hi, cond_i, strict=False),
        scan("quartic_negative_per_n", lo, n_hi, cond_ii),
        sign_report("quartic_negative_tail", expr, lo, -1),
    ]
    if all(d.passed for d in details) and n_hi > lo:
        details.append(check_log_concave_range(quotients.as_table(), False, lo + 1, n_hi - 1))
    return combine("cgw_ratio_log_concave", (lo, n_hi), details, info={"condition_ii": expr})


# --- n-th roots -----------------------------------------------------------------


def _digits(x: int) -> float:
    return x.bit_length() * math.log10(2)


def nth_root_increasing_check(values: SequenceTable, n_lo: int, n_hi: int,
                              strict: bool = True) -> CriterionReport:
    """z_n^{1/n} < z_{n+1}^{1/(n+1)}, i.e. z_n^{n+1} < z_{n+1}^n, exactly."""
    values.require(n_lo, n_hi + 1)
    require_positive(values, n_lo, n_hi + 1)
    if n_lo < 1:
        raise ValueError("n-th roots start at n = 1")
    for n in range(n_lo, n_hi + 1):
        if n * _digits(int(values[n + 1])) > EXACT_DIGIT_BUDGET:
            raise DigitBudgetExceeded(f"z_{n + 1}^{n} exceeds {EXACT_DIGIT_BUDGET} digits")

    def check(n):
        lhs, rhs = values[n] ** (n + 1), values[n + 1] ** n
        if lhs > rhs or (strict and lhs == rhs):
            return lhs, rhs, "z_n^(n+1) vs z_(n+1)^n"
        return None

    return scan("nth_root_increasing", n_lo, n_hi, check, strict)


@contextlib.contextmanager
def _precision(bits: int) -> Iterator[None]:
    # iv.prec is global to the mpmath interval context; callers are sequential.
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


class LogEnclosures:
    """Cached outward-rounded enclosures of ln z_k at several precisions."""

    def __init__(self, values: SequenceTable):
        require_positive(values)
        self.values = values
        self._cache: dict[tuple[int, int], Any] = {}

    def __call__(self, k: int, bits: int):
        key = (k, bits)
        if key not in self._cache:
            with _precision(bits + 32):
                self._cache[key] = iv.log(iv.mpf(int(self.values[k])))
        return self._cache[key]

    def root_log_gap(self, n: int, bits: int):
        """Enclosure of 2(n-1)(n+1) ln z_n - n(n+1) ln z_{n-1} - n(n-1) ln z_{n+1}."""
        with _precision(bits + 32):
            return (2 * (n - 1) * (n + 1) * self(n, bits) - n * (n + 1) * self(n - 1, bits)
                    - n * (n - 1) * self(n + 1, bits))

    def log_root_ratio(self, n: int, bits: int):
        """Enclosure of ln r_n = ln z_{n+1}/(n+1) - ln z_n/n."""
        with _precision(bits + 32):
            return self(n + 1, bits) / (n + 1) - self(n, bits) / n


def _interval_str(x, digits: int = 20) -> list[str]:
    from mpmath import mpf, nstr
    return [nstr(mpf(x.a), digits), nstr(mpf(x.b), digits)]


def decide_positive(enclose: Callable[[int], Any], start_bits: int, max_bits: int):
    """Double precision until the enclosure excludes zero.

    Returns ``(sign, enclosure, bits)``; sign is 0 when still undecided at
    ``max_bits``.
    """
    bits = min(start_bits, max_bits)
    while True:
        x = enclose(bits)
        if x.a > 0:
            return 1, x, bits
        if x.b < 0:
            return -1, x, bits
        if bits >= max_bits:
            return 0, x, bits
        bits = min(2 * bits, max_bits)


def root_ratio_power_gap(values: SequenceTable, n: int) -> Fraction:
    """r_{n-1}^m - r_n^m with m = (n-1) n (n+1) and r_k = z_{k+1}^{1/(k+1)} / z_k^{1/k}.

    Positive exactly when z_n^{1/n} is strictly log-concave at n.  At n = 2
    this is (sqrt(z_2)/z_1)^6 - (z_3^{1/3}/sqrt(z_2))^6.
    """
    zp, z, zn = int(values[n - 1]), int(values[n]), int(values[n + 1])
    e = (n - 1) * (n + 1)
    return Fraction(z ** e, zp ** (n * (n + 1))) - Fraction(zn ** (n * (n - 1)), z ** e)


def nth_root_logconcave_check(values: SequenceTable, n: int, mode: str = "exact",
                              max_bits: int = DEFAULT_MAX_BITS,
                              start_bits: int = DEFAULT_START_BITS,
                              logs: Optional[LogEnclosures] = None) -> CriterionReport:
    """Strict log-concavity of z_n^{1/n} at a single n >= 2.

    Decides z_n^{2(n-1)(n+1)} > z_{n-1}^{n(n+1)} z_{n+1}^{n(n-1)}: in exact
    mode with big-integer powers, in interval mode through enclosures of the
    logarithms.  Interval mode never returns a wrong verdict; it reports
    INDETERMINATE when ``max_bits`` is not enough.
    """
    if n < 2:
        raise ValueError("n-th-root log-concavity needs n >= 2")
    values.require(n - 1, n + 1)
    require_positive(values, n - 1, n + 1)
    crit = f"nth_root_log_concave[{mode}]"
    if mode == "exact":
        size = 2 * (n - 1) * (n + 1) * _digits(int(values[n + 1]))
        if size > EXACT_DIGIT_BUDGET:
            raise DigitBudgetExceeded(f"exact comparison at n={n} needs ~{size:.0f} digits")
        lhs = int(values[n]) ** (2 * (n - 1) * (n + 1))
        rhs = int(values[n - 1]) ** (n * (n + 1)) * int(values[n + 1]) ** (n * (n - 1))
        if lhs > rhs:
            return CriterionReport(crit, (n, n), Verdict.PASS)
        return CriterionReport(crit, (n, n), Verdict.FAIL, witness=n,
                               reason="z_n^(2(n-1)(n+1)) <= z_(n-1)^(n(n+1)) z_(n+1)^(n(n-1))")
    if mode == "interval":
        logs = logs or LogEnclosures(values)
        sign, enc, bits = decide_positive(lambda b: logs.root_log_gap(n, b), start_bits, max_bits)
        info = {"log_gap_enclosure": _interval_str(enc), "bits": bits}
        if sign > 0:
            return CriterionReport(crit, (n, n), Verdict.PASS, info=info)
        if sign < 0:
            return CriterionReport(crit, (n, n), Verdict.FAIL, witness=n,
                                   reason="log gap enclosure is negative", info=info)
        return CriterionReport(crit, (n, n), Verdict.INDETERMINATE, witness=n,
                               reason=f"enclosure contains 0 at {bits} bits", info=info)
    raise ValueError(f"unknown mode {mode!r}")


def nth_root_logconcave_range(values: SequenceTable, n_lo: int, n_hi: int, exact_to: int,
                              max_bits: int = DEFAULT_MAX_BITS,
                              start_bits: int = DEFAULT_START_BITS,
                              logs: Optional[LogEnclosures] = None) -> CriterionReport:
    """Exact mode for n <= exact_to, interval mode above; where exact runs the
    interval verdict is computed too and the two must agree."""
    logs = logs or LogEnclosures(values)
    exact_fail = interval_fail = agree_fail = None
    undecided = None
    for n in range(n_lo, n_hi + 1):
        iv_rep = nth_root_logconcave_check(values, n, "interval", max_bits, start_bits, logs)
        if n <= exact_to:
            ex_rep = nth_root_logconcave_check(values, n, "exact")
            if ex_rep.verdict is Verdict.FAIL and exact_fail is None:
                exact_fail = ex_rep
            if iv_rep.verdict is not Verdict.INDETERMINATE and iv_rep.verdict != ex_rep.verdict:
                agree_fail = agree_fail or CriterionReport(
                    "exact_interval_agreement", (n, n), Verdict.FAIL, witness=n,
                    reason=f"exact {ex_rep.verdict.value} vs interval {iv_rep.verdict.value}")
        else:
            if iv_rep.verdict is Verdict.FAIL and interval_fail is None:
                interval_fail = iv_rep
            if iv_rep.verdict is Verdict.INDETERMINATE and undecided is None:
                undecided = iv_rep
    details = []
    ex_hi = min(exact_to, n_hi)
    if n_lo <= ex_hi:
        details.append(exact_fail or CriterionReport("nth_root_log_concave[exact]", (n_lo, ex_hi), Verdict.PASS))
        details.append(agree_fail or CriterionReport("exact_interval_agreement", (n_lo, ex_hi), Verdict.PASS))
    iv_lo = max(n_lo, exact_to + 1)
    if iv_lo <= n_hi:
        rep = interval_fail or undecided or CriterionReport(
            "nth_root_log_concave[interval]", (iv_lo, n_hi), Verdict.PASS,
            info={"max_bits": max_bits})
        details.append(rep)
    return combine("nth_root_log_concave", (n_lo, n_hi), details)


# --- limits ---------------------------------------------------------------------


def limit_quadratic(a: Polynomial, b: Polynomial, c: Polynomial) -> Polynomial:
    """Leading-order quadratic of a(n) s^2 + b(n) s + c(n) as n -> oo, made monic."""
    d = max(a.degree, b.degree, c.degree)
    coeff = [p.coeffs[d] if p.degree == d else Fraction(0) for p in (c, b, a)]
    return Polynomial(coeff).monic()


def limit_diagnostics(quotients: QuotientTable, values: SequenceTable, n_hi: int,
                      bound: Optional[BoundFunction] = None,
                      threshold: Fraction = Fraction(1, 100),
                      max_bits: int = DEFAULT_MAX_BITS,
                      start_bits: int = DEFAULT_START_BITS,
                      logs: Optional[LogEnclosures] = None,
                      limit: Fraction = Fraction(9)) -> CriterionReport:
    """Finite-range evidence for q_n -> ``limit`` and r_n -> 1.

    * squeeze: limit - q_n in (limit - bound(n), limit - bound(n-1)) for 2 <= n <= n_hi
    * product squeeze: z_1 prod bound(i-1) < z_n < z_1 prod bound(i)
    * z_n < limit^n, so the n-th root stays below the limit
    * r_n > 1 for 1 <= n <= n_hi (exact), r_n strictly decreasing for
      1 <= n < n_hi (interval), and r_{n_hi} - 1 < threshold (certified enclosure)
    """
    details = []
    info: dict = {}
    quotients.require(2, n_hi)
    values.require(0, n_hi + 1)
    if bound is not None:
        def squeeze(n):
            gap = limit - quotients[n]
            lo, hi = limit - bound(n), limit - bound(n - 1)
            if not (lo < gap < hi):
                return gap, (lo, hi), "limit - q_n outside the squeeze interval"
            return None

        details.append(scan("limit_squeeze", 2, n_hi, squeeze))

        z1 = Fraction(values[1])
        state = {"lower": z1, "upper": z1}

        def products(n):
            state["lower"] *= bound(n - 1)
            state["upper"] *= bound(n)
            if not (state["lower"] < values[n] < state["upper"]):
                return values[n], (state["lower"], state["upper"]), "product bounds violated"
            return None

        details.append(scan("product_squeeze", 2, n_hi, products))

    def below_limit(n):
        if not values[n] < limit ** n:
            return values[n], limit ** n, "z_n >= limit^n"
        return None

    details.append(scan("nth_root_below_limit", 1, n_hi, below_limit))
    details.append(nth_root_increasing_check(values, 1, n_hi))

    logs = logs or LogEnclosures(values)
    undecided = None

    def decreasing(n):
        nonlocal undecided
        sign, enc, bits = decide_positive(
            lambda b: logs.log_root_ratio(n, b) - logs.log_root_ratio(n + 1, b), start_bits, max_bits)
        if sign < 0:
            return None, None, "r_n <= r_(n+1)"
        if sign == 0 and undecided is None:
            undecided = n
        return None

    if n_hi >= 2:
        values.require(0, n_hi + 1)
        dec = scan("root_ratio_decreasing", 1, n_hi - 1, decreasing)
        if dec.passed and undecided is not None:
            dec.verdict, dec.witness = Verdict.INDETERMINATE, undecided
            dec.reason = "enclosure contains 0"
        details.append(dec)

    if bound is not None and n_hi >= 2:
        details.append(_log_ratio_bounds(values, bound, n_hi, logs, min(start_bits, max_bits), info))

    bits = min(start_bits, max_bits)
    with _precision(bits + 32):
        r = iv.exp(logs.log_root_ratio(n_hi, bits))
        excess = r - 1
        bound_ok = excess.b < iv.mpf(threshold.numerator) / threshold.denominator
    info["root_ratio_enclosure"] = _interval_str(r)
    if bound_ok:
        details.append(CriterionReport("root_ratio_near_one", (n_hi, n_hi), Verdict.PASS,
                                       info={"threshold": threshold, "r_minus_1": _interval_str(excess)}))
    else:
        details.append(CriterionReport("root_ratio_near_one", (n_hi, n_hi), Verdict.FAIL, witness=n_hi,
                                       reason="r_n - 1 not below threshold",
                                       info={"threshold": threshold, "r_minus_1": _interval_str(excess)}))
    with _precision(bits + 32):
        root = iv.exp(logs(n_hi, bits) / n_hi)
    info["nth_root_enclosure"] = _interval_str(root)
    info["n_hi"] = n_hi
    return combine("limit_diagnostics", (1, n_hi), details, info=info)


def _log_ratio_bounds(values: SequenceTable, bound: BoundFunction, n_hi: int,
                      logs: LogEnclosures, bits: int, info: dict) -> CriterionReport:
    """lower(n) < ln r_n < upper(n) for 2 <= n < n_hi, where the bounds come
    from z_1 prod_{i=2}^{n} bound(i-1) < z_n < z_1 prod_{i=2}^{n} bound(i)."""
    with _precision(bits + 32):
        ln_z1 = iv.log(iv.mpf(int(values[1])))

        def ln_rat(x: Fraction):
            return iv.log(iv.mpf(x.numerator) / x.denominator)

        # up[n] = sum_{i=2}^{n} ln bound(i), low[n] = sum_{i=2}^{n} ln bound(i-1)
        up, low = {1: iv.mpf(0)}, {1: iv.mpf(0)}
        for i in range(2, n_hi + 2):
            up[i] = up[i - 1] + ln_rat(bound(i))
            low[i] = low[i - 1] + ln_rat(bound(i - 1))
        first_bad = undecided = None
        last = None
        for n in range(2, n_hi):
            upper = (ln_z1 + up[n + 1]) / (n + 1) - (ln_z1 + low[n]) / n
            lower = (ln_z1 + low[n + 1]) / (n + 1) - (ln_z1 + up[n]) / n
            lr = logs.log_root_ratio(n, bits)
            above, below = upper - lr, lr - lower
            if above.b < 0 or below.b < 0:
                first_bad = n
                break
            if (above.a <= 0 or below.a <= 0) and undecided is None:
                undecided = n
            last = (lower, upper)
    if last is not None:
        info["log_ratio_lower_enclosure"] = _interval_str(last[0])
        info["log_ratio_upper_enclosure"] = _interval_str(last[1])
    rng = (2, n_hi - 1)
    if first_bad is not None:
        return CriterionReport("log_root_ratio_bounds", rng, Verdict.FAIL, witness=first_bad,
                               reason="ln r_n outside the product-derived bounds")
    if undecided is not None:
        return CriterionReport("log_root_ratio_bounds", rng, Verdict.INDETERMINATE, witness=undecided,
                               reason="enclosure touches a bound")
    return CriterionReport("log_root_ratio_bounds", rng, Verdict.PASS)
