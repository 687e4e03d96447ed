from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from logcert import instances as I
from logcert.criteria import (
    BoundFunction,
    DigitBudgetExceeded,
    LogEnclosures,
    Verdict,
    cgw_condition_ii,
    cgw_ratio_check,
    check_log_concave_range,
    check_log_convex_range,
    interlacing_check,
    limit_diagnostics,
    limit_quadratic,
    nth_root_increasing_check,
    nth_root_logconcave_check,
    nth_root_logconcave_range,
    root_ratio_power_gap,
    three_term_criterion_check,
)
from logcert.exact import Polynomial, PreconditionError, RationalFunction, rational_roots_quadratic
from logcert.sequences import SequenceTable, quotients

x = Polynomial.x()


def table(vals, start=0, name="z"):
    return SequenceTable.from_values(name, vals, start=start)


# --- pairwise -------------------------------------------------------------------


def test_S_strictly_log_convex(S_table):
    assert check_log_convex_range(S_table, True, 1, 100).passed


def test_constant_sequence():
    ones = table([1] * 10)
    assert check_log_convex_range(ones, False, 1, 8).passed
    strict = check_log_convex_range(ones, True, 1, 8)
    assert strict.verdict is Verdict.FAIL and strict.witness == 1


def test_arithmetic_progression():
    ap = table([1, 2, 3, 4, 5, 6])
    rep = check_log_convex_range(ap, True, 1, 4)
    assert rep.verdict is Verdict.FAIL and rep.witness == 1
    assert rep.lhs - rep.rhs == -1
    assert check_log_concave_range(ap, True, 1, 4).passed


def test_quotients_of_S_log_concave(S_quotients):
    assert check_log_concave_range(S_quotients.as_table(), True, 2, 100).passed
    # independent oracle: sympy rationals built from scratch
    S = [sum(sympy.binomial(m, k) ** 2 * sympy.binomial(2 * k, k) * (2 * k + 1) for k in range(m + 1))
         for m in range(0, 30)]
    s = [None] + [sympy.Rational(S[m], S[m - 1]) for m in range(1, 30)]
    assert all(s[m] ** 2 > s[m - 1] * s[m + 1] for m in range(2, 29))


def test_factorial_sequence():
    fact = table([1, 1, 2, 6, 24, 120])
    assert check_log_convex_range(fact, False, 1, 4).passed
    from_two = check_log_concave_range(fact, True, 2, 4)
    assert from_two.verdict is Verdict.FAIL and from_two.witness == 2
    assert 1 * 6 > 2 ** 2
    from_one = check_log_concave_range(fact, True, 1, 4)
    assert from_one.witness == 1


def test_geometric_sequence_equality_case():
    geo = table([3 ** k for k in range(8)])
    for check in (check_log_convex_range, check_log_concave_range):
        assert check(geo, False, 1, 6).passed
        assert check(geo, True, 1, 6).verdict is Verdict.FAIL


def test_missing_range_and_nonpositive():
    with pytest.raises(IndexError):
        check_log_convex_range(table([1, 2, 3]), True, 1, 5)
    with pytest.raises(ValueError):
        check_log_convex_range(table([1, -2, 3, 4]), True, 1, 2)


@given(st.lists(st.integers(1, 10 ** 6), min_size=3, max_size=25), st.booleans())
def test_log_convex_matches_brute_force(vals, strict):
    t = table(vals)
    hi = len(vals) - 2
    rep = check_log_convex_range(t, strict, 1, hi)
    bad = [m for m in range(1, hi + 1)
           if vals[m - 1] * vals[m + 1] < vals[m] ** 2 or (strict and vals[m - 1] * vals[m + 1] == vals[m] ** 2)]
    assert rep.passed == (not bad)
    if bad:
        assert rep.witness == bad[0]


@given(st.lists(st.integers(1, 10 ** 6), min_size=3, max_size=25))
def test_strict_convex_and_concave_exclusive(vals):
    t = table(vals)
    hi = len(vals) - 2
    assert not (check_log_convex_range(t, True, 1, hi).passed and check_log_concave_range(t, True, 1, hi).passed)


# --- three-term criterion ---------------------------------------------------------


def test_three_term_on_S(S_table, S_quotients):
    rep = three_term_criterion_check(I.A, I.B_REC, I.C_REC, 0, S_quotients, 200)
    assert rep.passed
    assert [d.criterion for d in rep.details[:3]] == [
        "a_positive", "discriminant_nonnegative", "quotient_in_root_interval"]
    assert check_log_convex_range(S_table, False, 1, 200).passed


def fibonacci(k):
    a, b = 1, 1
    out = []
    for _ in range(k):
        out.append(a)
        a, b = b, a + b
    return out


def test_fibonacci_fails_condition_iii_at_two():
    q = quotients(table(fibonacci(12)))
    one = Polynomial.const(1)
    rep = three_term_criterion_check(one, -one, -one, 0, q, 10)
    assert rep.verdict is Verdict.FAIL and rep.witness == 2
    cond_iii = rep.details[2]
    assert cond_iii.criterion == "quotient_in_root_interval" and cond_iii.witness == 2
    assert 2 ** 2 - 2 - 1 > 0


def test_negative_leading_coefficient_fails_condition_i():
    q = quotients(table(fibonacci(8)))
    one = Polynomial.const(1)
    rep = three_term_criterion_check(-one, one, one, 0, q, 5)
    assert rep.verdict is Verdict.FAIL
    assert rep.details[0].verdict is Verdict.FAIL and rep.details[0].criterion == "a_positive"


@given(st.lists(st.integers(1, 1000), min_size=4, max_size=15),
       st.integers(1, 5), st.integers(-20, 20), st.integers(-20, 20))
@settings(max_examples=60, deadline=None)
def test_three_term_pass_implies_log_convex(vals, a0, b0, c0):
    t = table(vals)
    q = quotients(t)
    a, b, c = Polynomial.const(a0), Polynomial.const(b0), Polynomial.const(c0)
    hi = len(vals) - 1
    rep = three_term_criterion_check(a, b, c, 0, q, hi)
    if rep.passed and hi >= 2:
        assert check_log_convex_range(t, False, 1, hi - 1).passed


# --- interlacing ----------------------------------------------------------------


def test_interlacing_on_S(S_quotients):
    rep = interlacing_check(S_quotients, I.H_BOUND, 1, 200, "increasing", strict=True)
    assert rep.passed and rep.range == (2, 200)
    assert I.H_BOUND(1) == Fraction(9, 2) < S_quotients[2] == Fraction(55, 7) < I.H_BOUND(2) == Fraction(63, 8)


def test_interlacing_decreasing_inverse_factorial():
    fact = [1]
    for k in range(1, 12):
        fact.append(fact[-1] * k)
    q = quotients(table([Fraction(1, f) for f in fact]))
    assert q[5] == Fraction(1, 5)
    bound = BoundFunction(RationalFunction(1, x + 1), 0)
    assert interlacing_check(q, bound, 0, 10, "decreasing", strict=False).passed
    assert interlacing_check(q, bound, 0, 10, "decreasing", strict=True).verdict is Verdict.FAIL


def test_interlacing_bound_domain():
    with pytest.raises(PreconditionError):
        interlacing_check(quotients(table([1, 2, 5, 13])), I.H_BOUND, 0, 3)
    with pytest.raises(ValueError):
        interlacing_check(quotients(table([1, 2, 5, 13])), I.H_BOUND, 1, 3, mode="sideways")


@given(st.lists(st.integers(1, 10 ** 4), min_size=4, max_size=20))
def test_interlacing_pass_implies_monotone(vals):
    q = quotients(table(vals))
    bound = BoundFunction(RationalFunction(x, 1), 0)  # b(n) = n, increasing
    hi = len(vals) - 1
    rep = interlacing_check(q, bound, 1, hi, "increasing", strict=True)
    if rep.passed:
        assert all(q[m] < q[m + 1] for m in range(2, hi))


# --- ratio log-concavity ---------------------------------------------------------


def test_cgw_on_S(S_quotients):
    rep = cgw_ratio_check(I.U_PRINTED, I.V_NORMALIZED, I.H_BOUND, 1, S_quotients, 200)
    assert rep.passed
    assert rep.info["condition_ii"] == I.CGW_II_PRINTED


def test_cgw_sign_convention_violation(S_quotients):
    rep = cgw_ratio_check(I.U_PRINTED, I.V_PRINTED_MAGNITUDE, I.H_BOUND, 1, S_quotients, 50)
    assert rep.verdict is Verdict.FAIL
    assert "sign convention" in rep.reason


def test_cgw_condition_ii_shape():
    expr = cgw_condition_ii(I.U_PRINTED, I.V_NORMALIZED, I.H)
    assert all(expr(k) < 0 for k in range(1, 60))
    assert expr == I.CGW_II_PRINTED


def test_three_quarter_u_bound_from_three():
    assert all(Fraction(3, 4) * I.U_PRINTED(k) < I.H(k - 1) for k in range(3, 200))
    assert not Fraction(3, 4) * I.U_PRINTED(2) < I.H(1)


# --- n-th roots -------------------------------------------------------------------


def test_nth_root_increasing(S_table):
    assert 7 ** 2 == 49 < 55
    assert 55 ** 3 == 166375 < 465 ** 2 == 216225
    assert nth_root_increasing_check(S_table, 1, 200).passed
    rep = nth_root_increasing_check(table([5] * 6), 1, 4)
    assert rep.verdict is Verdict.FAIL and rep.witness == 1


def test_nth_root_logconcave_base_case(S_table):
    assert nth_root_logconcave_check(S_table, 2, "exact").passed
    assert 55 ** 6 == 27680640625 > 7 ** 6 * 465 ** 2 == 25438655025
    gap = root_ratio_power_gap(S_table, 2)
    assert gap == Fraction(89679424, 782954095)
    assert gap == Fraction(55 ** 3, 7 ** 6) - Fraction(93 ** 2, 5 * 11 ** 3)


def test_nth_root_logconcave_n3_against_bigint(S_table):
    assert nth_root_logconcave_check(S_table, 3, "exact").passed
    assert 465 ** 16 > 55 ** 12 * 4047 ** 6


def test_nth_root_logconcave_interval_large_n(S_table):
    rep = nth_root_logconcave_check(S_table, 200, "interval", max_bits=128)
    assert rep.passed and rep.info["bits"] >= 128


def test_exact_interval_agreement(S_table):
    logs = LogEnclosures(S_table)
    for m in range(2, 61):
        ex = nth_root_logconcave_check(S_table, m, "exact")
        iv_rep = nth_root_logconcave_check(S_table, m, "interval", max_bits=256, logs=logs)
        assert ex.verdict == iv_rep.verdict == Verdict.PASS
    rep = nth_root_logconcave_range(S_table, 2, 120, 60, max_bits=256, logs=logs)
    assert rep.passed


def test_geometric_sequence_is_indeterminate_not_wrong():
    geo = table([2 ** k for k in range(12)])
    rep = nth_root_logconcave_check(geo, 5, "interval", max_bits=256, start_bits=64)
    assert rep.verdict is Verdict.INDETERMINATE and rep.witness == 5
    exact = nth_root_logconcave_check(geo, 5, "exact")
    assert exact.verdict is Verdict.FAIL


def test_digit_budget():
    huge = table([10 ** 200000] * 12)
    with pytest.raises(DigitBudgetExceeded):
        nth_root_logconcave_check(huge, 10, "exact")
    with pytest.raises(ValueError):
        nth_root_logconcave_check(huge, 1, "exact")


@given(st.lists(st.integers(1, 10 ** 9), min_size=4, max_size=10))
@settings(max_examples=40, deadline=None)
def test_interval_mode_never_contradicts_exact(vals):
    t = table(vals)
    for m in range(2, len(vals) - 1):
        ex = nth_root_logconcave_check(t, m, "exact")
        iv_rep = nth_root_logconcave_check(t, m, "interval", max_bits=256, start_bits=64)
        if iv_rep.verdict is not Verdict.INDETERMINATE:
            assert iv_rep.verdict == ex.verdict


# --- limits -------------------------------------------------------------------------


def test_limit_quadratic_roots():
    quad = limit_quadratic(I.A, I.B_REC, I.C_REC)
    assert quad == Polynomial([9, -10, 1])
    assert rational_roots_quadratic(quad) == (1, 9)


def test_squeeze_at_ten(S_quotients):
    gap = 9 - S_quotients[10]
    assert Fraction(9, 200) < gap < Fraction(9, 162)


def test_limit_diagnostics(S_table, S_quotients):
    rep = limit_diagnostics(S_quotients, S_table, 300, I.H_BOUND, max_bits=256)
    assert rep.passed
    names = [d.criterion for d in rep.details]
    assert names == ["limit_squeeze", "product_squeeze", "nth_root_below_limit", "nth_root_increasing",
                     "root_ratio_decreasing", "log_root_ratio_bounds", "root_ratio_near_one"]
    small = limit_diagnostics(S_quotients, S_table, 50, I.H_BOUND, max_bits=256)
    assert small.passed
    lo, hi = small.info["root_ratio_enclosure"]
    assert 1 < float(lo) <= float(hi) < 1.01


def test_limit_diagnostics_threshold_failure(S_table, S_quotients):
    rep = limit_diagnostics(S_quotients, S_table, 20, I.H_BOUND, threshold=Fraction(1, 10 ** 6), max_bits=256)
    assert rep.verdict is Verdict.FAIL and rep.witness == 20
