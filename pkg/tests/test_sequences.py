import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from logcert.sequences import (
    RECURRENCES,
    S_FOUR_TERM,
    S_THREE_TERM,
    U_ORDER_THREE,
    U_ORDER_TWO,
    V_ORDER_THREE,
    CertificationError,
    Provenance,
    SequenceTable,
    binomial,
    build_table,
    check_guo_liu_identity,
    compute_f,
    compute_S,
    compute_u,
    dump_table,
    extend_by_recurrence,
    first_mismatch,
    first_nonzero_residual,
    quotients,
    recurrence_residual,
    u_table_from,
)


def oracle_S(n):
    return int(sum(sympy.binomial(n, k) ** 2 * sympy.binomial(2 * k, k) * (2 * k + 1) for k in range(n + 1)))


def oracle_f(n):
    total = sum(sympy.Rational(1, k + 1) * sympy.binomial(2 * k, k)
                * (6 * k * sympy.binomial(n, k) ** 2 + sympy.binomial(n, k) * sympy.binomial(n, k + 1))
                for k in range(n + 1))
    assert total.is_integer
    return int(total)


def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert binomial(6, 3) == 20
    assert binomial(2, 3) == 0
    assert binomial(5, -1) == 0


@given(st.integers(0, 80), st.integers(-3, 85))
def test_binomial_matches_sympy(n, k):
    assert binomial(n, k) == int(sympy.binomial(n, k)) if 0 <= k <= n else binomial(n, k) == 0


def test_S_anchor_values():
    assert [compute_S(n) for n in range(4)] == [1, 7, 55, 465]
    assert compute_S(3) == 1 + 54 + 270 + 140 == 93 * 5


def test_f_anchor_values():
    assert [compute_f(n) for n in range(3)] == [0, 7, 52]
    assert compute_f(2) == 2 + 26 + 24


@pytest.mark.parametrize("n", [0, 1, 2, 5, 17, 40, 111])
def test_direct_sums_match_sympy(n):
    assert compute_S(n) == oracle_S(n)
    assert compute_f(n) == oracle_f(n)
    assert compute_u(n) == 4 * n * oracle_S(n)


def test_guo_liu_examples():
    assert 4 * 1 * 7 == 4 * 7 - 1 * 0
    assert 4 * 2 * 55 == 9 * 52 - 4 * 7
    assert all(check_guo_liu_identity(n) for n in range(0, 120))


def test_f_is_integral_over_range():
    table = build_table("f", 300)
    assert all(isinstance(v, int) for _, v in table.items())


def test_positive_and_increasing(S_table):
    vals = [S_table[n] for n in range(S_table.lo, S_table.hi + 1)]
    assert vals[0] >= 1
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_residual_examples(S_table):
    assert 84 * 55 - 759 * 7 + 693 * 1 == 0
    assert recurrence_residual(S_THREE_TERM, S_table, 1) == 0
    assert 9 * 1 - 87 * 7 + 3 * 29 * 55 - 9 * 465 == 0
    assert recurrence_residual(S_FOUR_TERM, S_table, 0) == 0
    u = u_table_from(S_table)
    assert recurrence_residual(V_ORDER_THREE, u, 1) == 0


def test_all_residuals_vanish(S_table):
    u = u_table_from(S_table)
    assert first_nonzero_residual(S_FOUR_TERM, S_table, 0, 497) is None
    assert first_nonzero_residual(S_THREE_TERM, S_table, 1, 499) is None
    for rec in (U_ORDER_THREE, V_ORDER_THREE):
        assert first_nonzero_residual(rec, u, 1, 497) is None
    assert first_nonzero_residual(U_ORDER_TWO, u, 1, 498) is None


def test_residual_domain_and_missing_indices(S_table):
    u = u_table_from(S_table)
    with pytest.raises(ValueError):
        recurrence_residual(V_ORDER_THREE, u, 0)
    short = SequenceTable.from_values("S", [1, 7, 55])
    with pytest.raises(IndexError):
        recurrence_residual(S_FOUR_TERM, short, 0)


def test_extend_examples():
    initials = SequenceTable.from_values("S", [7, 55], start=1)
    out = extend_by_recurrence(S_THREE_TERM, initials, 3)
    assert out[3] == 465 and out.provenance[3] is Provenance.RECURRENCE
    assert out.provenance[1] is Provenance.DIRECT_SUM
    assert extend_by_recurrence(S_THREE_TERM, initials, 2) is initials


def test_extend_from_corrupted_value_is_caught(S_table):
    corrupted = SequenceTable.from_values("S", [7, 56], start=1)
    try:
        out = extend_by_recurrence(S_THREE_TERM, corrupted, 3)
    except CertificationError as exc:
        assert exc.index == 3
    else:
        assert first_mismatch(out, S_table) == 2


def test_route_equivalence(S_table):
    initials = SequenceTable.from_values("S", [S_table[1], S_table[2]], start=1)
    unrolled = extend_by_recurrence(S_THREE_TERM, initials, 500)
    assert first_mismatch(unrolled, S_table) is None
    four = extend_by_recurrence(S_FOUR_TERM, SequenceTable.from_values("S", [1, 7, 55]), 300)
    assert first_mismatch(four, S_table) is None


@given(st.integers(3, 200))
@settings(max_examples=20, deadline=None)
def test_route_equivalence_random_index(n):
    initials = SequenceTable.from_values("S", [7, 55], start=1)
    assert extend_by_recurrence(S_THREE_TERM, initials, n)[n] == compute_S(n)


def test_quotients_examples(S_table, S_quotients):
    assert S_quotients[1] == 7
    assert S_quotients[2] == Fraction(55, 7)
    const = quotients(SequenceTable.from_values("c", [3] * 6))
    assert all(const[k] == 1 for k in range(1, 6))
    with pytest.raises(IndexError):
        S_quotients[0]


def test_nonpositive_table_rejected():
    with pytest.raises(ValueError):
        quotients(SequenceTable.from_values("z", [1, 0, 2]))


def test_table_dumps():
    table = build_table("S", 3)
    assert table.to_csv() == "n,value\n0,1\n1,7\n2,55\n3,465\n"
    data = json.loads(dump_table(table, "json"))
    assert data["values"][3] == {"n": 3, "value": "465", "provenance": "DirectSum"}
    assert dump_table(build_table("f", 2), "text") == "f_0 = 0\nf_1 = 7\nf_2 = 52\n"
    injected = table.with_value(2, 56)
    assert injected.provenance[2] is Provenance.INJECTED and table[2] == 55
    with pytest.raises(ValueError):
        dump_table(table, "xml")
    with pytest.raises(ValueError):
        build_table("S", 3, 5)


def test_recurrence_registry():
    assert set(RECURRENCES) == {"S four-term", "S three-term", "u order-3", "v order-3", "u order-2"}
    assert S_THREE_TERM.order == 2 and list(S_THREE_TERM.indices(1)) == [0, 1, 2]
    assert S_FOUR_TERM.to_json()["coeffs"][0] == ["9/1", "18/1", "9/1"]
