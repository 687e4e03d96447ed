import json
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from logcert.claims import (
    REGISTRY,
    CertifyConfig,
    ConfigError,
    exit_code,
    render_report,
    run_claims,
)
from logcert.criteria import Verdict

SMALL = dict(values_to=80, ratio_to=60, root_to=60, root_exact_to=25)


def schema():
    return json.loads(resources.files("logcert").joinpath("report.schema.json").read_text())


@pytest.fixture(scope="module")
def small_report():
    return run_claims(CertifyConfig(**SMALL))


def test_registry_ids():
    assert list(REGISTRY) == [f"C{i}" for i in range(1, 13)]
    assert all(spec.description and spec.anchor for spec in REGISTRY.values())


def test_small_run_passes(small_report):
    assert small_report.overall is Verdict.PASS
    assert [r.spec.id for r in small_report.results] == [f"C{i}" for i in range(1, 13)]
    assert exit_code(small_report) == 0


def test_errata_are_recorded(small_report):
    found = {(e["claim"], e["check"], e["witness"]) for e in small_report.errata}
    assert ("C5", "lower_step_gap_positive", 2) in found
    assert ("C6", "L_above_X", 5) in found
    assert ("C6", "combination_positive", 1) in found


def test_filter_builds_no_tables():
    rep = run_claims(CertifyConfig(claims=("C11",)))
    assert [r.spec.id for r in rep.results] == ["C11"]
    assert rep.tables_built == []
    assert rep.overall is Verdict.PASS
    rep = run_claims(CertifyConfig(claims=("C12", "C11")))
    assert [r.spec.id for r in rep.results] == ["C11", "C12"]


def test_corruption_gives_minimal_witnesses():
    rep = run_claims(CertifyConfig(corrupt={2: 56}, claims=("C1", "C3"), **SMALL))
    c1, c3 = rep.result("C1"), rep.result("C3")
    assert c1.verdict is Verdict.FAIL and c1.report.witness == 0
    assert c3.verdict is Verdict.FAIL and c3.report.witness == 1
    assert exit_code(rep) == 1
    assert rep.to_dict()["config"]["corrupt"] == {"2": "56"}


def test_corruption_later_index():
    rep = run_claims(CertifyConfig(corrupt={40: 12345}, claims=("C1", "C3"), **SMALL))
    assert rep.result("C1").report.witness == 37   # four-term window n..n+3 first touches 40 at n=37
    c3 = rep.result("C3").report
    assert c3.witness == 37                        # order-3 recurrence on u uses n..n+3
    three_term = next(d for d in c3.details if d.criterion == "three_term_recurrence_S")
    assert three_term.witness == 39                # window n-1..n+1


def test_crashing_claim_is_recorded_not_raised():
    # a nonpositive value makes quotient tables impossible; every dependent claim fails on its own
    rep = run_claims(CertifyConfig(corrupt={3: -1}, **SMALL))
    assert rep.overall is Verdict.FAIL
    assert rep.result("C11").verdict is Verdict.PASS
    assert rep.result("C4").verdict is Verdict.FAIL


def test_json_is_deterministic_and_schema_valid(small_report):
    again = run_claims(CertifyConfig(**SMALL))
    a, b = render_report(small_report), render_report(again)
    assert a == b
    doc = json.loads(a)
    jsonschema.validate(doc, schema())
    assert doc["schema"] == "logcert-report/1" and doc["overall"] == "pass"
    assert "timings" not in doc
    timed = json.loads(render_report(small_report, include_timings=True))
    jsonschema.validate(timed, schema())
    assert set(timed["timings"]["claims"]) == set(REGISTRY)
    assert {k: v for k, v in timed.items() if k != "timings"} == doc


def test_fail_report_text_and_csv():
    rep = run_claims(CertifyConfig(corrupt={2: 56}, claims=("C1",), **SMALL))
    text = render_report(rep, "text")
    assert "FAIL" in text and "witness n = 0" in text and "lhs = " in text
    csv_text = render_report(rep, "csv")
    assert csv_text.splitlines()[0] == "claim,verdict,n_lo,n_hi,witness,description"
    assert csv_text.splitlines()[1].startswith("C1,fail,0,57,0,")
    jsonschema.validate(json.loads(render_report(rep)), schema())
    with pytest.raises(ValueError):
        render_report(rep, "yaml")


def test_indeterminate_exit_code(small_report):
    small_report.results[0].report.verdict = Verdict.INDETERMINATE
    try:
        assert exit_code(small_report) == 2
    finally:
        small_report.results[0].report.verdict = Verdict.PASS


@pytest.mark.parametrize("bad", [
    dict(precision=32), dict(precision=8192), dict(values_to=2), dict(ratio_to=1),
    dict(root_to=1), dict(claims=("C99",)), dict(threshold=Fraction(0)),
])
def test_config_validation(bad):
    with pytest.raises(ConfigError):
        run_claims(CertifyConfig(**bad))
