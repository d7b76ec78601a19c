import json

import jsonschema
import pytest

from application.reports import (FAIL, PASS, REPORT_SCHEMA, CheckResult, build_report, compare, dump_report, merge,
                                 rmatrix_entry)
from application.rmatrix import check_quasi_cocommutativity


def test_paper_ref_comes_from_the_check_name():
    assert CheckResult("yang_baxter", PASS).paper_ref == "R12 R13 R23 = R23 R13 R12"
    assert CheckResult("coboundary:P_0", PASS).paper_ref.startswith("δ(a)")
    assert CheckResult("coboundary:P_0", PASS, paper_ref="own").paper_ref == "own"


def test_check_entry_keys():
    entry = build_report("verify", "uq_sl2", 1, {}, [CheckResult("yang_baxter", PASS)])["checks"][0]
    assert sorted(entry) == ["detail", "name", "paper_ref", "status"]
    assert entry["paper_ref"] == "R12 R13 R23 = R23 R13 R12"


def test_compare_and_merge(sl2_small):
    e = sl2_small.algebra.gen('E')
    exact = compare("counit:E", e - e)
    assert exact.passed
    assert exact.data == {"first_failing_order": None, "failing_term_count": 0}
    failing = compare("counit:F", e)
    assert failing.status == FAIL
    assert failing.data["first_failing_order"] == 0
    merged = merge("counit", [exact, failing])
    assert not merged.passed
    assert merged.data["failures"] == ["counit:F"]
    assert merge("counit", [exact]).detail == "1 identities hold"


def test_report_is_sorted_and_valid():
    results = [CheckResult("yang_baxter", PASS), CheckResult("antipode", FAIL, "broken")]
    report = build_report("verify", "uq_sl2", 2, {"xi": 0}, results)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert [c["name"] for c in report["checks"]] == ["antipode", "yang_baxter"]
    assert report["status"] == FAIL
    assert report["parameters"] == {"xi": "0"}
    assert build_report("verify", "uq_sl2", None, {}, results[:1])["status"] == PASS


def test_invalid_status_is_rejected():
    with pytest.raises(jsonschema.ValidationError):
        build_report("verify", "uq_sl2", 2, {}, [CheckResult("antipode", "unknown")])


def test_rmatrix_records(sl2_rmatrix):
    result = check_quasi_cocommutativity(sl2_rmatrix)
    entry = rmatrix_entry(result.name, "uq_sl2", sl2_rmatrix.order, None, result)
    assert entry == {
        "check": "quasi_cocommutativity", "algebra": "uq_sl2", "order": 4, "xi": None, "status": PASS,
        "first_failing_order": None, "failing_term_count": 0,
    }


def test_dump_report(tmp_path):
    report = build_report("classical", "iso(3)", None, {"dimension": 3}, [CheckResult("cybe", PASS)])
    path = tmp_path / "report.json"
    text = dump_report(report, str(path))
    assert json.loads(path.read_text()) == report
    assert json.loads(text) == report
