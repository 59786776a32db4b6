#!/usr/bin/env python3
"""
Tests for lrx_verifier: row bookkeeping, the four verification scopes and
JSON/CSV report output.
"""

import csv
import io
import json
import sys

import pytest

from lrx_bfs_engine import DistanceOracle
from lrx_perm_core import InvalidDegreeError, LRXError
from lrx_verifier import (
    ROW_FIELDS,
    VerificationReport,
    VerificationRow,
    load_report,
    render_report,
    report_from_dict,
    verify_bound,
    verify_decompositions,
    verify_lemma,
    verify_theorem,
    write_report,
)


@pytest.fixture(scope="module")
def oracle():
    return DistanceOracle(threads=2)


def find_row(rep, n, **params):
    return next(r for r in rep.rows
                if r.n == n and all(r.params.get(k) == v for k, v in params.items()))


def test_row_pass_rules():
    ok = VerificationRow(5, {"j": 3}, 5, 5, True, 5, True)
    below = VerificationRow(5, {"j": 3}, 5, 5, True, 4, False)
    over = VerificationRow(5, {"j": 3}, 5, 5, True, 6, False)
    invalid = VerificationRow(5, {"j": 3}, 5, 0, False)
    short_diameter = VerificationRow(4, {"diameter": 5}, 6, 6, True, 6, True)
    assert ok.passed and below.passed
    assert not over.passed and not invalid.passed and not short_diameter.passed

    rep = VerificationReport("lemma", (3, 5), [ok, below, over, invalid])
    assert rep.summary == {"pass": 2, "fail": 2, "oracle_skipped": 1, "discrepancies": [1, 2]}
    assert not rep.ok and not rep.faithful


def test_decompositions_pass_up_to_five():
    rep = verify_decompositions(5)
    assert rep.summary["fail"] == 0
    assert rep.summary["oracle_skipped"] == len(rep.rows)
    # 2 schemes for each pair at n = 3, 4, 5
    assert len(rep.rows) == 2 * (3 + 6 + 10)
    row = find_row(rep, 5, k=1, l=3, scheme="A")
    assert row.builder_len == row.formula == 5 and row.builder_valid
    assert find_row(rep, 4, k=2, l=3, scheme="B").builder_len == 1


def test_decompositions_with_oracle(oracle):
    rep = verify_decompositions(4, with_oracle=True, oracle=oracle)
    assert rep.ok
    assert all(r.oracle is not None and r.oracle <= r.builder_len for r in rep.rows)
    assert all(r.oracle == 1 for r in rep.rows if r.formula == 1)


def test_decompositions_degree_range():
    with pytest.raises(InvalidDegreeError):
        verify_decompositions(2)
    with pytest.raises(InvalidDegreeError):
        verify_decompositions(13)


def test_lemma_report_rows_and_counts():
    rep = verify_lemma(5)
    assert len(rep.rows) == sum(4 * ((n + 1) // 2 - 1) for n in range(3, 6)) == 16
    assert rep.ok
    assert len([r for r in rep.rows if r.n == 3]) == 4
    row = find_row(rep, 5, j=3, variant="I")
    assert row.formula == row.builder_len == 5


def test_lemma_report_with_oracle(oracle):
    rep = verify_lemma(6, with_oracle=True, oracle=oracle)
    assert rep.ok
    row = find_row(rep, 5, j=2, variant="I")
    assert (row.formula, row.builder_len, row.oracle, row.equal) == (1, 1, 1, True)
    assert find_row(rep, 5, j=3, variant="I").oracle is not None
    assert rep.summary["oracle_skipped"] == 0


def test_theorem_report(oracle):
    rep = verify_theorem(7, with_oracle=True, oracle=oracle)
    assert rep.ok
    row = find_row(rep, 6, i=2)
    assert row.formula == row.builder_len == 15
    row = find_row(rep, 4, i=4)
    assert row.formula == row.builder_len == 4 and row.builder_valid
    assert find_row(rep, 4, i=2).oracle == 6
    bound = find_row(rep, 4, check="lower_bound")
    assert bound.formula == 6 and bound.params["diameter"] >= 6
    # n + 1 rows per degree: one per i plus the bound check
    assert len(rep.rows) == sum(n + 1 for n in range(4, 8))


def test_closed_forms_match_exact_distances_up_to_eight(oracle):
    lemma = verify_lemma(8, with_oracle=True, oracle=oracle)
    theorem = verify_theorem(8, with_oracle=True, oracle=oracle)
    for rep in (lemma, theorem):
        assert rep.ok and rep.faithful
        assert rep.summary["oracle_skipped"] == 0
        assert all(r.equal for r in rep.rows)
    assert len(theorem.rows) == sum(n + 1 for n in range(4, 9))


def test_theorem_report_without_oracle_scales():
    rep = verify_theorem(20)
    assert rep.ok
    assert rep.summary["oracle_skipped"] == len(rep.rows)


def test_reports_past_the_permutation_degree_cap():
    rep = verify_theorem(66)
    assert rep.ok
    row = find_row(rep, 66, i=2)
    assert row.formula == row.builder_len == 66 * 65 // 2
    assert find_row(rep, 65, check="lower_bound").builder_valid
    lemma = verify_lemma(66)
    assert lemma.ok
    assert find_row(lemma, 66, j=33, variant="IV").builder_len == 33 * 32 - 1
    with pytest.raises(InvalidDegreeError):
        verify_theorem(10_001)


def test_bound_report(oracle):
    rep = verify_bound(6, with_oracle=True, oracle=oracle)
    assert rep.ok
    assert [r.formula for r in rep.rows] == [6, 10, 15]
    assert all(r.params["diameter"] >= r.formula for r in rep.rows)
    assert verify_bound(30).ok
    with pytest.raises(InvalidDegreeError):
        verify_bound(3)


def test_progress_callback_per_degree():
    messages = []
    verify_lemma(4, progress_callback=messages.append)
    assert messages == ["lemma at n=3", "lemma at n=4"]


def test_empty_report_is_valid_json():
    rep = VerificationReport("bound", (4, 4))
    data = json.loads(render_report(rep, "json"))
    assert data["rows"] == []
    assert data["summary"] == {"pass": 0, "fail": 0, "oracle_skipped": 0, "discrepancies": []}


def test_json_round_trip_and_determinism(tmp_path):
    rep = verify_lemma(5)
    path = tmp_path / "lemma.json"
    write_report(rep, "json", path)
    assert load_report(path) == rep
    assert render_report(verify_lemma(5), "json") == path.read_text(encoding="utf-8")
    assert list(json.loads(path.read_text())["rows"][0]) == list(ROW_FIELDS)


def test_json_envelope_carries_the_timestamp():
    rep = verify_bound(5)
    data = json.loads(render_report(rep, "json", envelope=True))
    assert "generated_at" in data
    assert report_from_dict(data) == rep


def test_csv_has_one_row_per_tuple(tmp_path):
    rep = verify_decompositions(4)
    path = tmp_path / "dec.csv"
    write_report(rep, "csv", path)
    rows = list(csv.reader(io.StringIO(path.read_text(encoding="utf-8"))))
    assert tuple(rows[0]) == ROW_FIELDS
    assert len(rows) == len(rep.rows) + 1
    assert json.loads(rows[1][1]) == rep.rows[0].params
    assert rows[1][4] == "true" and rows[1][5] == ""


def test_write_report_names_the_destination(tmp_path):
    target = tmp_path / "missing" / "report.json"
    with pytest.raises(OSError, match="report.json"):
        write_report(verify_bound(4), "json", target)


def test_malformed_report_is_rejected():
    with pytest.raises(LRXError):
        report_from_dict({"scope": "lemma", "rows": []})
    with pytest.raises(LRXError):
        render_report(VerificationReport("lemma", (3, 3)), "xml")


if __name__ == "__main__":
    print("🧪 Testing LRX verifier")
    print("=" * 40)
    code = pytest.main([__file__, "-q"])
    print("🎉 All verifier tests passed!" if code == 0 else "❌ Some verifier tests failed")
    sys.exit(code)
