# tests/test_counting.py
import csv
import io
import json

import pytest

from spm.core.errors import UnknownVariantError
from spm.counting import (
    CSV_COLUMNS,
    c_printed,
    c_structural,
    count,
    p_recursion,
    p_table_oracle,
    path_count_tables,
    reconcile,
    spm_size_via_p,
    spm_size_via_tree,
    write_report_csv,
    write_report_json,
)


def test_oracle_table(oracle_tables):
    assert oracle_tables.spm_size[:8] == [1, 1, 2, 2, 4, 5, 6, 9]
    assert oracle_tables.p_at(1, 7) == 3
    assert oracle_tables.p_at(2, 7) == 1
    assert oracle_tables.p_at(3, 6) == 1
    assert oracle_tables.p_at(1, -1) == 0


def test_corrected_recursion_matches_oracle(oracle_tables):
    tables = p_recursion(25, "corrected")
    assert tables.p == oracle_tables.p
    assert tables.spm_size == oracle_tables.spm_size


def test_printed_theorem3_overcounts(oracle_tables):
    tables = p_recursion(10, "printed-theorem3")
    assert tables.p_at(1, 3) == 2
    assert oracle_tables.p_at(1, 3) == 1


def test_recursion_arguments():
    with pytest.raises(ValueError):
        p_recursion(1)
    with pytest.raises(UnknownVariantError):
        p_recursion(10, "guess")


def test_size_via_p(oracle_tables):
    assert [spm_size_via_p(n, oracle_tables) for n in range(8)] == [1, 1, 2, 2, 4, 5, 6, 9]


def test_path_count_recurrences():
    assert [c_structural(l, 2) for l in range(1, 7)] == [2, 2, 3, 3, 4, 4]
    assert c_structural(2, 3) == 4
    assert c_structural(3, 3) == 5
    assert c_structural(0, 5) == 1
    assert c_structural(3, 0) == 0
    assert c_printed(3, 2) == 4
    assert c_printed(1, 3) == 3
    assert c_printed(0, 3) == c_printed(3, 0) == 0


def test_path_count_tables():
    structural = path_count_tables(6, 3)
    assert structural.variant == "structural-c"
    assert [structural.c[(l, 2)] for l in range(1, 7)] == [2, 2, 3, 3, 4, 4]
    assert structural.c[(3, 3)] == 5
    assert len(structural.c) == len(structural.d) == 18
    assert all(structural.d[(0, k)] == 1 for k in range(1, 4))
    assert all(
        structural.c[(l, k)] == sum(structural.d[(l - 1, i)] for i in range(1, k + 1))
        for l, k in structural.c
    )
    printed = path_count_tables(4, 2, "printed-c")
    assert printed.c[(3, 2)] == 4
    assert printed.d == {}
    with pytest.raises(UnknownVariantError):
        path_count_tables(3, 3, "printed")


def test_size_via_tree(oracle_tables):
    assert [spm_size_via_tree(n) for n in range(26)] == oracle_tables.spm_size
    assert spm_size_via_tree(4, "printed", "printed-c") == 7
    with pytest.raises(UnknownVariantError):
        spm_size_via_tree(4, "sideways")
    with pytest.raises(UnknownVariantError):
        spm_size_via_tree(4, c_variant="printed")


@pytest.mark.parametrize("method", ["bfs", "incremental", "p-rec", "tree"])
def test_count_methods_agree(method):
    assert count(7, method) == 9
    assert count(0, method) == 1


def test_count_rejects_bad_input():
    with pytest.raises(ValueError):
        count(-1)
    with pytest.raises(UnknownVariantError):
        count(5, "tree", "corrected")
    with pytest.raises(UnknownVariantError):
        count(5, "magic")


@pytest.fixture(scope="module")
def report():
    return reconcile(8, max_l=5, max_k=3, gp_max_n=12)


def test_reconcile_row_order(report):
    formulas = list(dict.fromkeys(r.formula for r in report.rows))
    assert formulas == ["p", "c", "spm-size-via-p", "spm-size-via-tree", "generating-count", "theorem3"]
    assert len(report.notes) == 3


def test_reconcile_corrected_variants_match(report):
    assert report.mismatches("p", "corrected") == []
    assert report.mismatches("c", "structural-c") == []
    assert report.mismatches("spm-size-via-p", "oracle") == []
    assert report.mismatches("spm-size-via-tree", "structural/structural-c") == []


def test_reconcile_reports_printed_discrepancies(report):
    assert any(r.args == "i=1,n=3" for r in report.mismatches("p", "printed-theorem3"))
    assert any(r.args == "l=3,k=2" for r in report.mismatches("c", "printed-c"))
    assert next(r for r in report.mismatches("c", "printed-c") if r.args == "l=3,k=2").formula_value == 4
    theorem3 = {r.args: r for r in report.rows if r.formula == "theorem3"}
    assert theorem3["i=1,n=6"].status == "multiset-mismatch"
    assert theorem3["i=1,n=6"].formula_value == 2
    assert theorem3["i=1,n=6"].oracle_value == 1


def test_reconcile_generating_rows(report):
    rows = {(r.variant, r.args): r for r in report.rows if r.formula == "generating-count"}
    assert len(rows) == 2 * (12 - 4 + 1)
    assert rows[("sum", "n=10")].status == "match"
    assert rows[("product", "n=10")].formula_value == -3


def test_report_writers(report):
    buf = io.StringIO()
    write_report_csv(report, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == len(report.rows) + 1
    first = next(csv.DictReader(io.StringIO(buf.getvalue())))
    assert first["formula"] == "p" and first["status"] in ("match", "mismatch")

    buf = io.StringIO()
    write_report_json(report, buf)
    assert buf.getvalue().endswith("\n")
    assert len(json.loads(buf.getvalue())["rows"]) == len(report.rows)


def test_worked_counting_examples(oracle_tables):
    assert oracle_tables.p_at(1, 4) == 1
    assert oracle_tables.p_at(2, 6) == 1
    assert p_recursion(10, "corrected").p_at(3, 6) == 1
    assert c_printed(5, 1) == 1
    assert all(c_printed(1, k) == c_structural(1, k) == k for k in range(1, 11))
    assert spm_size_via_tree(7) == 9
    assert spm_size_via_tree(4) == 4
