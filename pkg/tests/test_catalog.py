import json

import pytest

from flagvar import catalog
from flagvar.catalog import (
    NamedExample,
    OracleGuardError,
    brute_force_submodules,
    classify_flag,
    classify_sweep,
    corpus,
    records_from_jsonl,
    records_to_csv,
    records_to_jsonl,
    records_to_table,
    verify_corpus,
)
from flagvar.parabolic import make_flag
from flagvar.rootsys import build_root_system


def test_brute_force_small():
    assert len(brute_force_submodules(make_flag(build_root_system("G2"), [1]))) == 4
    assert len(brute_force_submodules(make_flag(build_root_system("A1"), [1]))) == 2
    assert len(brute_force_submodules(make_flag(build_root_system("A2"), "all"))) == 5


def test_brute_force_guard():
    with pytest.raises(OracleGuardError):
        brute_force_submodules(make_flag(build_root_system("A6"), "all"))


def test_verify_passes():
    report = verify_corpus()
    assert report.ok, report.render()
    assert report.render().endswith(f"all {len(report.results)} expectations passed")
    provenances = {r.provenance for r in report.results}
    assert provenances <= {"source", "derived", "trivial"}


def test_verify_fault_injection():
    examples = corpus()
    g2 = examples[0]
    for e in g2.expectations:
        if e.label == "starred weight":
            e.expected = (8, 5)
    report = verify_corpus(examples)
    assert len(report.failures) == 1
    assert report.failures[0].label == "starred weight"
    assert report.failures[0].computed == (8, 4)


def test_verify_empty():
    report = verify_corpus([])
    assert report.ok and report.results == []


def test_verify_idempotent_and_order_independent():
    a = verify_corpus()
    b = verify_corpus(list(reversed(corpus())))
    key = lambda r: (r.example, r.label, r.passed)
    assert sorted(map(key, a.results)) == sorted(map(key, b.results))
    assert [key(r) for r in verify_corpus().results] == [key(r) for r in a.results]


def test_exceptions_become_failures():
    ex = NamedExample("broken", {}).expect("boom", "trivial", 1, lambda: 1 // 0)
    report = verify_corpus([ex])
    assert not report.ok
    assert "ZeroDivisionError" in report.failures[0].computed


def test_record_fields():
    rec = classify_flag(make_flag(build_root_system("G2"), [1]))
    d = rec.to_dict()
    assert d["schema"] == catalog.SCHEMA
    assert d["submodule_count"] == 4 == len(d["submodules"])
    star = [s for s in d["submodules"] if s["size"] == 3][0]
    assert star["weight"] == [8, 4]
    assert star["ratio"] == "4/5"
    assert star["nontrivial"] and not star["frobenius"] and not star["contact"]
    sys = build_root_system("G2")
    assert sorted(sys.positive[i] for i in star["members"]) == [(2, 1), (3, 1), (3, 2)]


def test_record_overflow_is_per_record():
    records = classify_sweep({"A": 4}, crossing="borel", series="A", cap=20)
    assert [r.submodule_count for r in records[:3]] == [2, 5, 14]
    assert records[3].submodule_count is None and "more than 20" in records[3].error


def test_sweep_maximal_rank4_all_semicanonical():
    for rec in classify_sweep(4, crossing="maximal"):
        assert rec.error is None
        assert all(s["ratio"] is not None for s in rec.submodules), rec.label


def test_sweep_rank2_borel_counts():
    recs = {r.label: r for r in classify_sweep(2, crossing="borel")}
    assert len(recs["A2/{1,2}"].nontrivial_semicanonical()) == 1
    assert len(recs["B2/{1,2}"].nontrivial_semicanonical()) == 0
    assert len(recs["G2/{1,2}"].nontrivial_semicanonical()) == 0


def test_single_flag_sweep_matches_enumeration():
    rec = classify_sweep({"G": 2}, crossing=lambda t, c: c == (1,), series="G")
    assert len(rec) == 1
    assert rec[0].to_dict() == classify_flag(make_flag(build_root_system("G2"), [1])).to_dict()


def test_sweep_order_and_types():
    specs = catalog.sweep_specs(4, "all")
    names = [f"{t}" for t, _ in specs]
    assert "C2" not in names and "D3" not in names
    assert names.index("A4") < names.index("B2") < names.index("G2")


def test_formats_round_trip():
    records = classify_sweep(2)
    text = records_to_jsonl(records)
    rows = records_from_jsonl(text)
    assert len(rows) == len(records)
    assert rows[0]["schema"] == catalog.SCHEMA
    assert json.loads(text.splitlines()[0]) == rows[0]
    assert records_to_jsonl(classify_sweep(2)) == text
    table = records_to_table(records)
    assert "G2/{1}" in table and table.splitlines()[1].startswith("---")
    csv_text = records_to_csv(records)
    assert csv_text.count("\n") == 1 + sum(r.submodule_count for r in records)
