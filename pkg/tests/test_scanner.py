"""Tests for the conjecture scanners."""

import pytest

from ttone.generators import enumerate_subcubic_outerplanar
from ttone.scanner import ScanReport, ScanRow, _instances, scan_conjecture
from ttone.types import SearchBudget


def test_halin6_scan_on_enumerated_graphs():
    report = scan_conjecture("halin6", max_n=8, workers=2)
    assert report.rows
    assert [row.instance_id for row in report.rows] == sorted(row.instance_id for row in report.rows)
    for row in report.rows:
        assert row.status == "ok"
        assert row.taus[2] <= 7
        assert row.candidate == (row.taus[2] == 7)
        assert bool(row.edges) == row.candidate


def test_tone_step_scan_on_tiny_graphs():
    report = scan_conjecture("toneStep", max_n=4, workers=2)
    assert len(report.rows) == len(enumerate_subcubic_outerplanar(4))
    for row in report.rows:
        assert row.status == "ok"
        assert row.taus[3] >= row.taus[2]
        assert row.holds == (row.taus[3] <= row.taus[2] + 4)


def test_scan_rejects_bad_arguments():
    with pytest.raises(ValueError, match="unknown conjecture"):
        scan_conjecture("hadwiger", max_n=6)
    with pytest.raises(ValueError, match="t_max=4"):
        scan_conjecture("toneStep", max_n=6, t_max=4)


def test_exhausted_rows_are_reported_not_raised():
    report = scan_conjecture("halin6", max_n=6, budget=SearchBudget(max_nodes=1), workers=1)
    assert report.exhausted == list(report.rows)
    assert all(row.holds is None and not row.candidate for row in report.rows)


def test_on_row_sees_every_row():
    seen = []
    report = scan_conjecture("halin6", max_n=6, workers=3, on_row=seen.append)
    assert sorted(row.instance_id for row in seen) == [row.instance_id for row in report.rows]


def test_sampled_instances_are_seeded():
    first = _instances("halin6", 20, 3, seed=3)
    second = _instances("halin6", 20, 3, seed=3)
    sampled = [bundle for instance_id, bundle in first if instance_id.startswith("rand-")]
    assert len(sampled) == 3
    assert all(14 <= b.graph.n <= 20 and b.halin().is_cubic for b in sampled)
    assert [b.graph.edges for _, b in first] == [b.graph.edges for _, b in second]


def test_no_samples_below_the_enumeration_limit():
    instances = _instances("toneStep", 5, 10, seed=1)
    assert all(instance_id.startswith("enum-") for instance_id, _ in instances)


def test_csv_rows_layout():
    rows = (
        ScanRow("enum-0000", 6, {2: 6}, "ok", True),
        ScanRow("enum-0001", 8, {2: 7}, "ok", False, edges=((0, 1), (1, 2))),
        ScanRow("rand-0000", 30, {}, "budget-exhausted", None, note="budget"),
    )
    table = ScanReport("halin6", {}, rows).csv_rows()
    assert table[0] == ["instance_id", "n", "tau2", "status", "holds", "note", "edges"]
    assert table[1] == ["enum-0000", "6", "6", "ok", "true", "", ""]
    assert table[2][-1] == "0-1 1-2"
    assert table[3][2:5] == ["", "budget-exhausted", ""]
