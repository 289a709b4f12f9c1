"""End-to-end tests for the command-line runner and its exit codes."""

import csv
import io
import json

import pytest

from runner import EXIT_BUDGET, EXIT_FAILED, EXIT_MALFORMED, EXIT_OK, main, parse_range
from ttone.config import Settings
from ttone.graph import verify
from ttone.types import Labeling, Mode
from utils.graph_io import read_coloring, read_graph, write_coloring
from utils.step_logger import StepLogger


@pytest.fixture(autouse=True)
def quiet_environment(monkeypatch):
    monkeypatch.setenv("ENABLE_STEP_LOGGING", "false")
    monkeypatch.delenv("TTONE_MAX_NODES", raising=False)


def _generate(tmp_path, *args):
    out = tmp_path / "graph.json"
    assert main(["generate", *args, "--out", str(out)]) == EXIT_OK
    return out


def _last_line(capsys):
    return capsys.readouterr().out.strip().splitlines()[-1]


def test_parse_range():
    assert parse_range("3..12") == (3, 12)
    with pytest.raises(ValueError):
        parse_range("3-12")
    with pytest.raises(ValueError):
        parse_range("9..3")


def test_generate_writes_a_graph_file(tmp_path):
    out = _generate(tmp_path, "--family", "outerplanar", "--n", "12", "--seed", "4")
    bundle = read_graph(out)
    assert bundle.graph.n == 12
    assert bundle.provenance["seed"] == 4


def test_generate_needs_a_seed_for_random_families(tmp_path):
    assert main(["generate", "--family", "halin", "--n", "10", "--d", "4", "--out", str(tmp_path / "x.json")]) == EXIT_MALFORMED


def test_malformed_command_lines(tmp_path):
    assert main(["paint"]) == EXIT_MALFORMED
    assert main(["exact", "--t", "2"]) == EXIT_MALFORMED
    assert main(["exact", "--t", "2", "--in", str(tmp_path / "missing.json")]) == EXIT_MALFORMED


def test_color_auto_and_self_check(tmp_path, capsys):
    graph = _generate(tmp_path, "--family", "k4e")
    out = tmp_path / "coloring.json"
    assert main(["color", "--t", "2", "--method", "auto", "--in", str(graph), "--out", str(out)]) == EXIT_OK
    assert _last_line(capsys) == "7"
    assert verify(read_graph(graph).graph, read_coloring(out)).valid


def test_color_without_an_outer_order(tmp_path, capsys):
    path = tmp_path / "c6.json"
    path.write_text(json.dumps({"n": 6, "edges": [[i, (i + 1) % 6] for i in range(6)]}), encoding="utf-8")
    out = tmp_path / "coloring.json"
    assert main(["color", "--t", "2", "--method", "good6", "--in", str(path), "--out", str(out)]) == EXIT_OK
    assert verify(read_graph(path).graph, read_coloring(out), Mode.GOOD).valid


def test_color_precondition_failures(tmp_path):
    graph = _generate(tmp_path, "--family", "k4e")
    out = str(tmp_path / "coloring.json")
    assert main(["color", "--t", "2", "--method", "good6", "--in", str(graph), "--out", out]) == EXIT_FAILED
    assert main(["color", "--t", "2", "--method", "halin7", "--in", str(graph), "--out", out]) == EXIT_FAILED
    assert main(["color", "--t", "3", "--method", "auto", "--in", str(graph), "--out", out]) == EXIT_MALFORMED
    complete = _generate(tmp_path, "--family", "complete", "--n", "4")
    assert main(["color", "--t", "2", "--method", "auto", "--in", str(complete), "--out", out]) == EXIT_FAILED


def test_color_halin_methods(tmp_path, capsys):
    graph = _generate(tmp_path, "--family", "cubicHalin", "--n", "20", "--seed", "2")
    out = tmp_path / "coloring.json"
    assert main(["color", "--t", "2", "--method", "halin7", "--in", str(graph), "--out", str(out)]) == EXIT_OK
    assert _last_line(capsys) == "7"
    wheel = _generate(tmp_path, "--family", "wheel", "--d", "12")
    assert main(["color", "--t", "2", "--method", "halin", "--in", str(wheel), "--out", str(out)]) == EXIT_OK
    assert _last_line(capsys) == "11"


def test_exact_prints_the_value_and_writes_a_witness(tmp_path, capsys):
    graph = _generate(tmp_path, "--family", "cycle", "--n", "7")
    witness = tmp_path / "witness.json"
    assert main(["exact", "--t", "2", "--in", str(graph), "--out", str(witness)]) == EXIT_OK
    assert _last_line(capsys) == "6"
    assert read_coloring(witness).k == 6


def test_exact_writes_the_witness_next_to_the_input(tmp_path, capsys):
    graph = _generate(tmp_path, "--family", "k4e")
    assert main(["exact", "--t", "2", "--in", str(graph)]) == EXIT_OK
    assert _last_line(capsys) == "7"
    witness = read_coloring(tmp_path / "graph.witness.json")
    assert witness.k == 7
    assert verify(read_graph(graph).graph, witness).valid


def test_exact_budget_exhaustion(tmp_path):
    graph = _generate(tmp_path, "--family", "complete", "--n", "4")
    assert main(["exact", "--t", "2", "--in", str(graph), "--max-nodes", "10"]) == EXIT_BUDGET


def test_exact_rejects_bad_label_sizes(tmp_path):
    """Label sizes the mode cannot use are malformed parameters, not failed searches."""

    graph = str(_generate(tmp_path, "--family", "cycle", "--n", "5"))
    assert main(["exact", "--t", "0", "--in", graph]) == EXIT_MALFORMED
    assert main(["exact", "--t", "3", "--mode", "good", "--in", graph]) == EXIT_MALFORMED
    assert main(["exact", "--t", "2", "--mode", "3-good", "--in", graph]) == EXIT_MALFORMED
    assert main(["verify", "--t", "0", "--mode", "tone", "--graph", graph, "--coloring", graph]) == EXIT_MALFORMED
    assert not (tmp_path / "graph.witness.json").exists()


def test_verify_valid_and_invalid(tmp_path, capsys):
    graph = _generate(tmp_path, "--family", "cycle", "--n", "5")
    good = tmp_path / "good.json"
    write_coloring(Labeling(t=2, k=5, labels={0: (1, 2), 1: (3, 4), 2: (1, 5), 3: (2, 3), 4: (4, 5)}), good)
    assert main(["verify", "--t", "2", "--mode", "tone", "--graph", str(graph), "--coloring", str(good)]) == EXIT_OK
    assert _last_line(capsys).startswith("valid")

    bad = tmp_path / "bad.json"
    write_coloring(Labeling(t=2, k=5, labels={v: (1, 2) for v in range(5)}), bad)
    code = main(["verify", "--t", "2", "--mode", "tone", "--graph", str(graph), "--coloring", str(bad), "--show", "1"])
    assert code == EXIT_FAILED
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("invalid: ")
    assert len(lines) == 2
    assert main(["verify", "--t", "3", "--mode", "tone", "--graph", str(graph), "--coloring", str(good)]) == EXIT_MALFORMED


def test_verify_good_coloring_of_c4(tmp_path, capsys):
    graph = _generate(tmp_path, "--family", "cycle", "--n", "4")
    coloring = tmp_path / "c4good.json"
    write_coloring(Labeling(t=2, k=6, labels={0: (1, 2), 1: (3, 4), 2: (1, 5), 3: (3, 6)}), coloring)
    assert main(["verify", "--t", "2", "--mode", "good", "--graph", str(graph), "--coloring", str(coloring)]) == EXIT_OK
    assert _last_line(capsys) == "valid (2-labels over 1..6)"


def test_verify_partial_coloring_is_malformed(tmp_path):
    graph = _generate(tmp_path, "--family", "cycle", "--n", "5")
    partial = tmp_path / "partial.json"
    write_coloring(Labeling(t=2, k=5, labels={0: (1, 2)}), partial)
    assert main(["verify", "--t", "2", "--mode", "tone", "--graph", str(graph), "--coloring", str(partial)]) == EXIT_MALFORMED


def test_classify(tmp_path, capsys):
    graph = _generate(tmp_path, "--family", "k4e")
    capsys.readouterr()
    assert main(["classify", "--in", str(graph)]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "7"
    assert lines[1].startswith("witness K4-e:")
    wheel = _generate(tmp_path, "--family", "wheel", "--d", "4")
    assert main(["classify", "--in", str(wheel)]) == EXIT_FAILED


def test_table_csv(tmp_path):
    out = tmp_path / "cycles.csv"
    assert main(["table", "--name", "cycles", "--range", "3..8", "--out", str(out)]) == EXIT_OK
    rows = list(csv.reader(io.StringIO(out.read_text(encoding="utf-8"))))
    assert rows[0] == ["n", "exact", "formula", "match"]
    assert [row[1] for row in rows[1:]] == ["6", "6", "5", "5", "6", "5"]
    assert all(row[3] == "true" for row in rows[1:])
    assert main(["table", "--name", "wheels", "--range", "2..4"]) == EXIT_MALFORMED


def test_scan_writes_a_report(tmp_path, capsys):
    report = tmp_path / "scan.csv"
    code = main(["scan", "--conjecture", "halin6", "--max-n", "8", "--seed", "0", "--report", str(report), "--workers", "2"])
    assert code == EXIT_OK
    assert "SCAN SUMMARY" in capsys.readouterr().out
    rows = list(csv.reader(io.StringIO(report.read_text(encoding="utf-8"))))
    assert rows[0][:3] == ["instance_id", "n", "tau2"]
    assert len(rows) > 1


def test_scan_needs_a_seed(tmp_path):
    assert main(["scan", "--conjecture", "tone-step", "--max-n", "5", "--report", str(tmp_path / "r.csv")]) == EXIT_MALFORMED


def test_export_dot(tmp_path):
    graph = _generate(tmp_path, "--family", "wheel", "--d", "5")
    coloring = tmp_path / "coloring.json"
    assert main(["color", "--t", "2", "--method", "halin", "--in", str(graph), "--out", str(coloring)]) == EXIT_OK
    out = tmp_path / "wheel.dot"
    assert main(["export", "--dot", "--in", str(graph), "--coloring", str(coloring), "--out", str(out)]) == EXIT_OK
    text = out.read_text(encoding="utf-8")
    assert text.startswith("graph G {")
    assert "1 -- 2 [style=dashed];" in text
    assert "0 -- 1;" in text
    assert "0 [label=\"0\\n12\"];" in text


def test_step_logger_writes_steps(tmp_path):
    logger = StepLogger("unit", enabled=True, log_dir=tmp_path)
    logger.log_step("first", {"n": 3}, {"k": 5}, {"removed": 1})
    logger.log_step_start("second", {"n": 4})
    logger.log_terminal_output("working")
    logger.log_step_complete({"k": 6})
    logger.log_final_output({"k": 6, "labels": [1, 2]})

    step_dirs = sorted(p.name for p in logger.base_dir.iterdir() if p.name.startswith("step_"))
    assert step_dirs == ["step_01_first", "step_02_second"]
    second = logger.base_dir / "step_02_second"
    assert json.loads((second / "output.json").read_text(encoding="utf-8")) == {"k": 6}
    assert (second / "terminal_output.txt").read_text(encoding="utf-8") == "working\n"
    assert '"k": 6' in (second / "diff_from_previous.txt").read_text(encoding="utf-8")
    assert "removed: 1" in (logger.base_dir / "step_01_first" / "summary.md").read_text(encoding="utf-8")
    summary = (logger.base_dir / "final_output" / "summary.md").read_text(encoding="utf-8")
    assert "Steps logged: 2" in summary
    assert "- k: 6" in summary and "labels" not in summary


def test_disabled_step_logger_writes_nothing(tmp_path):
    logger = StepLogger("unit", enabled=False, log_dir=tmp_path)
    logger.log_step("first", {}, {})
    logger.log_final_output({})
    assert logger.base_dir is None
    assert list(tmp_path.iterdir()) == []


def test_step_logger_follows_settings(tmp_path):
    logger = StepLogger.from_settings("unit", Settings(step_logging=True, log_dir=tmp_path / "logs"))
    assert logger.enabled
    assert logger.base_dir.parent.parent == tmp_path / "logs"
    assert StepLogger.from_settings("unit", Settings(log_dir=tmp_path / "off")).base_dir is None
    assert not (tmp_path / "off").exists()


def test_color_run_logs_each_reduction(tmp_path, monkeypatch):
    graph = _generate(tmp_path, "--family", "k4e")
    monkeypatch.setenv("ENABLE_STEP_LOGGING", "true")
    monkeypatch.setenv("TTONE_LOG_DIR", str(tmp_path / "logs"))
    assert main(["color", "--t", "2", "--method", "auto", "--in", str(graph), "--out", str(tmp_path / "c.json")]) == EXIT_OK
    (run_dir,) = (tmp_path / "logs" / "color_auto").iterdir()
    steps = sorted(p for p in run_dir.iterdir() if p.name.startswith("step_"))
    assert steps
    assert "removed" in (steps[0] / "terminal_output.txt").read_text(encoding="utf-8")
    assert (run_dir / "final_output" / "final.json").exists()
