"""Tests for graph and coloring files."""

import json

import pytest

from ttone.generators import generate, k4e_bundle, wheel_bundle
from ttone.types import Labeling
from utils.graph_io import (
    GraphFileError,
    dumps_coloring,
    dumps_graph,
    parse_coloring,
    parse_graph,
    read_coloring,
    read_graph,
    write_coloring,
    write_graph,
)


def test_graph_file_layout():
    text = dumps_graph(generate("k4e"))
    lines = text.splitlines()
    assert lines[0] == "{" and lines[-1] == "}"
    assert lines[1] == '  "n": 4,'
    assert lines[2] == '  "edges": [[0, 1], [0, 2], [1, 2], [1, 3], [2, 3]],'
    assert lines[3] == '  "outer_order": [0, 1, 3, 2],'
    assert lines[4].startswith('  "metadata": {"family": "k4e"')
    assert json.loads(text)["n"] == 4


def test_graph_round_trip(tmp_path):
    bundle = generate("halin", {"n": 14, "d": 4}, seed=9)
    path = tmp_path / "graphs" / "halin.json"
    write_graph(bundle, path)
    loaded = read_graph(path)
    assert loaded.graph == bundle.graph
    assert loaded.tree_edges == bundle.tree_edges
    assert loaded.leaf_order == bundle.leaf_order
    assert loaded.provenance["seed"] == 9
    assert dumps_graph(loaded) == path.read_text(encoding="utf-8")


def test_wheel_certificate_is_checked():
    data = json.loads(dumps_graph(wheel_bundle(5)))
    data["leaf_order"] = [1, 3, 2, 4, 5]
    with pytest.raises(GraphFileError, match="invalid certificate"):
        parse_graph(data)


def test_bad_outer_order_is_rejected():
    data = json.loads(dumps_graph(k4e_bundle()))
    data["outer_order"] = [0, 3, 1, 2]
    with pytest.raises(GraphFileError, match="invalid certificate"):
        parse_graph(data)


@pytest.mark.parametrize(
    "data, message",
    [
        ({"n": 3, "edges": [[0, 1]], "colour": 1}, "unknown graph file fields"),
        ({"n": "3", "edges": []}, "'n' must be an integer"),
        ({"n": 3}, "missing field 'edges'"),
        ({"n": 3, "edges": [[0, 1, 2]]}, "not a pair"),
        ({"n": 3, "edges": [[0, 0]]}, "invalid graph"),
        ({"n": 3, "edges": [[0, 1], [1, 0]]}, "invalid graph"),
        ({"n": 3, "edges": [[0, 5]]}, "invalid graph"),
        ({"n": 3, "edges": [], "leaf_order": [0, 1, 2]}, "together"),
        ({"n": 3, "edges": [], "outer_order": ["a"]}, "list of integers"),
    ],
)
def test_malformed_graph_documents(data, message):
    with pytest.raises(GraphFileError, match=message):
        parse_graph(data)


def test_unreadable_files(tmp_path):
    with pytest.raises(GraphFileError, match="Failed to load"):
        read_graph(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json", encoding="utf-8")
    with pytest.raises(GraphFileError):
        read_graph(broken)
    listed = tmp_path / "list.json"
    listed.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(GraphFileError, match="JSON object"):
        read_graph(listed)


def test_coloring_file_has_one_label_per_line():
    coloring = Labeling(t=2, k=5, labels={1: (3, 4), 0: (2, 1)})
    lines = dumps_coloring(coloring).splitlines()
    assert lines[1:4] == ['  "t": 2,', '  "k": 5,', '  "labels": {']
    assert lines[4:6] == ['    "0": [1, 2],', '    "1": [3, 4]']


def test_coloring_round_trip(tmp_path):
    coloring = Labeling(t=3, k=11, labels={0: (1, 2, 3), 1: (4, 5, 6), 2: (7, 8, 9)})
    path = tmp_path / "c.json"
    write_coloring(coloring, path)
    assert read_coloring(path) == coloring
    empty = Labeling(t=2, k=4)
    assert parse_coloring(json.loads(dumps_coloring(empty))) == empty


@pytest.mark.parametrize(
    "data, message",
    [
        ({"t": 2, "k": 5, "labels": {}, "extra": 0}, "unknown coloring file fields"),
        ({"t": 2, "labels": {}}, "must be integers"),
        ({"t": 2, "k": 5, "labels": [[1, 2]]}, "must map vertex ids"),
        ({"t": 2, "k": 5, "labels": {"0": [1, 9]}}, "invalid labeling"),
        ({"t": 2, "k": 5, "labels": {"0": [1, 1]}}, "invalid labeling"),
        ({"t": 2, "k": 5, "labels": {"x": [1, 2]}}, "invalid labeling"),
    ],
)
def test_malformed_coloring_documents(data, message):
    with pytest.raises(GraphFileError, match=message):
        parse_coloring(data)
