"""
Readers and writers for graph files and coloring files.

Both formats are JSON objects written one top-level field per line in a fixed order,
so regenerated files diff cleanly:

    {
      "n": 4,
      "edges": [[0, 1], [0, 2], [1, 2], [1, 3], [2, 3]],
      "outer_order": [0, 1, 3, 2],
      "metadata": {"family": "k4e", "params": {}, "seed": null}
    }

A coloring file lists one vertex label per line under ``labels``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from ttone.generators import GraphBundle
from ttone.plane import EmbeddingError, HalinError, validate_halin, validate_outerplane
from ttone.types import Graph, GraphError, Labeling, LabelingError

GRAPH_FIELDS = ("n", "edges", "outer_order", "tree_edges", "leaf_order", "metadata")
COLORING_FIELDS = ("t", "k", "labels")


class GraphFileError(RuntimeError):
    """Raised when a graph or coloring file cannot be read, parsed or written."""


def _compact(value: Any) -> str:
    return json.dumps(value, ensure_ascii=False, default=int)


def _render(fields: Sequence[Tuple[str, str]]) -> str:
    body = ",\n".join(f"  {json.dumps(key)}: {text}" for key, text in fields)
    return "{\n" + body + "\n}\n"


def load_json_file(json_path: Path) -> Dict[str, Any]:
    try:
        data = json.loads(Path(json_path).read_text(encoding="utf-8"))
    except Exception as e:
        raise GraphFileError(f"Failed to load JSON from {json_path}: {e}")
    if not isinstance(data, dict):
        raise GraphFileError(f"{json_path} does not hold a JSON object")
    return data


def save_text_file(text: str, output_path: Path) -> None:
    try:
        output_path = Path(output_path)
        if output_path.parent and not output_path.parent.exists():
            output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_text(text, encoding="utf-8")
    except Exception as e:
        raise GraphFileError(f"Failed to save {output_path}: {e}")


# ---------------------------------------------------------------------------
# graph files
# ---------------------------------------------------------------------------


def dumps_graph(bundle: GraphBundle) -> str:
    g = bundle.graph
    fields: List[Tuple[str, str]] = [("n", _compact(g.n)), ("edges", _compact([list(e) for e in g.edges]))]
    if bundle.outer_order is not None:
        fields.append(("outer_order", _compact(list(bundle.outer_order))))
    if bundle.tree_edges is not None:
        fields.append(("tree_edges", _compact([list(e) for e in bundle.tree_edges])))
        fields.append(("leaf_order", _compact(list(bundle.leaf_order))))
    if bundle.provenance:
        fields.append(("metadata", _compact(bundle.provenance)))
    return _render(fields)


def _int_list(data: Mapping[str, Any], key: str) -> Optional[Tuple[int, ...]]:
    raw = data.get(key)
    if raw is None:
        return None
    if not isinstance(raw, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw):
        raise GraphFileError(f"field {key!r} must be a list of integers")
    return tuple(raw)


def _pair_list(data: Mapping[str, Any], key: str) -> Optional[List[Tuple[int, int]]]:
    raw = data.get(key)
    if raw is None:
        return None
    if not isinstance(raw, list):
        raise GraphFileError(f"field {key!r} must be a list of pairs")
    pairs = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(v, int) for v in item)):
            raise GraphFileError(f"field {key!r} holds {item!r}, not a pair of integers")
        pairs.append((item[0], item[1]))
    return pairs


def parse_graph(data: Mapping[str, Any]) -> GraphBundle:
    """Build a bundle from a parsed graph document, validating any certificates it carries."""

    unknown = sorted(set(data) - set(GRAPH_FIELDS))
    if unknown:
        raise GraphFileError(f"unknown graph file fields: {', '.join(unknown)}")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphFileError("field 'n' must be an integer")
    edges = _pair_list(data, "edges")
    if edges is None:
        raise GraphFileError("missing field 'edges'")
    try:
        g = Graph.from_edges(n, edges)
    except GraphError as e:
        raise GraphFileError(f"invalid graph: {e}") from e

    outer_order = _int_list(data, "outer_order")
    tree_edges = _pair_list(data, "tree_edges")
    leaf_order = _int_list(data, "leaf_order")
    if (tree_edges is None) != (leaf_order is None):
        raise GraphFileError("tree_edges and leaf_order must appear together")
    metadata = data.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise GraphFileError("field 'metadata' must be an object")

    try:
        if outer_order is not None:
            validate_outerplane(g, outer_order)
        if tree_edges is not None:
            validate_halin(g, tree_edges, leaf_order)
    except (EmbeddingError, HalinError) as e:
        raise GraphFileError(f"invalid certificate: {e}") from e

    return GraphBundle(
        graph=g,
        outer_order=outer_order,
        tree_edges=None if tree_edges is None else tuple(tree_edges),
        leaf_order=leaf_order,
        provenance=dict(metadata),
    )


def write_graph(bundle: GraphBundle, output_path: Path) -> None:
    save_text_file(dumps_graph(bundle), output_path)


def read_graph(json_path: Path) -> GraphBundle:
    return parse_graph(load_json_file(json_path))


# ---------------------------------------------------------------------------
# coloring files
# ---------------------------------------------------------------------------


def dumps_coloring(coloring: Labeling) -> str:
    if coloring.labels:
        rows = ",\n".join(
            f"    {json.dumps(str(v))}: {_compact(list(label))}" for v, label in coloring.labels.items()
        )
        labels = "{\n" + rows + "\n  }"
    else:
        labels = "{}"
    return _render([("t", _compact(coloring.t)), ("k", _compact(coloring.k)), ("labels", labels)])


def parse_coloring(data: Mapping[str, Any]) -> Labeling:
    unknown = sorted(set(data) - set(COLORING_FIELDS))
    if unknown:
        raise GraphFileError(f"unknown coloring file fields: {', '.join(unknown)}")
    t, k, labels = data.get("t"), data.get("k"), data.get("labels")
    if not isinstance(t, int) or not isinstance(k, int):
        raise GraphFileError("fields 't' and 'k' must be integers")
    if not isinstance(labels, dict):
        raise GraphFileError("field 'labels' must map vertex ids to color lists")
    try:
        parsed = {int(v): tuple(colors) for v, colors in labels.items()}
        return Labeling(t=t, k=k, labels=parsed)
    except (TypeError, ValueError, LabelingError) as e:
        raise GraphFileError(f"invalid labeling: {e}") from e


def write_coloring(coloring: Labeling, output_path: Path) -> None:
    save_text_file(dumps_coloring(coloring), output_path)


def read_coloring(json_path: Path) -> Labeling:
    return parse_coloring(load_json_file(json_path))
