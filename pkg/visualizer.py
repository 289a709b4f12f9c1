"""
DOT export for graphs and colorings.

- Nodes are named by vertex id; with a coloring each node also shows its label
- Halin graphs draw leaf-cycle edges dashed and tree edges solid
- Outerplane graphs carry their outer order as a graph comment
The output renders with any Graphviz tool (``neato -Tsvg``).
"""
from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

from ttone.generators import GraphBundle
from ttone.types import Labeling, canonical_edge, format_label

DOT = """graph PLACEHOLDER_NAME {
  graph [comment="PLACEHOLDER_COMMENT", overlap=false, splines=true];
  node [shape=circle, fontsize=10];
PLACEHOLDER_NODES
PLACEHOLDER_EDGES
}
"""


def _node_line(v: int, coloring: Optional[Labeling]) -> str:
    if coloring is not None and v in coloring.labels:
        return f'  {v} [label="{v}\\n{format_label(coloring.labels[v])}"];'
    return f'  {v} [label="{v}"];'


def create_dot(bundle: GraphBundle, coloring: Optional[Labeling] = None, output_path: Union[str, Path, None] = None, name: str = "G") -> str:
    """Render ``bundle`` (and optionally its coloring) as DOT.

    Returns the DOT text, or the resolved output path when ``output_path`` is given.
    """

    g = bundle.graph
    tree = {canonical_edge(u, v) for u, v in bundle.tree_edges or ()}
    comment = ""
    if bundle.outer_order is not None:
        comment = "outer order " + " ".join(str(v) for v in bundle.outer_order)
    if coloring is not None:
        comment = (comment + "; " if comment else "") + f"{coloring.t}-labels over 1..{coloring.k}"

    nodes = "\n".join(_node_line(v, coloring) for v in range(g.n))
    edges = "\n".join(
        f"  {u} -- {v}" + (" [style=dashed];" if tree and (u, v) not in tree else ";") for u, v in g.edges
    )
    dot = (
        DOT.replace("PLACEHOLDER_NAME", name)
        .replace("PLACEHOLDER_COMMENT", comment)
        .replace("PLACEHOLDER_NODES", nodes)
        .replace("PLACEHOLDER_EDGES", edges)
    )

    if output_path:
        p = Path(output_path)
        p.write_text(dot, encoding="utf-8")
        return str(p.resolve())
    return dot
