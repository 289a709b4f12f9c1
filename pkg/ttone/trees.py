"""Greedy 2-tone coloring of trees with the optimal palette."""

from __future__ import annotations

from itertools import combinations
from math import isqrt
from typing import Dict, Tuple

from ttone.graph import ball, is_tree, verify
from ttone.solver import ColoringError, search_order
from ttone.types import Graph, Label, Labeling, Mode


def ceil_half_root(base: int, radicand: int) -> int:
    """Exact ``ceil((base + sqrt(radicand)) / 2)`` for a non-negative integer radicand."""

    if radicand < 0:
        raise ValueError("radicand must be non-negative")
    root = isqrt(radicand)
    if root * root < radicand:
        root += 1
    return (base + root + 1) // 2


def tree_tau_formula(delta: int) -> int:
    """2-tone chromatic number of a tree with maximum degree ``delta`` (at least one edge)."""

    if delta < 1:
        raise ValueError(f"a nontrivial tree has maximum degree at least 1, got {delta}")
    return ceil_half_root(5, 8 * delta + 1)


def color_tree_2tone(tree: Graph) -> Tuple[int, Labeling]:
    """Color a tree breadth-first, giving each vertex its lowest candidate label.

    A candidate label is a pair of colors free at the vertex (absent from its colored
    neighbors) that differs from the label of every colored vertex at distance two.
    """

    if tree.n < 2:
        raise ColoringError("tree coloring needs at least two vertices")
    if not is_tree(tree):
        raise ColoringError("input graph is not a tree")

    k = tree_tau_formula(tree.max_degree)
    labels: Dict[int, Label] = {}
    for v in search_order(tree):
        near = ball(tree.adjacency, v, 2)
        used = {c for w, d in near.items() if d == 1 and w in labels for c in labels[w]}
        taken = {labels[w] for w, d in near.items() if d == 2 and w in labels}
        free = [c for c in range(1, k + 1) if c not in used]
        label = next((pair for pair in combinations(free, 2) if pair not in taken), None)
        if label is None:
            raise ColoringError(f"no candidate label left for vertex {v} with k={k}")
        labels[v] = label

    coloring = Labeling(t=2, k=k, labels=labels)
    report = verify(tree, coloring, Mode.TONE)
    if not report.valid:
        raise ColoringError(f"tree coloring is invalid: {report.violations[0].describe()}")
    return k, coloring
