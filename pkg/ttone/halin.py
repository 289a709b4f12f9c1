"""2-tone colorings of Halin graphs: the cubic 7-coloring and the general fan reduction."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from ttone.graph import ball, verify
from ttone.plane import HalinStructure, SingleInternalVertexError, find_deepest_fan
from ttone.solver import ColoringError, ExtensionError, extend_labeling
from ttone.trees import ceil_half_root, color_tree_2tone
from ttone.types import Edge, Label, Labeling, Mode, SearchBudget, canonical_edge

SMALL_COLORS = frozenset(range(1, 6))
BIG_COLORS = frozenset({6, 7})
SEVEN_WHEELS = frozenset({5, 6, 8, 9})


@dataclass(frozen=True)
class LLabel:
    """A 2-label with one color from ``{1..5}`` and one from ``{6, 7}``."""

    label: Label

    def __post_init__(self) -> None:
        colors = set(self.label)
        if len(self.label) != 2 or len(colors & BIG_COLORS) != 1 or len(colors & SMALL_COLORS) != 1:
            raise ValueError(f"{self.label} is not an L-label")

    @property
    def big(self) -> int:
        return max(self.label)

    @property
    def small(self) -> int:
        return min(self.label)


L_LABELS: Tuple[Label, ...] = tuple(sorted((a, b) for a in sorted(SMALL_COLORS) for b in sorted(BIG_COLORS)))


def halin_bound(delta: int) -> int:
    """Upper bound on the 2-tone chromatic number of a Halin graph with maximum degree ``delta``."""

    if delta < 3:
        raise ValueError(f"Halin graphs have maximum degree at least 3, got {delta}")
    return max(10, ceil_half_root(13, 8 * delta - 15))


def wheel_tau_formula(d: int) -> int:
    """2-tone chromatic number of the wheel with ``d`` rim vertices (W_3 is K4)."""

    if d < 3:
        raise ValueError(f"a wheel has at least 3 rim vertices, got d={d}")
    if d in SEVEN_WHEELS:
        return 7
    if d <= 15:
        return 8
    return ceil_half_root(5, 1 + 8 * d)


class _PartialColoring:
    """Labels on a graph with an exact distance check for each new label."""

    def __init__(self, adjacency: Mapping[int, Iterable[int]], labels: Optional[Dict[int, Label]] = None) -> None:
        self.adjacency = adjacency
        self.labels: Dict[int, Label] = dict(labels or {})

    def fits(self, v: int, label: Label) -> bool:
        for w, d in ball(self.adjacency, v, 2).items():
            other = self.labels.get(w)
            if other is not None and len(set(label) & set(other)) >= d:
                return False
        return True

    def first_fit(self, v: int, candidates: Iterable[Label]) -> Optional[Label]:
        return next((label for label in candidates if self.fits(v, label)), None)

    def assign(self, v: int, candidates: Iterable[Label], what: str) -> Label:
        label = self.first_fit(v, candidates)
        if label is None:
            raise ExtensionError(f"no valid label for {what} (vertex {v})")
        self.labels[v] = label
        return label


def _pairs(colors: Iterable[int]) -> List[Label]:
    return list(combinations(sorted(colors), 2))


def _fan_cycle(h: HalinStructure, run: Sequence[int]) -> List[int]:
    """Leaf cycle as ``x1 .. xl`` where ``x1`` and ``xl`` are the fan leaves and ``xl`` precedes ``x1``."""

    order = list(h.leaf_order)
    a, b = run
    start = order.index(b)
    rotated = order[start:] + order[:start]
    if rotated[-1] != a:
        raise ColoringError(f"fan leaves {run} are not consecutive on the leaf cycle")
    return rotated


def _normalizer(fx: Label, fx1: Label, fy: Label, last: Label) -> Dict[int, int]:
    """Color permutation sending f(x) to 12, f(x1) to 34, f(y) to 35 and the big color of ``last`` to 6."""

    shared = set(fx1) & set(fy)
    if len(shared) != 1 or set(fx) & (set(fx1) | set(fy)):
        raise ColoringError(f"unexpected labels around the fan: f(x)={fx}, f(x1)={fx1}, f(y)={fy}")
    (c,) = shared
    (d,) = set(fx1) - shared
    (e,) = set(fy) - shared
    low = [color for color in fx if color in last] or [min(fx)]
    one = low[0]
    (two,) = set(fx) - {one}
    big = LLabel(last).big
    return {one: 1, two: 2, c: 3, d: 4, e: 5, big: 6, 13 - big: 7}


def color_cubic_halin7(h: HalinStructure) -> Tuple[int, Labeling]:
    """2-tone coloring of a cubic Halin graph on at least six vertices with at most 7 colors."""

    g = h.graph
    if not h.is_cubic:
        raise ColoringError("precondition failed: Halin graph is not cubic")
    if g.n < 6:
        raise ColoringError(f"precondition failed: n={g.n} < 6 (the only smaller cubic Halin graph is K4)")

    tree = h.tree()
    internal = list(h.internal_vertices)
    inner, nodes = g.induced(internal)
    _, inner_coloring = color_tree_2tone(inner)
    work = _PartialColoring(g.adjacency, {nodes[i]: label for i, label in inner_coloring.labels.items()})

    fan = find_deepest_fan(tree, h.leaf_order, internal[0])
    x, y = fan.x, fan.parent
    cycle = _fan_cycle(h, fan.leaf_run)
    x1, xl = cycle[0], cycle[-1]
    parent = {leaf: next(iter(tree[leaf])) for leaf in cycle}

    work.assign(x1, _pairs(SMALL_COLORS), "the first fan leaf")
    for xi in cycle[1:-1]:
        LLabel(work.assign(xi, L_LABELS, "a middle leaf"))

    pi = _normalizer(work.labels[x], work.labels[x1], work.labels[y], work.labels[cycle[-2]])
    work.labels = {v: tuple(sorted(pi[c] for c in label)) for v, label in work.labels.items()}

    last = work.labels[cycle[-2]]
    y_last = work.labels[parent[cycle[-2]]]
    x2, y2 = cycle[1], work.labels[parent[cycle[1]]]
    everything = _pairs(range(1, 8))
    work.labels[x] = (6, 7)

    if 1 not in last and 2 not in last:
        if y_last != (1, 2):
            work.assign(xl, [(1, 2)] + everything, "the closing leaf")
        else:
            _close_fan(work, x1, xl, [(2, 3), (1, 3), (2, 4), (1, 4)], [(1, 5) if last == (4, 6) else (1, 4)])
    elif y_last != (2, 5):
        work.assign(xl, [(2, 5)] + everything, "the closing leaf")
    elif 2 not in work.labels[x2] and y2 != (2, 5):
        _close_fan(work, x1, xl, [(2, 5)], [(3, 4)])
    elif 2 in work.labels[x2]:
        _close_fan(work, x1, xl, [(1, 3), (1, 4)], [(2, 4), (2, 3)])
    else:
        _close_fan(work, x1, xl, [(4, 5)], [(2, 3)])

    inverse = {new: old for old, new in pi.items()}
    coloring = Labeling(
        t=2, k=7, labels={v: tuple(inverse.get(c, c) for c in label) for v, label in work.labels.items()}
    )
    report = verify(g, coloring, Mode.TONE)
    if not report.valid:
        raise ExtensionError(f"cubic Halin coloring is invalid: {report.violations[0].describe()}")
    return coloring.k, coloring


def _close_fan(work: _PartialColoring, x1: int, xl: int, first: List[Label], last: List[Label]) -> None:
    """Relabel ``x1`` and label ``xl``, trying the listed labels before any other pair."""

    everything = _pairs(range(1, 8))
    previous = work.labels.pop(x1)
    for label in first + [p for p in _pairs(SMALL_COLORS) if p not in first]:
        if not work.fits(x1, label):
            continue
        work.labels[x1] = label
        closing = work.first_fit(xl, last + everything)
        if closing is not None:
            work.labels[xl] = closing
            return
        del work.labels[x1]
    work.labels[x1] = previous
    raise ExtensionError(f"no relabelling of leaf {x1} lets leaf {xl} close the fan")


# ---------------------------------------------------------------------------
# general Halin graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FanReduction:
    """One fan reduction: leaves removed from the fan of ``x`` and the edges added in their place."""

    x: int
    removed: Tuple[int, ...]
    removed_edges: Tuple[Edge, ...]
    added_edges: Tuple[Edge, ...]


def _reduce_fan(graph: nx.Graph, tree: nx.Graph, leaf_order: List[int], root: int) -> FanReduction:
    fan = find_deepest_fan(tree, leaf_order, root)
    run = list(fan.leaf_run)
    size = len(leaf_order)
    before = leaf_order[(leaf_order.index(run[0]) - 1) % size]
    after = leaf_order[(leaf_order.index(run[-1]) + 1) % size]
    if len(run) == 2:
        removed = run
        added = [canonical_edge(before, fan.x), canonical_edge(fan.x, after)]
        slot = leaf_order.index(run[0])
        leaf_order[slot:slot + 1] = [fan.x]
        leaf_order.remove(run[1])
    else:
        removed = [run[1]]
        added = [canonical_edge(run[0], run[2])]
        leaf_order.remove(run[1])
    removed_edges = sorted({canonical_edge(v, w) for v in removed for w in graph[v]})
    graph.remove_nodes_from(removed)
    tree.remove_nodes_from(removed)
    graph.add_edges_from(added)
    return FanReduction(fan.x, tuple(removed), tuple(removed_edges), tuple(added))


def color_wheel_base(graph: nx.Graph, hub: int, rim: Sequence[int], k: int, budget: Optional[SearchBudget] = None) -> Dict[int, Label]:
    """Hub labelled 12, rim labels over ``{3..k}`` found by backtracking."""

    outcome = extend_labeling(graph.adj, {hub: (1, 2)}, list(rim), 2, k, Mode.TONE, budget)
    if not outcome.sat:
        raise ExtensionError(f"wheel with {len(rim)} rim vertices has no 2-tone {k}-coloring ({outcome.status.value})")
    labels = dict(outcome.labeling.labels)
    labels[hub] = (1, 2)
    return labels


def color_halin(h: HalinStructure, budget: Optional[SearchBudget] = None) -> Tuple[int, Labeling]:
    """2-tone coloring of any Halin graph within ``halin_bound`` of its maximum degree.

    Fans are shrunk at the deepest internal vertex until a wheel remains; the wheel is
    colored directly and the removed leaves are restored greedily in reverse order.
    """

    g = h.graph
    k = halin_bound(g.max_degree)
    graph = g.to_networkx()
    tree = h.tree()
    leaf_order = list(h.leaf_order)
    root = h.internal_vertices[0]
    reductions: List[FanReduction] = []
    while True:
        try:
            reductions.append(_reduce_fan(graph, tree, leaf_order, root))
        except SingleInternalVertexError:
            break

    labels = color_wheel_base(graph, root, leaf_order, k, budget)
    for step in reversed(reductions):
        graph.remove_edges_from(step.added_edges)
        graph.add_nodes_from(step.removed)
        graph.add_edges_from(step.removed_edges)
        work = _PartialColoring(graph.adj, labels)
        for v in step.removed:
            used = {c for w in graph[v] if w in work.labels for c in work.labels[w]}
            work.assign(v, _pairs(c for c in range(1, k + 1) if c not in used), "a restored fan leaf")
        labels = work.labels

    coloring = Labeling(t=2, k=k, labels=labels)
    report = verify(g, coloring, Mode.TONE)
    if not report.valid:
        raise ExtensionError(f"Halin coloring is invalid: {report.violations[0].describe()}")
    return k, coloring
