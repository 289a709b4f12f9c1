"""Distances, the t-tone / good / 3-good verifier and forbidden-subgraph detection."""

from __future__ import annotations

from collections import deque
from typing import Dict, Iterable, List, Mapping, Optional

import networkx as nx

from ttone.types import (
    DistanceTable,
    Edge,
    ForbiddenReport,
    Graph,
    Labeling,
    Mode,
    Rule,
    VerificationReport,
    Violation,
)

SHORT_CYCLES = (3, 4, 7)


class VerificationError(ValueError):
    """Raised when a labeling cannot be checked in the requested mode."""


def distances_up_to(g: Graph, cap: int) -> DistanceTable:
    """Breadth-first distances for every pair at distance at most ``cap``."""

    if cap < 1:
        raise ValueError("cap must be a positive integer")
    entries: Dict[Edge, int] = {}
    for u, lengths in nx.all_pairs_shortest_path_length(g.to_networkx(), cutoff=cap):
        for v, d in lengths.items():
            if u < v:
                entries[(u, v)] = d
    return DistanceTable(cap=cap, entries=entries)


def ball(adjacency: Mapping[int, Iterable[int]], source: int, radius: int) -> Dict[int, int]:
    """Distances from ``source`` to every vertex within ``radius`` (source excluded)."""

    seen = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if seen[v] == radius:
            continue
        for w in adjacency[v]:
            if w not in seen:
                seen[w] = seen[v] + 1
                queue.append(w)
    del seen[source]
    return seen


def pair_allowed(shared: int, distance: int, mode: Mode) -> bool:
    """Whether two labels sharing ``shared`` colors may sit at ``distance``."""

    if mode is Mode.TONE:
        return shared < distance
    if distance == 1:
        return shared == 0
    if distance == 2:
        return shared == 1
    return shared < distance


def check_radius(mode: Mode, t: int) -> int:
    """Largest distance at which the rule of ``mode`` can be violated."""

    return t if mode is Mode.TONE else 2


def verify(
    g: Graph,
    f: Labeling,
    mode: Mode = Mode.TONE,
    table: Optional[DistanceTable] = None,
) -> VerificationReport:
    """Check a total labeling and report every violated pair."""

    mode = Mode(mode)
    if mode is Mode.GOOD and f.t != 2:
        raise VerificationError("good-2-tone mode needs labels of size 2")
    if mode is Mode.THREE_GOOD and f.t != 3:
        raise VerificationError("3-good mode needs labels of size 3")
    missing = [v for v in range(g.n) if v not in f.labels]
    if missing:
        raise VerificationError(f"labeling is not total; unlabelled vertices {missing[:10]}")
    stray = [v for v in f.labels if not 0 <= v < g.n]
    if stray:
        raise VerificationError(f"labeling names vertices outside the graph: {stray[:10]}")

    cap = check_radius(mode, f.t)
    if table is None or table.cap < cap:
        table = distances_up_to(g, cap)

    violations: List[Violation] = []
    for u, v, d in table.pairs(cap):
        shared = len(set(f.labels[u]) & set(f.labels[v]))
        if mode is Mode.THREE_GOOD:
            if d == 1 and shared:
                violations.append(Violation(u, v, d, shared, Rule.THREE_GOOD_ADJACENT_DISJOINT))
            elif d == 2 and shared != 1:
                violations.append(Violation(u, v, d, shared, Rule.THREE_GOOD_EXACT_ONE))
            continue
        if shared >= d:
            violations.append(Violation(u, v, d, shared, Rule.TONE))
        if mode is Mode.GOOD and d == 2 and shared != 1:
            violations.append(Violation(u, v, d, shared, Rule.GOOD_EXACT_ONE))
    return VerificationReport(valid=not violations, violations=tuple(violations))


def find_k4e(g: Graph) -> Optional[tuple]:
    """An edge lying in two triangles, returned as (u, v, a, b); None if there is none."""

    for u, v in g.edges:
        common = sorted(set(g.adjacency[u]) & set(g.adjacency[v]))
        if len(common) >= 2:
            return (u, v, common[0], common[1])
    return None


def detect_forbidden(g: Graph) -> ForbiddenReport:
    """Report which of C3, C4, C7 and K4-e occur as subgraphs of ``g``."""

    nx_graph = g.to_networkx()
    witnesses: Dict[str, tuple] = {}
    for cycle in nx.simple_cycles(nx_graph, length_bound=max(SHORT_CYCLES)):
        key = f"C{len(cycle)}"
        if len(cycle) in SHORT_CYCLES and key not in witnesses:
            witnesses[key] = tuple(cycle)
            if len(witnesses) == len(SHORT_CYCLES):
                break
    k4e = find_k4e(g)
    if k4e is not None:
        witnesses["K4-e"] = k4e
    return ForbiddenReport(
        has_c3="C3" in witnesses,
        has_c4="C4" in witnesses,
        has_c7="C7" in witnesses,
        has_k4e=k4e is not None,
        connected=g.n > 0 and nx.is_connected(nx_graph),
        max_degree=g.max_degree,
        min_degree=g.min_degree,
        witnesses=witnesses,
    )


def is_tree(g: Graph) -> bool:
    return g.n > 0 and nx.is_tree(g.to_networkx())
