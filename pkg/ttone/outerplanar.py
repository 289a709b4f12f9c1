"""Classification and reduction-based coloring of subcubic outerplanar graphs.

The colorer peels the graph down to a single cycle (or a single vertex), one reduction
at a time: a vertex of degree at most one, or the inner vertices of a pendant face. The
base is colored directly and every reduction is then undone in reverse order by a
bounded extension search that may relabel retained vertices near the restored ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import networkx as nx

from ttone.cycles import color_cycle
from ttone.graph import ball, detect_forbidden, verify
from ttone.plane import EmbeddingError, FaceSet, OuterplaneEmbedding, bounded_faces, find_outer_order, orient_pendant, weak_dual
from ttone.solver import ColoringError, ExtensionError, decide_colorable, extend_within
from ttone.types import (
    ClassificationResult,
    Edge,
    Graph,
    Label,
    Labeling,
    Mode,
    ReductionStep,
    ReductionTrace,
    SearchBudget,
    canonical_edge,
)

TARGETS = ("auto", "tone5", "good6", "threegood11")


@dataclass(frozen=True)
class ReductionPlan:
    """How one target reduces, which base scheme it colors with and how it verifies.

    Attributes
    ----------
    rules:
        Pendant-face rule set: ``"tone5"``, ``"good6"`` or ``"threegood11"``.
    t, k:
        Label size and palette.
    mode:
        Constraint enforced by extensions and by the final check.
    cycle_scheme:
        Scheme passed to ``color_cycle`` for the base cycle.
    """

    rules: str
    t: int
    k: int
    mode: Mode
    cycle_scheme: str


PLANS: Dict[str, ReductionPlan] = {
    "tone5": ReductionPlan("tone5", 2, 5, Mode.TONE, "tone"),
    "good6": ReductionPlan("good6", 2, 6, Mode.GOOD, "good6"),
    "threegood11": ReductionPlan("threegood11", 3, 11, Mode.THREE_GOOD, "threegood11"),
    "class7": ReductionPlan("tone5", 2, 7, Mode.TONE, "tone"),
}


def check_preconditions(g: Graph) -> None:
    """Raise ``ColoringError`` naming the first violated input condition."""

    if g.n < 3:
        raise ColoringError(f"precondition failed: need at least 3 vertices, got {g.n}")
    if not nx.is_connected(g.to_networkx()):
        raise ColoringError("precondition failed: graph is not connected")
    if g.max_degree > 3:
        raise ColoringError(f"precondition failed: graph is not subcubic (max degree {g.max_degree})")


def classify_subcubic_outerplanar(g: Graph) -> ClassificationResult:
    """2-tone chromatic number of a connected subcubic outerplanar graph, with its reason."""

    check_preconditions(g)
    if find_outer_order(g) is None:
        raise ColoringError("precondition failed: graph is not outerplanar")
    report = detect_forbidden(g)
    for name in ("K4-e", "C3", "C4", "C7"):
        if name in report.witnesses:
            tau_class = 7 if name == "K4-e" else 6
            return ClassificationResult(tau_class, name, tuple(report.witnesses[name]))
    return ClassificationResult(5, None)


def pendant_reduction(face: Tuple[int, ...], rules: str, degree) -> Tuple[List[int], List[Edge]]:
    """Vertices to delete and edges to add for an oriented pendant face ``v1 .. vl``."""

    size = len(face)
    if rules == "good6" and size >= 5:
        return [face[1]], [canonical_edge(face[0], face[2])]
    if rules == "threegood11" and size >= 5:
        return [face[2]], [canonical_edge(face[1], face[3])]
    if rules == "threegood11" and size == 4:
        return [face[1]], [canonical_edge(face[0], face[2])]
    return [v for v in face if degree(v) == 2], []


def pick_pendant_face(current: nx.Graph, fs: FaceSet) -> Tuple[int, ...]:
    dual = weak_dual(fs, current)
    if not dual.pendant_faces:
        raise EmbeddingError(f"no pendant face among {len(fs.faces)} bounded faces")
    return fs.faces[dual.pendant_faces[0]]


def _step(current: nx.Graph, kind: str, removed: List[int], added: List[Edge], face: Tuple[int, ...]) -> ReductionStep:
    removed_edges = sorted({canonical_edge(v, w) for v in removed for w in current[v]})
    scope = set(removed)
    for v in removed:
        scope.update(ball(current.adj, v, 2))
    return ReductionStep(
        kind=kind,
        removed=tuple(sorted(removed)),
        removed_edges=tuple(removed_edges),
        added_edges=tuple(sorted(added)),
        face=tuple(face),
        scope=tuple(sorted(scope)),
    )


def reduce_outerplane(
    emb: OuterplaneEmbedding, rules: str
) -> Tuple[nx.Graph, List[ReductionStep], Optional[Tuple[int, ...]]]:
    """Apply reductions until a single vertex or a single cycle remains.

    Returns the reduced graph, the steps in the order applied and the base cycle (None
    when the base is a single vertex).
    """

    current = emb.graph.to_networkx()
    order = list(emb.outer_order)
    steps: List[ReductionStep] = []
    while current.number_of_nodes() > 1:
        low = [v for v in current if current.degree(v) <= 1]
        if low:
            leaf = min(low)
            steps.append(_step(current, "leaf", [leaf], [], ()))
            current.remove_node(leaf)
            order.remove(leaf)
            continue
        fs = FaceSet(faces=tuple(bounded_faces(order, lambda v: current[v])))
        if len(fs.faces) == 1:
            return current, steps, fs.faces[0]
        face = orient_pendant(pick_pendant_face(current, fs), current.degree)
        removed, added = pendant_reduction(face, rules, current.degree)
        step = _step(current, "contract" if added else "pendant-face", removed, added, face)
        steps.append(step)
        current.remove_nodes_from(removed)
        current.add_edges_from(added)
        order = [v for v in order if v not in removed]
    return current, steps, None


def _base_labels(base: Optional[Tuple[int, ...]], current: nx.Graph, plan: ReductionPlan) -> Dict[int, Label]:
    if base is None:
        (only,) = current.nodes
        return {only: tuple(range(1, plan.t + 1))}
    cycle = color_cycle(len(base), plan.cycle_scheme)
    return {v: cycle.label(i) for i, v in enumerate(base)}


def _color_by_reduction(
    emb: OuterplaneEmbedding, plan: ReductionPlan, budget: Optional[SearchBudget]
) -> Tuple[Labeling, ReductionTrace]:
    current, steps, base = reduce_outerplane(emb, plan.rules)
    labels = _base_labels(base, current, plan)
    for step in reversed(steps):
        current.remove_edges_from(step.added_edges)
        current.add_nodes_from(step.removed)
        current.add_edges_from(step.removed_edges)
        labels, _ = extend_within(current.adj, labels, step.removed, plan.t, plan.k, plan.mode, budget)
    trace = ReductionTrace(
        steps=tuple(steps),
        base=f"cycle C{len(base)}" if base is not None else "single vertex",
    )
    return Labeling(t=plan.t, k=plan.k, labels=labels), trace


def color_subcubic_outerplanar(
    emb: OuterplaneEmbedding,
    target: str = "auto",
    budget: Optional[SearchBudget] = None,
    exact_budget: Optional[SearchBudget] = None,
) -> Tuple[int, Labeling, ReductionTrace]:
    """Color a subcubic outerplane graph by reduction and return ``(k, labeling, trace)``.

    ``auto`` classifies the graph and uses the optimal palette for its class. ``budget``
    bounds each extension; ``exact_budget`` bounds the whole-graph search used when a
    class-7 extension fails.
    """

    if target not in TARGETS:
        raise ColoringError(f"unknown target {target!r}; expected one of {TARGETS}")
    g = emb.graph
    check_preconditions(g)
    report = detect_forbidden(g)
    if target == "tone5" and report.has_short_cycle:
        raise ColoringError("precondition failed: tone5 needs a graph without C3, C4 and C7")
    if target == "good6" and report.has_k4e:
        raise ColoringError("precondition failed: good6 needs a graph without K4-e")

    if target == "auto":
        tau_class = classify_subcubic_outerplanar(g).tau_class
        key = {5: "tone5", 6: "good6", 7: "class7"}[tau_class]
    else:
        key = target
    plan = PLANS[key]

    try:
        coloring, trace = _color_by_reduction(emb, plan, budget)
    except ExtensionError:
        if key != "class7":
            raise
        outcome = decide_colorable(g, 2, 7, exact_budget)
        if not outcome.sat:
            raise ExtensionError(f"no 2-tone 7-coloring found ({outcome.status.value})") from None
        coloring, trace = outcome.labeling, ReductionTrace(steps=(), base="exact search")

    check = verify(g, coloring, plan.mode)
    if not check.valid:
        raise ExtensionError(f"{key} coloring failed verification: {check.violations[0].describe()}")
    return plan.k, coloring, trace
