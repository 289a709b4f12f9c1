"""Shared data structures for graphs, labelings and search outcomes."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

Edge = Tuple[int, int]
Label = Tuple[int, ...]


class GraphError(ValueError):
    """Raised when a graph violates the simple-graph invariants."""


class LabelingError(ValueError):
    """Raised when a label has the wrong size or uses a color outside the palette."""


def canonical_edge(u: int, v: int) -> Edge:
    """Return the pair ordered so that the smaller vertex id comes first."""

    return (u, v) if u < v else (v, u)


def label_mask(label: Iterable[int]) -> int:
    mask = 0
    for color in label:
        mask |= 1 << color
    return mask


def format_label(label: Sequence[int]) -> str:
    """Render a label the way it is written by hand: ``12`` or ``{4,9,10}``."""

    if all(color < 10 for color in label):
        return "".join(str(color) for color in label)
    return "{" + ",".join(str(color) for color in label) + "}"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the vertex ids ``0..n-1``.

    Attributes
    ----------
    n:
        Vertex count.
    adjacency:
        Per-vertex sorted neighbor tuples; ``adjacency[v]`` lists the neighbors of ``v``.
    edges:
        Sorted tuple of unordered pairs, each stored as ``(u, v)`` with ``u < v``.
    """

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count cannot be negative")
        if len(self.adjacency) != self.n:
            raise GraphError(f"adjacency has {len(self.adjacency)} rows for {self.n} vertices")
        seen: Set[Edge] = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) uses a vertex outside 0..{self.n - 1}")
            if u > v:
                raise GraphError(f"edge ({u}, {v}) is not stored as (smaller, larger)")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        for v, neighbors in enumerate(self.adjacency):
            for w in neighbors:
                if canonical_edge(v, w) not in seen:
                    raise GraphError(f"adjacency lists {v}-{w} but the edge list does not")
        if sum(len(row) for row in self.adjacency) != 2 * len(self.edges):
            raise GraphError("adjacency is not symmetric with the edge list")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph from raw pairs, rejecting loops, duplicates and bad ids."""

        if n < 0:
            raise GraphError("vertex count cannot be negative")
        seen: Set[Edge] = set()
        for raw in edges:
            if len(raw) != 2:
                raise GraphError(f"edge {raw!r} does not have exactly two endpoints")
            u, v = int(raw[0]), int(raw[1])
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) uses a vertex outside 0..{n - 1}")
            edge = canonical_edge(u, v)
            if edge in seen:
                raise GraphError(f"duplicate edge {edge}")
            seen.add(edge)
        rows: List[List[int]] = [[] for _ in range(n)]
        for u, v in seen:
            rows[u].append(v)
            rows[v].append(u)
        return cls(
            n=n,
            adjacency=tuple(tuple(sorted(row)) for row in rows),
            edges=tuple(sorted(seen)),
        )

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> Tuple["Graph", List[int]]:
        """Relabel a networkx graph densely; returns the graph and the id -> node list."""

        nodes = sorted(graph.nodes)
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in graph.edges)), nodes

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @property
    def max_degree(self) -> int:
        return max((len(row) for row in self.adjacency), default=0)

    @property
    def min_degree(self) -> int:
        return min((len(row) for row in self.adjacency), default=0)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    def without_edges(self, removed: Iterable[Sequence[int]]) -> "Graph":
        drop = {canonical_edge(int(u), int(v)) for u, v in removed}
        return Graph.from_edges(self.n, (e for e in self.edges if e not in drop))

    def induced(self, vertices: Iterable[int]) -> Tuple["Graph", List[int]]:
        """Induced subgraph on ``vertices``, relabelled densely in increasing id order."""

        return Graph.from_networkx(self.to_networkx().subgraph(vertices))


@dataclass(frozen=True)
class DistanceTable:
    """Bounded shortest-path distances.

    Only pairs at distance ``<= cap`` are stored; every other pair is beyond the cap and
    reported as ``None``.
    """

    cap: int
    entries: Mapping[Edge, int]

    def __post_init__(self) -> None:
        if self.cap < 1:
            raise ValueError("DistanceTable.cap must be a positive integer")

    def distance(self, u: int, v: int) -> Optional[int]:
        if u == v:
            return 0
        return self.entries.get(canonical_edge(u, v))

    def pairs(self, max_distance: Optional[int] = None) -> Iterator[Tuple[int, int, int]]:
        limit = self.cap if max_distance is None else min(self.cap, max_distance)
        for (u, v), d in sorted(self.entries.items()):
            if d <= limit:
                yield u, v, d

    def within(self, v: int, max_distance: Optional[int] = None) -> Dict[int, int]:
        """Vertices other than ``v`` within ``max_distance`` of it, with their distances."""

        limit = self.cap if max_distance is None else min(self.cap, max_distance)
        found: Dict[int, int] = {}
        for (a, b), d in self.entries.items():
            if d > limit:
                continue
            if a == v:
                found[b] = d
            elif b == v:
                found[a] = d
        return found

    def second_neighbors(self, v: int) -> List[int]:
        if self.cap < 2:
            raise ValueError("second neighborhoods need a table with cap >= 2")
        return sorted(w for w, d in self.within(v, 2).items() if d == 2)


@dataclass(frozen=True)
class Labeling:
    """A (possibly partial) assignment of ``t``-sets of colors from ``1..k``.

    Labels are stored as sorted tuples. Construction fails with ``LabelingError`` when a
    label does not have exactly ``t`` distinct colors or uses a color outside ``1..k``.
    """

    t: int
    k: int
    labels: Mapping[int, Label] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.t < 1:
            raise LabelingError("label size t must be at least 1")
        if self.k < self.t:
            raise LabelingError(f"palette size k={self.k} is smaller than t={self.t}")
        normalized: Dict[int, Label] = {}
        for vertex, raw in self.labels.items():
            colors = tuple(sorted(int(c) for c in raw))
            if len(colors) != self.t or len(set(colors)) != self.t:
                raise LabelingError(
                    f"vertex {vertex} has label {list(raw)}; expected {self.t} distinct colors"
                )
            if colors[0] < 1 or colors[-1] > self.k:
                raise LabelingError(
                    f"vertex {vertex} uses a color outside 1..{self.k}: {list(colors)}"
                )
            normalized[int(vertex)] = colors
        object.__setattr__(self, "labels", dict(sorted(normalized.items())))

    def label(self, v: int) -> Label:
        return self.labels[v]

    def is_total(self, n: int) -> bool:
        return all(v in self.labels for v in range(n))

    def colors_used(self) -> Set[int]:
        return {c for label in self.labels.values() for c in label}

    def permuted(self, permutation: Mapping[int, int]) -> "Labeling":
        """Apply a color permutation; colors missing from the mapping stay put."""

        return Labeling(
            t=self.t,
            k=self.k,
            labels={
                v: tuple(permutation.get(c, c) for c in label) for v, label in self.labels.items()
            },
        )

    def as_dict(self) -> Dict[str, List[int]]:
        return {str(v): list(label) for v, label in self.labels.items()}


class Mode(str, Enum):
    """Which coloring rule a labeling is checked against."""

    TONE = "t-tone"
    GOOD = "good-2-tone"
    THREE_GOOD = "3-good"

    @classmethod
    def parse(cls, text: str) -> "Mode":
        aliases = {
            "t-tone": cls.TONE,
            "tone": cls.TONE,
            "good": cls.GOOD,
            "good-2-tone": cls.GOOD,
            "3-good": cls.THREE_GOOD,
            "threegood": cls.THREE_GOOD,
        }
        try:
            return aliases[text.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown verification mode {text!r}") from None


class Rule(str, Enum):
    TONE = "t-tone"
    GOOD_EXACT_ONE = "good-exact-one"
    THREE_GOOD_ADJACENT_DISJOINT = "3good-adjacent-disjoint"
    THREE_GOOD_EXACT_ONE = "3good-exact-one"


@dataclass(frozen=True)
class Violation:
    u: int
    v: int
    distance: int
    shared: int
    rule: Rule

    def describe(self) -> str:
        return (
            f"{self.rule.value}: vertices {self.u} and {self.v} at distance {self.distance} "
            f"share {self.shared} color(s)"
        )


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    violations: Tuple[Violation, ...] = ()

    def __post_init__(self) -> None:
        if self.valid != (not self.violations):
            raise ValueError("VerificationReport.valid must equal 'no violations'")


@dataclass(frozen=True)
class ForbiddenReport:
    """Which of the forbidden subgraphs C3, C4, C7 and K4-e occur, with witnesses."""

    has_c3: bool
    has_c4: bool
    has_c7: bool
    has_k4e: bool
    connected: bool
    max_degree: int
    min_degree: int
    witnesses: Mapping[str, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def has_short_cycle(self) -> bool:
        return self.has_c3 or self.has_c4 or self.has_c7


@dataclass(frozen=True)
class SearchBudget:
    """Deterministic node budget for backtracking searches."""

    max_nodes: int

    def __post_init__(self) -> None:
        if self.max_nodes < 1:
            raise ValueError("SearchBudget.max_nodes must be positive")


class SolveStatus(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    TIMEOUT = "TIMEOUT"


@dataclass(frozen=True)
class SolveOutcome:
    status: SolveStatus
    labeling: Optional[Labeling] = None
    nodes: int = 0

    def __post_init__(self) -> None:
        if (self.status is SolveStatus.SAT) != (self.labeling is not None):
            raise ValueError("a SAT outcome carries a labeling and no other outcome does")

    @property
    def sat(self) -> bool:
        return self.status is SolveStatus.SAT


WITNESS_CLASSES = {"K4-e": 7, "C3": 6, "C4": 6, "C7": 6, None: 5}


@dataclass(frozen=True)
class ClassificationResult:
    tau_class: int
    witness: Optional[str]
    witness_vertices: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if WITNESS_CLASSES.get(self.witness) != self.tau_class:
            raise ValueError(f"class {self.tau_class} is inconsistent with witness {self.witness!r}")


@dataclass(frozen=True)
class ReductionStep:
    """One reduction applied by an outerplanar colorer.

    Attributes
    ----------
    kind:
        ``"leaf"``, ``"pendant-face"`` or ``"contract"``.
    removed:
        Vertices deleted by the step.
    removed_edges:
        Every edge deleted by the step (all edges at the removed vertices).
    added_edges:
        Edges added to keep the reduced graph in the same class.
    face:
        The pendant face cycle the step acted on, empty for leaf removals.
    scope:
        Vertices relabelled when the step is undone.
    """

    kind: str
    removed: Tuple[int, ...]
    removed_edges: Tuple[Edge, ...]
    added_edges: Tuple[Edge, ...] = ()
    face: Tuple[int, ...] = ()
    scope: Tuple[int, ...] = ()

    def as_dict(self) -> Dict[str, object]:
        return {
            "kind": self.kind,
            "removed": list(self.removed),
            "removed_edges": [list(e) for e in self.removed_edges],
            "added_edges": [list(e) for e in self.added_edges],
            "face": list(self.face),
            "scope": list(self.scope),
        }


@dataclass(frozen=True)
class ReductionTrace:
    steps: Tuple[ReductionStep, ...]
    base: str

    def replay(self, vertices: Iterable[int], edges: Iterable[Edge]) -> Tuple[Set[int], Set[Edge]]:
        """Undo every step on the reduced graph and return the original vertex/edge sets."""

        current_vertices = set(vertices)
        current_edges = {canonical_edge(u, v) for u, v in edges}
        for step in reversed(self.steps):
            current_edges.difference_update(step.added_edges)
            current_vertices.update(step.removed)
            current_edges.update(step.removed_edges)
        return current_vertices, current_edges
