"""Seeded instance generators and exhaustive enumerators for the tiny ranges.

Random streams come from ``numpy.random.Generator(PCG64(seed))`` so a (family, params,
seed) triple always produces the same edge list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from ttone.plane import HalinStructure, OuterplaneEmbedding, embed, find_outer_order, validate_halin
from ttone.types import Edge, Graph, canonical_edge

FAMILIES = ("cycle", "path", "complete", "k4e", "wheel", "fig1", "outerplanar", "halin", "cubicHalin")
RANDOM_FAMILIES = frozenset({"outerplanar", "halin", "cubicHalin"})
LONG_FACES = (5, 6, 8, 9)
MAX_NEW_FACE = 9


class GeneratorError(ValueError):
    """Raised for unknown families or parameters no graph can satisfy."""


@dataclass(frozen=True)
class GraphBundle:
    """A generated graph with its structural certificates.

    Attributes
    ----------
    graph:
        The generated graph.
    outer_order:
        Outer order of an outerplane embedding, for outerplanar families.
    tree_edges, leaf_order:
        Halin decomposition, for wheels and Halin families.
    provenance:
        Family name, parameters, seed and any family-specific notes (face sizes used).
    """

    graph: Graph
    outer_order: Optional[Tuple[int, ...]] = None
    tree_edges: Optional[Tuple[Edge, ...]] = None
    leaf_order: Optional[Tuple[int, ...]] = None
    provenance: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (self.tree_edges is None) != (self.leaf_order is None):
            raise ValueError("tree_edges and leaf_order must be given together")

    def embedding(self) -> OuterplaneEmbedding:
        if self.outer_order is None:
            raise GeneratorError("bundle carries no outer order")
        return embed(self.graph, self.outer_order)

    def halin(self) -> HalinStructure:
        if self.tree_edges is None:
            raise GeneratorError("bundle carries no Halin decomposition")
        return validate_halin(self.graph, self.tree_edges, self.leaf_order)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _require(params: Mapping[str, Any], name: str, minimum: int) -> int:
    if name not in params:
        raise GeneratorError(f"missing parameter {name!r}")
    value = int(params[name])
    if value < minimum:
        raise GeneratorError(f"parameter {name}={value} must be at least {minimum}")
    return value


# ---------------------------------------------------------------------------
# fixed families
# ---------------------------------------------------------------------------


def cycle_bundle(n: int) -> GraphBundle:
    g = Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    return GraphBundle(g, outer_order=tuple(range(n)))


def path_bundle(n: int) -> GraphBundle:
    return GraphBundle(Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)]), outer_order=tuple(range(n)))


def complete_bundle(n: int) -> GraphBundle:
    g = Graph.from_edges(n, combinations(range(n), 2))
    return GraphBundle(g, outer_order=tuple(range(n)) if n <= 3 else None)


def k4e_bundle() -> GraphBundle:
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    return GraphBundle(g, outer_order=(0, 1, 3, 2))


def fig1_bundle() -> GraphBundle:
    """Five vertices ``v1..v5`` as ids ``0..4``; not 3-tone 10-colorable."""

    g = Graph.from_edges(5, [(0, 1), (1, 4), (4, 3), (3, 2), (2, 0), (1, 2)])
    return GraphBundle(g, outer_order=(0, 1, 4, 3, 2))


def wheel_bundle(d: int) -> GraphBundle:
    """Hub 0 joined to the rim cycle ``1..d``."""

    spokes = [(0, i) for i in range(1, d + 1)]
    rim = [(i, i % d + 1) for i in range(1, d + 1)]
    g = Graph.from_edges(d + 1, spokes + rim)
    return GraphBundle(g, tree_edges=tuple(spokes), leaf_order=tuple(range(1, d + 1)))


# ---------------------------------------------------------------------------
# random outerplanar graphs
# ---------------------------------------------------------------------------


def random_outerplanar(n: int, rng: np.random.Generator, avoid_short_cycles: bool = False) -> GraphBundle:
    """Grow a connected subcubic outerplane graph on exactly ``n`` vertices.

    Starts from a cycle and repeatedly glues a new face onto an outer edge whose ends
    have degree two, hangs a cycle off a vertex by a bridge, or adds a leaf. With
    ``avoid_short_cycles`` every face has length 5, 6, 8 or 9, so the graph has no C3,
    C4 or C7.
    """

    sizes = LONG_FACES if avoid_short_cycles else tuple(range(3, MAX_NEW_FACE + 1))
    if n < min(sizes):
        raise GeneratorError(f"an outerplanar instance needs at least {min(sizes)} vertices, got n={n}")

    start = int(rng.choice([s for s in sizes if s <= n]))
    edges = {canonical_edge(i, (i + 1) % start) for i in range(start)}
    degree = [2] * start
    order = list(range(start))
    faces = [start]

    def attach(v: int) -> int:
        u = len(degree)
        degree.append(0)
        edges.add(canonical_edge(v, u))
        degree[v] += 1
        degree[u] += 1
        return u

    while len(degree) < n:
        room = n - len(degree)
        op = str(rng.choice(["face", "bridge-cycle", "leaf"], p=[0.5, 0.25, 0.25]))
        if op == "face":
            slots = [
                i for i in range(len(order))
                if degree[order[i]] == 2 and degree[order[(i + 1) % len(order)]] == 2
                and canonical_edge(order[i], order[(i + 1) % len(order)]) in edges
            ]
            lengths = [s for s in sizes if s - 2 <= room]
            if not slots or not lengths:
                continue
            i = slots[int(rng.integers(len(slots)))]
            a, b = order[i], order[(i + 1) % len(order)]
            size = int(rng.choice(lengths))
            path, previous = [], a
            for _ in range(size - 2):
                previous = attach(previous)
                path.append(previous)
            edges.add(canonical_edge(previous, b))
            degree[previous] += 1
            degree[b] += 1
            order[i + 1:i + 1] = path
            faces.append(size)
        elif op == "bridge-cycle":
            lengths = [s for s in sizes if s <= room]
            hosts = [v for v in order if degree[v] <= 2]
            if not lengths or not hosts:
                continue
            v = hosts[int(rng.integers(len(hosts)))]
            size = int(rng.choice(lengths))
            ring = [attach(v)]
            for _ in range(size - 1):
                ring.append(attach(ring[-1]))
            edges.add(canonical_edge(ring[0], ring[-1]))
            degree[ring[0]] += 1
            degree[ring[-1]] += 1
            slot = order.index(v) + 1
            order[slot:slot] = ring
            faces.append(size)
        else:
            hosts = [v for v in order if degree[v] <= 2]
            v = hosts[int(rng.integers(len(hosts)))]
            u = attach(v)
            order.insert(order.index(v) + 1, u)

    g = Graph.from_edges(n, edges)
    rotate = order.index(0)
    return GraphBundle(
        g,
        outer_order=tuple(order[rotate:] + order[:rotate]),
        provenance={"face_sizes": faces},
    )


# ---------------------------------------------------------------------------
# random Halin graphs
# ---------------------------------------------------------------------------


def _leaf_sequence(children: Mapping[int, List[int]], root: int) -> List[int]:
    leaves: List[int] = []
    stack = [root]
    while stack:
        v = stack.pop()
        kids = children.get(v, [])
        if not kids:
            leaves.append(v)
        stack.extend(reversed(kids))
    return leaves


def random_halin(n: int, max_degree: int, rng: np.random.Generator, cubic: bool = False) -> GraphBundle:
    """Grow a Halin graph on exactly ``n`` vertices whose maximum degree is ``max_degree``.

    The tree starts as a star with three leaves; random leaves are then expanded into
    internal vertices with 2 to ``max_degree - 1`` children (exactly 2 when cubic), one
    expansion being forced to ``max_degree - 1`` children when the center stays below
    ``max_degree``. The center takes extra leaves only for sizes no three-leaf start
    can reach (the wheel itself, and ``n = max_degree + 4``). The leaf order is the
    depth-first leaf sequence in creation order.
    """

    if cubic:
        max_degree = 3
    if max_degree < 3:
        raise GeneratorError(f"Halin graphs have maximum degree at least 3, got {max_degree}")
    remaining = n - (max_degree + 1)
    if remaining < 0 or remaining == 1 or (max_degree == 3 and remaining % 2):
        raise GeneratorError(f"no Halin graph with maximum degree {max_degree} has n={n} vertices")

    hub_size = max_degree - 1

    def fillable(room: int, needs_hub: bool) -> bool:
        if needs_hub:
            room -= hub_size
        if room < 0 or room == 1:
            return False
        return max_degree > 3 or room % 2 == 0

    center = min(r for r in range(3, max_degree + 1) if fillable(n - 1 - r, r < max_degree))
    needs_hub = center < max_degree
    children: Dict[int, List[int]] = {0: list(range(1, center + 1))}
    leaves = list(range(1, center + 1))
    count = center + 1
    while count < n:
        room = n - count
        sizes = [
            c for c in range(2, min(hub_size, room) + 1)
            if fillable(room - c, needs_hub and c != hub_size)
        ]
        leaf = leaves.pop(int(rng.integers(len(leaves))))
        size = int(rng.choice(sizes))
        needs_hub = needs_hub and size != hub_size
        children[leaf] = list(range(count, count + size))
        leaves.extend(children[leaf])
        count += size

    tree_edges = sorted(canonical_edge(v, c) for v, kids in children.items() for c in kids)
    leaf_order = _leaf_sequence(children, 0)
    ring = [canonical_edge(leaf_order[i], leaf_order[(i + 1) % len(leaf_order)]) for i in range(len(leaf_order))]
    g = Graph.from_edges(n, tree_edges + ring)
    return GraphBundle(g, tree_edges=tuple(tree_edges), leaf_order=tuple(leaf_order))


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def generate(family: str, params: Optional[Mapping[str, Any]] = None, seed: Optional[int] = None) -> GraphBundle:
    """Build one instance of ``family``; random families require a seed."""

    params = dict(params or {})
    if family not in FAMILIES:
        raise GeneratorError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if family in RANDOM_FAMILIES and seed is None:
        raise GeneratorError(f"family {family!r} is random and needs an explicit seed")

    if family == "cycle":
        bundle = cycle_bundle(_require(params, "n", 3))
    elif family == "path":
        bundle = path_bundle(_require(params, "n", 1))
    elif family == "complete":
        bundle = complete_bundle(_require(params, "n", 1))
    elif family == "k4e":
        bundle = k4e_bundle()
    elif family == "fig1":
        bundle = fig1_bundle()
    elif family == "wheel":
        bundle = wheel_bundle(_require(params, "d", 3))
    elif family == "outerplanar":
        bundle = random_outerplanar(
            _require(params, "n", 3), _rng(seed), bool(params.get("avoid_short_cycles", False))
        )
    elif family == "halin":
        bundle = random_halin(_require(params, "n", 4), _require(params, "d", 3), _rng(seed))
    else:
        bundle = random_halin(_require(params, "n", 4), 3, _rng(seed), cubic=True)

    provenance = {"family": family, "params": params, "seed": seed}
    provenance.update(bundle.provenance)
    return GraphBundle(bundle.graph, bundle.outer_order, bundle.tree_edges, bundle.leaf_order, provenance)


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------


class _IsomorphismBuckets:
    """Keeps one representative per isomorphism class, bucketed by WL hash."""

    def __init__(self) -> None:
        self.buckets: Dict[str, List[nx.Graph]] = {}

    def add(self, graph: nx.Graph) -> bool:
        key = nx.weisfeiler_lehman_graph_hash(graph)
        bucket = self.buckets.setdefault(key, [])
        if any(nx.is_isomorphic(graph, other) for other in bucket):
            return False
        bucket.append(graph)
        return True

    def graphs(self) -> Iterator[nx.Graph]:
        for key in sorted(self.buckets):
            yield from self.buckets[key]


def enumerate_subcubic_outerplanar(max_n: int, min_n: int = 3) -> List[GraphBundle]:
    """All connected subcubic outerplanar graphs with ``min_n <= n <= max_n``, up to isomorphism.

    Every such graph on n vertices arises from one on n - 1 vertices by adding a vertex
    joined to one, two or three existing vertices, so the classes are grown level by level.
    """

    level = [nx.empty_graph(1)]
    found: List[GraphBundle] = []
    for n in range(2, max_n + 1):
        seen = _IsomorphismBuckets()
        for base in level:
            open_vertices = [v for v in base if base.degree(v) < 3]
            for size in (1, 2, 3):
                for targets in combinations(open_vertices, size):
                    grown = base.copy()
                    grown.add_edges_from((n - 1, v) for v in targets)
                    seen.add(grown)
        level = []
        for candidate in seen.graphs():
            g, _ = Graph.from_networkx(candidate)
            order = find_outer_order(g)
            if order is None:
                continue
            level.append(candidate)
            if n >= min_n:
                found.append(GraphBundle(g, outer_order=order, provenance={"family": "enumerated-outerplanar"}))
    return found


def _halin_from_rotation(tree: nx.Graph, rotation: Mapping[int, Sequence[int]], root: int) -> List[int]:
    """Leaf sequence of a plane tree given the cyclic neighbor order at every internal vertex."""

    leaves: List[int] = []
    stack: List[Tuple[int, Optional[int]]] = [(root, None)]
    while stack:
        v, parent = stack.pop()
        around = list(rotation.get(v, ()))
        if not around:
            leaves.append(v)
            continue
        if parent is not None:
            cut = around.index(parent)
            around = around[cut + 1:] + around[:cut]
        stack.extend((w, v) for w in reversed(around))
    return leaves


def enumerate_cubic_halin(max_n: int, min_n: int = 6) -> List[GraphBundle]:
    """All cubic Halin graphs with ``min_n <= n <= max_n``, up to isomorphism.

    A cubic Halin graph is fixed by its internal tree (maximum degree 3) and a rotation
    at every internal vertex; each vertex of the internal tree receives ``3 - degree``
    leaves and both cyclic orders of its three neighbors are tried.
    """

    found: List[GraphBundle] = []
    for internal_count in range(2, (max_n - 2) // 2 + 1):
        n = 2 * internal_count + 2
        if n < min_n:
            continue
        seen = _IsomorphismBuckets()
        for inner in nx.nonisomorphic_trees(internal_count):
            if max(d for _, d in inner.degree) > 3:
                continue
            tree = nx.Graph(inner)
            next_id = internal_count
            for v in range(internal_count):
                for _ in range(3 - inner.degree(v)):
                    tree.add_edge(v, next_id)
                    next_id += 1
            choices = [
                [tuple(sorted(tree[v])), (sorted(tree[v])[0],) + tuple(sorted(tree[v])[:0:-1])]
                for v in range(internal_count)
            ]
            for pick in product(*choices):
                rotation = dict(enumerate(pick))
                leaf_order = _halin_from_rotation(tree, rotation, 0)
                ring = [
                    canonical_edge(leaf_order[i], leaf_order[(i + 1) % len(leaf_order)])
                    for i in range(len(leaf_order))
                ]
                graph = nx.Graph(tree)
                graph.add_edges_from(ring)
                if seen.add(graph):
                    g = Graph.from_edges(n, list(tree.edges) + ring)
                    found.append(GraphBundle(
                        g,
                        tree_edges=tuple(sorted(canonical_edge(u, v) for u, v in tree.edges)),
                        leaf_order=tuple(leaf_order),
                        provenance={"family": "enumerated-cubic-halin"},
                    ))
    return found
