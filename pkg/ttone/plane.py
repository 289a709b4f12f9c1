"""Outerplane embeddings, bounded faces and weak duals; Halin decompositions and fans.

Embeddings follow the polygon-with-chords model: the vertices sit on a circle in the
order given by ``outer_order`` and every edge is drawn as a straight chord. The drawing
is outerplane exactly when no two chords interleave.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from ttone.types import Edge, Graph, canonical_edge


class EmbeddingError(RuntimeError):
    """Raised when an outer order is not a valid outerplane embedding of the graph."""


class HalinError(RuntimeError):
    """Raised when a tree/leaf-order pair is not a Halin decomposition of the graph."""


class SingleInternalVertexError(HalinError):
    """Raised by fan selection on a wheel, which has no fan below the root."""


@dataclass(frozen=True)
class FaceSet:
    """Bounded faces, each a vertex cycle starting at its smallest vertex."""

    faces: Tuple[Tuple[int, ...], ...]

    def face_edges(self, index: int) -> List[Edge]:
        face = self.faces[index]
        return [canonical_edge(face[i], face[(i + 1) % len(face)]) for i in range(len(face))]

    def edge_faces(self) -> Dict[Edge, List[int]]:
        owners: Dict[Edge, List[int]] = {}
        for index in range(len(self.faces)):
            for edge in self.face_edges(index):
                owners.setdefault(edge, []).append(index)
        return owners


@dataclass(frozen=True)
class OuterplaneEmbedding:
    graph: Graph
    outer_order: Tuple[int, ...]
    face_set: FaceSet


@dataclass(frozen=True)
class WeakDual:
    """Face adjacency forest.

    Attributes
    ----------
    nodes:
        Face indices into the FaceSet the dual was built from.
    links:
        Pairs of faces sharing an edge.
    pendant_faces:
        Faces with at most one dual neighbor whose cycle holds exactly one degree-3
        vertex or exactly two consecutive degree-3 vertices.
    """

    nodes: Tuple[int, ...]
    links: Tuple[Tuple[int, int], ...]
    pendant_faces: Tuple[int, ...]

    def degree(self, node: int) -> int:
        return sum(node in link for link in self.links)


@dataclass(frozen=True)
class HalinStructure:
    """A Halin graph H = T u C with its tree edges and the cyclic order of the leaves."""

    graph: Graph
    tree_edges: Tuple[Edge, ...]
    leaf_order: Tuple[int, ...]
    internal_vertices: Tuple[int, ...]

    def tree(self) -> nx.Graph:
        tree = nx.Graph()
        tree.add_nodes_from(range(self.graph.n))
        tree.add_edges_from(self.tree_edges)
        return tree

    @property
    def is_wheel(self) -> bool:
        return len(self.internal_vertices) == 1

    @property
    def is_cubic(self) -> bool:
        return all(self.graph.degree(v) == 3 for v in range(self.graph.n))

    def cycle_edges(self) -> List[Edge]:
        m = len(self.leaf_order)
        return sorted(canonical_edge(self.leaf_order[i], self.leaf_order[(i + 1) % m]) for i in range(m))


@dataclass(frozen=True)
class FanDecomposition:
    x: int
    parent: int
    leaf_run: Tuple[int, ...]
    root: int


# ---------------------------------------------------------------------------
# outerplane embeddings
# ---------------------------------------------------------------------------


def canonical_cycle(cycle: Sequence[int]) -> Tuple[int, ...]:
    """Rotate to the smallest vertex and orient so the second vertex is the smaller neighbor."""

    start = cycle.index(min(cycle))
    rotated = list(cycle[start:]) + list(cycle[:start])
    if len(rotated) > 2 and rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[1:][::-1]
    return tuple(rotated)


def _positions(order: Sequence[int], vertices: Iterable[int]) -> Dict[int, int]:
    expected = set(vertices)
    repeated = sorted(v for v, count in Counter(order).items() if count > 1)
    if repeated:
        raise EmbeddingError(f"vertex {repeated[0]} appears more than once in the outer order")
    missing = expected - set(order)
    if missing:
        raise EmbeddingError(f"outer order is missing vertices {sorted(missing)[:10]}")
    extra = set(order) - expected
    if extra:
        raise EmbeddingError(f"outer order names unknown vertices {sorted(extra)[:10]}")
    return {v: i for i, v in enumerate(order)}


def find_crossing(edges: Iterable[Edge], position: Mapping[int, int]) -> Optional[Tuple[Edge, Edge]]:
    """Return two interleaving chords, or None when the drawing is non-crossing."""

    spans = []
    for u, v in edges:
        a, b = sorted((position[u], position[v]))
        spans.append((a, b, (u, v)))
    spans.sort()
    for i, (a, b, e) in enumerate(spans):
        for c, d, f in spans[i + 1:]:
            if c >= b:
                break
            if a < c < b < d:
                return e, f
    return None


def bounded_faces(order: Sequence[int], neighbors: Callable[[int], Iterable[int]]) -> List[Tuple[int, ...]]:
    """Bounded faces of a non-crossing chord drawing, canonically rotated and sorted.

    Every bounded face is found exactly once, from the chord joining its first and last
    vertex along the outer order: starting at the first vertex the face boundary always
    steps to the farthest neighbor that does not pass the chord's far end.
    """

    position = {v: i for i, v in enumerate(order)}
    reach = [sorted(position[w] for w in neighbors(v)) for v in order]
    faces: List[Tuple[int, ...]] = []
    for i, row in enumerate(reach):
        for j in row:
            if j <= i + 1:
                continue
            walk = [i]
            current = i
            while current != j:
                limit = j - 1 if current == i else j
                step = max((p for p in reach[current] if current < p <= limit), default=None)
                if step is None:
                    break
                walk.append(step)
                current = step
            if current == j:
                faces.append(canonical_cycle([order[p] for p in walk]))
    return sorted(faces)


def validate_outerplane(g: Graph, outer_order: Sequence[int]) -> FaceSet:
    """Check ``outer_order`` against ``g`` and return its bounded faces."""

    position = _positions(outer_order, range(g.n))
    if g.n == 0 or not nx.is_connected(g.to_networkx()):
        raise EmbeddingError("outerplane embeddings are defined for connected graphs only")
    crossing = find_crossing(g.edges, position)
    if crossing is not None:
        raise EmbeddingError(f"edge crossing: chords {crossing[0]} and {crossing[1]} interleave")
    faces = bounded_faces(outer_order, g.neighbors)
    expected = len(g.edges) - g.n + 1
    if len(faces) != expected:
        raise EmbeddingError(f"found {len(faces)} bounded faces, expected {expected}")
    return FaceSet(faces=tuple(faces))


def embed(g: Graph, outer_order: Sequence[int]) -> OuterplaneEmbedding:
    face_set = validate_outerplane(g, outer_order)
    return OuterplaneEmbedding(graph=g, outer_order=tuple(outer_order), face_set=face_set)


def find_outer_order(g: Graph) -> Optional[Tuple[int, ...]]:
    """An outer order for a connected outerplanar graph, or None if there is none.

    The graph plus an apex joined to every vertex is planar exactly when the graph is
    outerplanar, and the rotation at the apex lists the vertices around the outer face.
    """

    if g.n == 0 or not nx.is_connected(g.to_networkx()):
        return None
    if g.n <= 2:
        return tuple(range(g.n))
    augmented = g.to_networkx()
    apex = g.n
    augmented.add_edges_from((apex, v) for v in range(g.n))
    is_planar, embedding = nx.check_planarity(augmented)
    if not is_planar:
        return None
    order = list(embedding.neighbors_cw_order(apex))
    start = order.index(0)
    order = order[start:] + order[:start]
    validate_outerplane(g, order)
    return tuple(order)


def is_pendant_cycle(face: Sequence[int], degree: Callable[[int], int]) -> bool:
    heavy = [i for i, v in enumerate(face) if degree(v) >= 3]
    if len(heavy) == 1:
        return True
    if len(heavy) == 2:
        gap = heavy[1] - heavy[0]
        return gap == 1 or gap == len(face) - 1
    return False


def dual_links(faces: Sequence[Sequence[int]]) -> List[Tuple[int, int]]:
    owners: Dict[Edge, List[int]] = {}
    for index, face in enumerate(faces):
        for i in range(len(face)):
            owners.setdefault(canonical_edge(face[i], face[(i + 1) % len(face)]), []).append(index)
    links = {tuple(sorted(pair)) for pair in owners.values() if len(pair) == 2}
    return sorted(links)


def weak_dual(fs: FaceSet, g: Union[Graph, nx.Graph]) -> WeakDual:
    """Face adjacency forest of an embedding, with its pendant faces.

    A face counts as a leaf when it has at most one neighbor in the forest, so a face
    attached to the rest of the graph only through bridges or a cut vertex can be
    pendant. Degrees are read from ``g``, which may be a ``Graph`` or the networkx graph a
    reduction is working on.
    """

    links = dual_links(fs.faces)
    dual = nx.Graph()
    dual.add_nodes_from(range(len(fs.faces)))
    dual.add_edges_from(links)
    if not nx.is_forest(dual):
        raise EmbeddingError("weak dual contains a cycle; the face set is not outerplane")
    pendant = tuple(
        index
        for index, face in enumerate(fs.faces)
        if dual.degree(index) <= 1 and is_pendant_cycle(face, g.degree)
    )
    return WeakDual(nodes=tuple(range(len(fs.faces))), links=tuple(links), pendant_faces=pendant)


def orient_pendant(face: Sequence[int], degree: Callable[[int], int]) -> Tuple[int, ...]:
    """Rotate a pendant face to ``v1 .. vl`` with ``v1`` of degree three.

    When the face holds two degree-3 vertices the second one becomes ``vl``; with a
    single one, ``v2`` is its smaller-id neighbor on the face.
    """

    size = len(face)
    heavy = [i for i, v in enumerate(face) if degree(v) >= 3]
    if not is_pendant_cycle(face, degree):
        raise EmbeddingError(f"face {tuple(face)} is not a pendant face")
    first = heavy[0]
    if len(heavy) == 2 and heavy[1] - heavy[0] == 1:
        first = heavy[1]
    forward = [face[(first + i) % size] for i in range(size)]
    backward = [forward[0]] + forward[1:][::-1]
    if len(heavy) == 2:
        return tuple(forward if degree(forward[-1]) >= 3 else backward)
    return tuple(forward if forward[1] < backward[1] else backward)


# ---------------------------------------------------------------------------
# Halin graphs
# ---------------------------------------------------------------------------


def is_cyclic_interval(positions: Iterable[int], size: int) -> bool:
    members = set(positions)
    if not members or len(members) == size:
        return True
    breaks = sum(1 for p in members if (p + 1) % size not in members)
    return breaks == 1


def validate_halin(g: Graph, tree_edges: Iterable[Sequence[int]], leaf_order: Sequence[int]) -> HalinStructure:
    """Check that ``g`` is the union of the tree and the cycle through its leaves."""

    tree_set = {canonical_edge(int(u), int(v)) for u, v in tree_edges}
    tree = nx.Graph()
    tree.add_nodes_from(range(g.n))
    tree.add_edges_from(tree_set)
    if g.n == 0 or not nx.is_tree(tree):
        raise HalinError("tree edges do not form a spanning tree of the graph")
    degree_two = sorted(v for v in tree if tree.degree(v) == 2)
    if degree_two:
        raise HalinError(f"degree-two-vertex: tree vertex {degree_two[0]} has degree two")
    leaves = sorted(v for v in tree if tree.degree(v) == 1)
    if len(leaves) < 3:
        raise HalinError("the tree needs at least three leaves to close a cycle")
    if len(leaf_order) != len(leaves) or set(leaf_order) != set(leaves):
        raise HalinError("leaf order is not a permutation of the tree's leaves")

    m = len(leaf_order)
    cycle_set = {canonical_edge(leaf_order[i], leaf_order[(i + 1) % m]) for i in range(m)}
    if tree_set & cycle_set or set(g.edges) != tree_set | cycle_set:
        raise HalinError("edge-set mismatch: graph edges differ from tree plus leaf cycle")

    position = {leaf: i for i, leaf in enumerate(leaf_order)}
    root = min(v for v in tree if tree.degree(v) >= 3)
    parents = dict(nx.bfs_predecessors(tree, root))
    below: Dict[int, Set[int]] = {}
    for v in nx.dfs_postorder_nodes(tree, root):
        arc = {position[v]} if v in position else set()
        for w in tree[v]:
            if parents.get(w) == v:
                arc |= below[w]
        below[v] = arc
        if v != root and not is_cyclic_interval(arc, m):
            raise HalinError(
                f"contiguity: leaves below tree edge ({parents[v]}, {v}) are not an arc of the leaf order"
            )

    return HalinStructure(
        graph=g,
        tree_edges=tuple(sorted(tree_set)),
        leaf_order=tuple(int(v) for v in leaf_order),
        internal_vertices=tuple(sorted(v for v in tree if tree.degree(v) >= 3)),
    )


def find_deepest_fan(tree: nx.Graph, leaf_order: Sequence[int], root: int) -> FanDecomposition:
    """Deepest internal vertex below ``root`` with its parent and its run of leaf children.

    Works on any tree/leaf-order pair, including the shrinking ones used by the
    recursive Halin colorer. Ties between equally deep vertices go to the smaller id.
    """

    internal = [v for v in tree if tree.degree(v) > 1]
    if len(internal) < 2:
        raise SingleInternalVertexError(
            "only one internal vertex: the graph is a wheel and has no fan below the root"
        )
    if root not in internal:
        raise HalinError(f"root {root} is not an internal tree vertex")
    depth = nx.single_source_shortest_path_length(tree, root)
    parents = dict(nx.bfs_predecessors(tree, root))
    x = min(internal, key=lambda v: (-depth[v], v))
    children = {w for w in tree[x] if w != parents[x]}
    m = len(leaf_order)
    start = next(
        i for i, leaf in enumerate(leaf_order) if leaf in children and leaf_order[i - 1] not in children
    )
    run = tuple(leaf_order[(start + i) % m] for i in range(len(children)))
    if set(run) != children:
        raise HalinError(f"children of {x} are not consecutive on the leaf cycle")
    return FanDecomposition(x=x, parent=parents[x], leaf_run=run, root=root)


def deepest_fan(h: HalinStructure, root: Optional[int] = None) -> FanDecomposition:
    if root is None:
        root = h.internal_vertices[0]
    return find_deepest_fan(h.tree(), h.leaf_order, root)
