"""Tests for outerplane embeddings, weak duals, Halin validation and fan selection."""

import pytest

from ttone.cycles import cycle_graph
from ttone.generators import complete_bundle, fig1_bundle, k4e_bundle, wheel_bundle
from ttone.plane import (
    EmbeddingError,
    HalinError,
    SingleInternalVertexError,
    canonical_cycle,
    deepest_fan,
    embed,
    find_outer_order,
    is_cyclic_interval,
    is_pendant_cycle,
    orient_pendant,
    validate_halin,
    validate_outerplane,
    weak_dual,
)
from ttone.types import Graph


def _small_cubic_halin():
    """Internal edge 0-1; leaves 2, 3 hang from 0 and leaves 4, 5 from 1."""

    tree = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]
    ring = [(2, 3), (3, 4), (4, 5), (2, 5)]
    return Graph.from_edges(6, tree + ring), tree, (2, 3, 4, 5)


def test_canonical_cycle():
    assert canonical_cycle([3, 1, 2]) == (1, 2, 3)
    assert canonical_cycle([2, 4, 1, 3]) == (1, 3, 2, 4)


def test_k4e_faces():
    fs = validate_outerplane(k4e_bundle().graph, (0, 1, 3, 2))
    assert {frozenset(face) for face in fs.faces} == {frozenset({0, 1, 2}), frozenset({1, 2, 3})}
    owners = fs.edge_faces()
    assert len(owners[(1, 2)]) == 2


def test_crossing_chords_are_rejected():
    with pytest.raises(EmbeddingError):
        validate_outerplane(complete_bundle(4).graph, (0, 1, 2, 3))
    with pytest.raises(EmbeddingError):
        validate_outerplane(k4e_bundle().graph, (0, 1, 2, 3))


def test_outer_order_must_be_a_permutation():
    with pytest.raises(EmbeddingError):
        validate_outerplane(cycle_graph(4), (0, 1, 2))
    with pytest.raises(EmbeddingError):
        validate_outerplane(cycle_graph(4), (0, 1, 2, 2))


def test_find_outer_order():
    assert find_outer_order(complete_bundle(4).graph) is None
    k23 = Graph.from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    assert find_outer_order(k23) is None
    order = find_outer_order(fig1_bundle().graph)
    assert order is not None
    assert len(embed(fig1_bundle().graph, order).face_set.faces) == 2


def test_weak_dual_of_fig1():
    g = fig1_bundle().graph
    fs = validate_outerplane(g, fig1_bundle().outer_order)
    dual = weak_dual(fs, g)
    assert dual.links == ((0, 1),)
    assert dual.pendant_faces == (0, 1)
    assert dual.degree(0) == 1


def test_weak_dual_of_small_graphs():
    c6 = cycle_graph(6)
    dual = weak_dual(validate_outerplane(c6, range(6)), c6)
    assert (dual.nodes, dual.links, dual.pendant_faces) == ((0,), (), ())

    g = k4e_bundle().graph
    dual = weak_dual(validate_outerplane(g, k4e_bundle().outer_order), g)
    assert dual.links == ((0, 1),)
    assert dual.pendant_faces == (0, 1)


def test_faces_behind_cut_vertices_can_be_pendant():
    tailed = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5)])
    order = find_outer_order(tailed)
    assert weak_dual(validate_outerplane(tailed, order), tailed).pendant_faces == (0,)

    bridged = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
    fs = validate_outerplane(bridged, find_outer_order(bridged))
    dual = weak_dual(fs, bridged)
    assert fs.faces == ((0, 1, 2), (3, 4, 5))
    assert dual.links == ()
    assert dual.pendant_faces == (0, 1)


def test_pendant_cycle_rules():
    degrees = {0: 3, 1: 2, 2: 2, 3: 3, 4: 2}
    assert is_pendant_cycle((0, 1, 2, 3, 4), degrees.get) is False
    assert is_pendant_cycle((3, 0, 1, 2, 4), degrees.get) is True
    assert is_pendant_cycle((1, 2, 4), degrees.get) is False


def test_orient_pendant_puts_heavy_vertices_at_the_ends():
    g = fig1_bundle().graph
    face = orient_pendant((0, 1, 2), g.degree)
    assert set(face) == {0, 1, 2}
    assert g.degree(face[0]) == 3
    assert g.degree(face[-1]) == 3
    single = orient_pendant((0, 1, 2, 3, 4), {0: 3, 1: 2, 2: 2, 3: 2, 4: 2}.get)
    assert single == (0, 1, 2, 3, 4)
    with pytest.raises(EmbeddingError):
        orient_pendant((0, 1, 2, 3, 4), lambda v: 2)


def test_cyclic_intervals():
    assert is_cyclic_interval({4, 0}, 5)
    assert is_cyclic_interval({1, 2, 3}, 5)
    assert not is_cyclic_interval({0, 2}, 5)


def test_wheels_are_halin_graphs():
    wheel = wheel_bundle(5).halin()
    assert wheel.is_wheel
    assert not wheel.is_cubic
    assert wheel.internal_vertices == (0,)
    assert wheel_bundle(3).halin().is_cubic
    with pytest.raises(SingleInternalVertexError):
        deepest_fan(wheel)


def test_validate_halin_accepts_the_small_cubic_graph():
    g, tree, leaves = _small_cubic_halin()
    h = validate_halin(g, tree, leaves)
    assert h.is_cubic
    assert h.internal_vertices == (0, 1)
    assert h.cycle_edges() == [(2, 3), (2, 5), (3, 4), (4, 5)]


def test_validate_halin_rejections():
    g, tree, _ = _small_cubic_halin()
    with pytest.raises(HalinError, match="edge-set mismatch"):
        validate_halin(g, tree, (2, 4, 3, 5))
    crossed = Graph.from_edges(6, tree + [(2, 4), (3, 4), (3, 5), (2, 5)])
    with pytest.raises(HalinError, match="contiguity"):
        validate_halin(crossed, tree, (2, 4, 3, 5))
    with pytest.raises(HalinError, match="permutation"):
        validate_halin(g, tree, (2, 3, 4))
    path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    with pytest.raises(HalinError, match="degree-two-vertex"):
        validate_halin(path, [(0, 1), (1, 2), (2, 3)], (0, 3))


def test_deepest_fan_of_the_small_cubic_graph():
    g, tree, leaves = _small_cubic_halin()
    fan = deepest_fan(validate_halin(g, tree, leaves))
    assert (fan.x, fan.parent, fan.root) == (1, 0, 0)
    assert fan.leaf_run == (4, 5)
