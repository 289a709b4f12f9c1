"""Tests for the Halin colorers, the wheel base and the closed-form bounds."""

import networkx as nx
import numpy as np
import pytest

from ttone.generators import enumerate_cubic_halin, random_halin, wheel_bundle
from ttone.graph import verify
from ttone.halin import (
    L_LABELS,
    LLabel,
    color_cubic_halin7,
    color_halin,
    color_wheel_base,
    halin_bound,
    wheel_tau_formula,
)
from ttone.solver import ColoringError, exact_tau
from ttone.types import Graph, Labeling


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def test_halin_bound_spot_values():
    assert [halin_bound(d) for d in (3, 8, 12, 17)] == [10, 10, 11, 12]
    with pytest.raises(ValueError):
        halin_bound(2)


def test_wheel_formula():
    assert [wheel_tau_formula(d) for d in range(3, 11)] == [8, 8, 7, 7, 8, 7, 7, 8]
    assert wheel_tau_formula(15) == 8
    assert wheel_tau_formula(16) == 9
    with pytest.raises(ValueError):
        wheel_tau_formula(2)


def test_l_labels():
    assert len(L_LABELS) == 10
    label = LLabel((3, 6))
    assert (label.big, label.small) == (6, 3)
    with pytest.raises(ValueError):
        LLabel((1, 2))
    with pytest.raises(ValueError):
        LLabel((6, 7))


def test_cubic_halin7_on_every_small_cubic_halin_graph():
    bundles = enumerate_cubic_halin(12)
    assert bundles
    for bundle in bundles:
        k, coloring = color_cubic_halin7(bundle.halin())
        assert k == 7
        assert verify(bundle.graph, coloring).valid


@pytest.mark.parametrize("seed", range(15))
def test_cubic_halin7_on_random_graphs(seed):
    rng = _rng(seed)
    bundle = random_halin(2 * int(rng.integers(3, 41)), 3, rng, cubic=True)
    k, coloring = color_cubic_halin7(bundle.halin())
    assert k == 7
    assert coloring.colors_used() <= set(range(1, 8))
    assert verify(bundle.graph, coloring).valid


def test_cubic_halin7_preconditions():
    with pytest.raises(ColoringError, match="n=4"):
        color_cubic_halin7(wheel_bundle(3).halin())
    with pytest.raises(ColoringError, match="not cubic"):
        color_cubic_halin7(wheel_bundle(6).halin())


def test_small_cubic_halin_graphs_need_at_most_seven_colors():
    for bundle in enumerate_cubic_halin(8):
        assert exact_tau(bundle.graph, 2)[0] <= 7


@pytest.mark.parametrize("d", [3, 5, 9, 14])
def test_wheel_base(d):
    graph = nx.wheel_graph(d + 1)
    labels = color_wheel_base(graph, 0, list(range(1, d + 1)), halin_bound(d))
    assert labels[0] == (1, 2)
    g, _ = Graph.from_networkx(graph)
    assert verify(g, Labeling(t=2, k=halin_bound(d), labels=labels)).valid


@pytest.mark.parametrize("d", range(3, 10))
def test_color_halin_on_wheels(d):
    bundle = wheel_bundle(d)
    k, coloring = color_halin(bundle.halin())
    assert k == halin_bound(d)
    assert verify(bundle.graph, coloring).valid


@pytest.mark.parametrize("seed", range(12))
def test_color_halin_on_random_graphs(seed):
    rng = _rng(50 + seed)
    delta = int(rng.integers(3, 13))
    bundle = random_halin(delta + 1 + 2 * int(rng.integers(1, 15)), delta, rng)
    k, coloring = color_halin(bundle.halin())
    assert bundle.graph.max_degree == delta
    assert k == halin_bound(delta)
    assert verify(bundle.graph, coloring).valid
