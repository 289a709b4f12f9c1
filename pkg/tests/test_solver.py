"""Tests for the exact solver and the bounded extension search."""

import pytest

from ttone.cycles import cycle_graph
from ttone.generators import complete_bundle, fig1_bundle, k4e_bundle, path_bundle, wheel_bundle
from ttone.graph import verify
from ttone.halin import wheel_tau_formula
from ttone.solver import (
    BudgetExhausted,
    ExtensionError,
    SolverError,
    all_labels,
    decide_colorable,
    exact_tau,
    extend_labeling,
    extend_within,
    search_order,
)
from ttone.types import Labeling, Mode, SearchBudget, SolveStatus


def test_all_labels():
    assert len(all_labels(2, 4)) == 6
    assert all_labels(3, 3) == [(1, 2, 3)]


def test_search_order_starts_at_a_max_degree_vertex():
    g = k4e_bundle().graph
    order = search_order(g)
    assert order[0] == 1
    assert sorted(order) == [0, 1, 2, 3]


def test_cycle_values():
    values = [exact_tau(cycle_graph(n), 2)[0] for n in range(3, 13)]
    assert values == [6, 6, 5, 5, 6, 5, 5, 5, 5, 5]


def test_small_wheel_values():
    values = [exact_tau(wheel_bundle(d).graph, 2)[0] for d in range(3, 11)]
    assert values == [8, 8, 7, 7, 8, 7, 7, 8]
    assert values == [wheel_tau_formula(d) for d in range(3, 11)]


def test_point_values():
    assert exact_tau(complete_bundle(4).graph, 2)[0] == 8
    assert exact_tau(k4e_bundle().graph, 2)[0] == 7
    assert exact_tau(path_bundle(3).graph, 2)[0] == 5


def test_three_tone_point_values():
    """K4-e and the five-vertex graph both need 11 colors with 3-labels."""

    assert exact_tau(k4e_bundle().graph, 3)[0] == 11
    assert exact_tau(fig1_bundle().graph, 3)[0] == 11
    assert decide_colorable(fig1_bundle().graph, 3, 10).status is SolveStatus.UNSAT


def test_witnesses_verify():
    g = k4e_bundle().graph
    k, witness = exact_tau(g, 2)
    assert witness.k == k
    assert witness.is_total(g.n)
    assert verify(g, witness).valid


def test_decide_colorable_unsat_below_the_value():
    outcome = decide_colorable(cycle_graph(7), 2, 5)
    assert outcome.status is SolveStatus.UNSAT
    assert outcome.labeling is None
    assert not outcome.sat


def test_good_mode_on_c4():
    k, witness = exact_tau(cycle_graph(4), 2, mode=Mode.GOOD)
    assert k == 6
    assert verify(cycle_graph(4), witness, Mode.GOOD).valid


def test_mode_label_size_mismatch():
    with pytest.raises(SolverError):
        decide_colorable(cycle_graph(5), 3, 9, mode=Mode.GOOD)
    with pytest.raises(SolverError):
        decide_colorable(cycle_graph(5), 2, 1)


def test_budget_exhaustion():
    outcome = decide_colorable(cycle_graph(7), 2, 5, SearchBudget(max_nodes=1))
    assert outcome.status is SolveStatus.TIMEOUT
    with pytest.raises(BudgetExhausted):
        exact_tau(complete_bundle(4).graph, 2, SearchBudget(max_nodes=10))


def test_start_skips_smaller_palettes():
    k, _ = exact_tau(cycle_graph(5), 2, start=6)
    assert k == 6


def test_extend_labeling_keeps_fixed_labels():
    g = path_bundle(3).graph
    adjacency = dict(enumerate(g.adjacency))
    outcome = extend_labeling(adjacency, {0: (1, 2)}, [1, 2], 2, 5)
    assert outcome.sat
    assert set(outcome.labeling.labels) == {1, 2}
    merged = Labeling(t=2, k=5, labels={0: (1, 2), **outcome.labeling.labels})
    assert verify(g, merged).valid


def test_extend_labeling_reports_unsat():
    g = complete_bundle(3).graph
    adjacency = dict(enumerate(g.adjacency))
    outcome = extend_labeling(adjacency, {0: (1, 2), 1: (3, 4)}, [2], 2, 5)
    assert outcome.status is SolveStatus.UNSAT


def test_extend_within_on_a_triangle():
    """Six colors close the triangle; with five no scope works since C3 needs six."""

    g = complete_bundle(3).graph
    adjacency = dict(enumerate(g.adjacency))
    labels, scope = extend_within(adjacency, {0: (1, 2), 1: (3, 4)}, [2], 2, 6)
    assert 2 in scope
    assert verify(g, Labeling(t=2, k=6, labels=labels)).valid
    with pytest.raises(ExtensionError):
        extend_within(adjacency, {0: (1, 2), 1: (3, 4)}, [2], 2, 5)
