"""Cycle colorings: 2-tone, good 2-tone and 3-good."""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from ttone.graph import pair_allowed, verify
from ttone.solver import ColoringError, all_labels, extend_within
from ttone.types import Graph, Label, Labeling, Mode, SearchBudget

SCHEMES = ("tone", "good6", "threegood11")
SIX_COLOR_CYCLES = frozenset({3, 4, 7})

GOOD6_COLORINGS: Dict[int, Tuple[Label, ...]] = {
    3: ((1, 2), (3, 4), (5, 6)),
    4: ((1, 2), (3, 4), (1, 5), (3, 6)),
    7: ((1, 2), (3, 4), (1, 5), (2, 4), (1, 3), (2, 5), (3, 6)),
}

THREE_GOOD_BASES: Dict[int, Tuple[Label, ...]] = {
    3: ((1, 2, 3), (4, 5, 6), (7, 8, 9)),
    4: ((1, 2, 3), (4, 5, 6), (1, 7, 8), (4, 9, 10)),
}


def cycle_tau_formula(n: int) -> int:
    """2-tone chromatic number of the cycle C_n."""

    if n < 3:
        raise ValueError(f"cycles have at least 3 vertices, got n={n}")
    return 6 if n in SIX_COLOR_CYCLES else 5


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _cycle_distance(n: int, i: int, j: int) -> int:
    gap = abs(i - j)
    return min(gap, n - gap)


def _tone_cycle(n: int, k: int, mode: Mode = Mode.TONE) -> Optional[List[Label]]:
    """Transfer-matrix search for a 2-tone (or good) k-coloring of C_n with v0=12 and v1=34.

    States are the labels of the last two placed vertices; the labels of v0 and v1 are
    fixed, so wrap-around pairs are checked directly against them.
    """

    labels = all_labels(2, k)
    first, second = (1, 2), (3, 4)
    if k < 4:
        return None

    def fits(a: Label, b: Label, d: int) -> bool:
        return pair_allowed(len(set(a) & set(b)), d, mode)

    if not fits(first, second, 1):
        return None
    layers: List[Dict[Tuple[Label, Label], Optional[Tuple[Label, Label]]]] = [{(first, second): None}]
    for i in range(2, n):
        anchors = [(j, lab) for j, lab in ((0, first), (1, second)) if j < i - 2]
        layer: Dict[Tuple[Label, Label], Optional[Tuple[Label, Label]]] = {}
        for state in layers[-1]:
            prev, cur = state
            for label in labels:
                if not fits(cur, label, 1) or not fits(prev, label, _cycle_distance(n, i - 2, i)):
                    continue
                if any(
                    _cycle_distance(n, j, i) <= 2 and not fits(lab, label, _cycle_distance(n, j, i))
                    for j, lab in anchors
                ):
                    continue
                layer.setdefault((cur, label), state)
        if not layer:
            return None
        layers.append(layer)

    state = next(iter(layers[-1]))
    result = [state[1]]
    for index in range(len(layers) - 1, 0, -1):
        state = layers[index][state]
        result.append(state[1])
    result.append(first)
    result.reverse()
    return result


def _three_good_cycle(n: int, budget: Optional[SearchBudget]) -> List[Label]:
    """Grow C_n from C_4 by inserting one vertex at a time between the first two ring vertices."""

    ring = list(range(4))
    labels: Dict[int, Label] = dict(enumerate(THREE_GOOD_BASES[4]))
    for new in range(4, n):
        ring.insert(1, new)
        size = len(ring)
        adjacency = {v: (ring[i - 1], ring[(i + 1) % size]) for i, v in enumerate(ring)}
        labels, _ = extend_within(adjacency, labels, [new], 3, 11, Mode.THREE_GOOD, budget)
    return [labels[v] for v in ring]


def color_cycle(n: int, scheme: str = "tone", budget: Optional[SearchBudget] = None) -> Labeling:
    """Color C_n (vertices ``0..n-1`` in cycle order) with one of ``SCHEMES``.

    ``tone`` uses the optimal palette, ``good6`` gives a good 2-tone coloring with at most
    six colors and ``threegood11`` a 3-good 11-coloring. The result is verified before it
    is returned.
    """

    if n < 3:
        raise ColoringError(f"cycles have at least 3 vertices, got n={n}")
    if scheme not in SCHEMES:
        raise ColoringError(f"unknown cycle scheme {scheme!r}; expected one of {SCHEMES}")

    if scheme == "threegood11":
        t, k, mode = 3, 11, Mode.THREE_GOOD
        labels = list(THREE_GOOD_BASES[n]) if n in THREE_GOOD_BASES else _three_good_cycle(n, budget)
    elif scheme == "good6" and n in GOOD6_COLORINGS:
        t, k, mode = 2, 6, Mode.GOOD
        labels = list(GOOD6_COLORINGS[n])
    elif scheme == "good6":
        t, k, mode, labels = 2, 6, Mode.GOOD, None
        for palette in (5, 6):
            labels = _tone_cycle(n, palette, mode)
            if labels is not None:
                k = palette
                break
        if labels is None:
            raise ColoringError(f"no good 2-tone 6-coloring of C_{n} found")
    else:
        t, k, mode = 2, cycle_tau_formula(n), Mode.TONE
        labels = _tone_cycle(n, k)
        if labels is None:
            raise ColoringError(f"no 2-tone {k}-coloring of C_{n} found")

    coloring = Labeling(t=t, k=k, labels=dict(enumerate(labels)))
    report = verify(cycle_graph(n), coloring, mode)
    if not report.valid:
        raise ColoringError(f"cycle coloring of C_{n} is invalid: {report.violations[0].describe()}")
    return coloring
