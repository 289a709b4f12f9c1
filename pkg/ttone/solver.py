"""Exact backtracking oracle for t-tone colorability and bounded extension search.

Vertices are placed in breadth-first order from a maximum-degree vertex and labels are
tried in lexicographic order. Only pairs close enough to violate the active rule are
checked. Without pre-assigned labels the search also fixes the first label to
``{1..t}`` and only introduces a new color ``c`` after ``c - 1`` is in use; any coloring
can be permuted into that shape, so the pruning never loses a solution.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ttone.graph import ball, check_radius, distances_up_to, pair_allowed, verify
from ttone.types import (
    Graph,
    Label,
    Labeling,
    Mode,
    SearchBudget,
    SolveOutcome,
    SolveStatus,
    label_mask,
)


class SolverError(RuntimeError):
    """Raised when the solver is misused or returns an unsound answer."""


class BudgetExhausted(SolverError):
    """Raised when a search runs out of node budget before reaching a verdict."""


class ColoringError(RuntimeError):
    """Raised when a constructive colorer cannot run on its input."""


class ExtensionError(ColoringError):
    """Raised when a reduction step cannot be undone by any extension."""


class _Timeout(Exception):
    pass


def _require_label_size(mode: Mode, t: int) -> None:
    expected = {Mode.GOOD: 2, Mode.THREE_GOOD: 3}.get(mode)
    if expected is not None and t != expected:
        raise SolverError(f"{mode.value} colorings use labels of size {expected}, got t={t}")


def all_labels(t: int, k: int) -> List[Label]:
    return list(combinations(range(1, k + 1), t))


def search_order(g: Graph) -> List[int]:
    """Breadth-first vertex order from a maximum-degree vertex, component by component."""

    order: List[int] = []
    placed = [False] * g.n
    while len(order) < g.n:
        start = min((v for v in range(g.n) if not placed[v]), key=lambda v: (-g.degree(v), v))
        placed[start] = True
        queue = deque([start])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in g.neighbors(v):
                if not placed[w]:
                    placed[w] = True
                    queue.append(w)
    return order


def _introduces_in_order(label: Label, top: int) -> bool:
    expected = top + 1
    for color in label:
        if color > top:
            if color != expected:
                return False
            expected += 1
    return True


class _Search:
    """Chronological backtracking over a fixed vertex order."""

    def __init__(
        self,
        order: Sequence[int],
        checks: Mapping[int, List[Tuple[int, int]]],
        labels: Sequence[Label],
        mode: Mode,
        t: int,
        max_nodes: int,
        fixed: Optional[Mapping[int, Label]] = None,
        symmetry: bool = False,
    ) -> None:
        self.order = list(order)
        self.checks = checks
        self.labels = [(label, label_mask(label)) for label in labels]
        self.max_nodes = max_nodes
        self.symmetry = symmetry
        self.assigned: Dict[int, int] = {v: label_mask(label) for v, label in (fixed or {}).items()}
        self.chosen: Dict[int, Label] = {}
        self.nodes = 0
        cap = max([d for rows in checks.values() for _, d in rows], default=1)
        self.allowed = [
            [pair_allowed(shared, d, mode) if d else True for shared in range(t + 1)]
            for d in range(cap + 1)
        ]

    def run(self) -> SolveStatus:
        try:
            return SolveStatus.SAT if self._place(0, 0) else SolveStatus.UNSAT
        except _Timeout:
            return SolveStatus.TIMEOUT

    def _place(self, index: int, top: int) -> bool:
        if index == len(self.order):
            return True
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _Timeout()
        v = self.order[index]
        rows = self.checks.get(v, [])
        assigned = self.assigned
        allowed = self.allowed
        for label, mask in self.labels:
            if self.symmetry and not _introduces_in_order(label, top):
                continue
            if all(allowed[d][(mask & assigned[w]).bit_count()] for w, d in rows):
                assigned[v] = mask
                self.chosen[v] = label
                if self._place(index + 1, max(top, label[-1])):
                    return True
        assigned.pop(v, None)
        self.chosen.pop(v, None)
        return False


def decide_colorable(
    g: Graph,
    t: int,
    k: int,
    budget: Optional[SearchBudget] = None,
    mode: Mode = Mode.TONE,
) -> SolveOutcome:
    """Decide whether ``g`` has a ``t``-tone ``k``-coloring (or a good / 3-good one)."""

    if t < 1 or k < t:
        raise SolverError(f"invalid parameters t={t}, k={k}; need 1 <= t <= k")
    mode = Mode(mode)
    _require_label_size(mode, t)
    budget = budget or SearchBudget(max_nodes=5_000_000)
    order = search_order(g)
    position = {v: i for i, v in enumerate(order)}
    checks: Dict[int, List[Tuple[int, int]]] = {v: [] for v in order}
    if g.n > 1:
        for u, v, d in distances_up_to(g, check_radius(mode, t)).pairs():
            if position[u] < position[v]:
                checks[v].append((u, d))
            else:
                checks[u].append((v, d))

    search = _Search(order, checks, all_labels(t, k), mode, t, budget.max_nodes, symmetry=True)
    status = search.run()
    if status is not SolveStatus.SAT:
        return SolveOutcome(status=status, nodes=search.nodes)

    witness = Labeling(t=t, k=k, labels=search.chosen)
    report = verify(g, witness, mode)
    if not report.valid:
        raise SolverError(f"solver produced an invalid witness: {report.violations[0].describe()}")
    return SolveOutcome(status=SolveStatus.SAT, labeling=witness, nodes=search.nodes)


def exact_tau(
    g: Graph,
    t: int,
    budget: Optional[SearchBudget] = None,
    mode: Mode = Mode.TONE,
    start: Optional[int] = None,
) -> Tuple[int, Labeling]:
    """Smallest ``k`` admitting a coloring, with a witness. The budget covers every ``k`` tried."""

    if t < 1:
        raise SolverError("t must be at least 1")
    budget = budget or SearchBudget(max_nodes=5_000_000)
    remaining = budget.max_nodes
    k = max(t, start or t)
    while True:
        outcome = decide_colorable(g, t, k, SearchBudget(max_nodes=remaining), mode)
        if outcome.status is SolveStatus.SAT:
            return k, outcome.labeling
        if outcome.status is SolveStatus.TIMEOUT:
            raise BudgetExhausted(
                f"node budget of {budget.max_nodes} exhausted while deciding k={k} (t={t}, n={g.n})"
            )
        remaining -= outcome.nodes
        if remaining < 1:
            raise BudgetExhausted(
                f"node budget of {budget.max_nodes} exhausted after refuting k={k} (t={t}, n={g.n})"
            )
        k += 1


def extend_labeling(
    adjacency: Mapping[int, Iterable[int]],
    fixed: Mapping[int, Label],
    free: Sequence[int],
    t: int,
    k: int,
    mode: Mode = Mode.TONE,
    budget: Optional[SearchBudget] = None,
) -> SolveOutcome:
    """Label the ``free`` vertices so that every pair within reach obeys ``mode``.

    ``fixed`` labels are kept as they are and are assumed valid among themselves. A SAT
    outcome carries a labeling of the free vertices only.
    """

    mode = Mode(mode)
    budget = budget or SearchBudget(max_nodes=2_000_000)
    radius = check_radius(mode, t)
    free = list(dict.fromkeys(free))
    balls = {v: ball(adjacency, v, radius) for v in free}

    order: List[int] = []
    known = set(fixed)
    pending = set(free)
    while pending:
        v = min(pending, key=lambda u: (-sum(w in known for w in balls[u]), u))
        order.append(v)
        known.add(v)
        pending.discard(v)

    position = {v: i for i, v in enumerate(order)}
    checks = {
        v: [
            (w, d)
            for w, d in balls[v].items()
            if (w in fixed and w not in position) or (w in position and position[w] < position[v])
        ]
        for v in order
    }
    search = _Search(order, checks, all_labels(t, k), mode, t, budget.max_nodes, fixed=fixed)
    status = search.run()
    if status is not SolveStatus.SAT:
        return SolveOutcome(status=status, nodes=search.nodes)
    return SolveOutcome(
        status=SolveStatus.SAT,
        labeling=Labeling(t=t, k=k, labels=search.chosen),
        nodes=search.nodes,
    )


def _fixed_conflict(
    adjacency: Mapping[int, Iterable[int]],
    fixed: Mapping[int, Label],
    new: Sequence[int],
    t: int,
    mode: Mode,
) -> bool:
    """Whether two kept labels near the new vertices already clash."""

    radius = check_radius(mode, t)
    region = set()
    for v in new:
        region.update(w for w in ball(adjacency, v, radius) if w in fixed)
    for u in region:
        for w, d in ball(adjacency, u, radius).items():
            if w in fixed and u < w and not pair_allowed(len(set(fixed[u]) & set(fixed[w])), d, mode):
                return True
    return False


def extend_within(
    adjacency: Mapping[int, Iterable[int]],
    labels: Mapping[int, Label],
    new: Sequence[int],
    t: int,
    k: int,
    mode: Mode = Mode.TONE,
    budget: Optional[SearchBudget] = None,
    radius: int = 2,
) -> Tuple[Dict[int, Label], Tuple[int, ...]]:
    """Label the ``new`` vertices, relabelling retained vertices only as far as needed.

    The search first frees only the new vertices, then every vertex within distance 1 of
    them, and so on up to ``radius``. Returns the merged labels and the freed scope, or
    raises ``ExtensionError`` when no scope admits an extension.
    """

    scope = set(new)
    for reach in range(radius + 1):
        scope = set(new)
        if reach:
            for v in new:
                scope.update(ball(adjacency, v, reach))
        fixed = {v: label for v, label in labels.items() if v not in scope}
        if _fixed_conflict(adjacency, fixed, new, t, mode):
            continue
        outcome = extend_labeling(adjacency, fixed, sorted(scope), t, k, mode, budget)
        if outcome.sat:
            merged = dict(fixed)
            merged.update(outcome.labeling.labels)
            return merged, tuple(sorted(scope))
    raise ExtensionError(
        f"no {Mode(mode).value} {k}-coloring extends to {sorted(new)} within distance {radius}"
        f" (scope {sorted(scope)})"
    )
