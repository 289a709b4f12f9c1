"""Searches for counterexample candidates to two open conjectures. Reports, never asserts.

``halin6`` computes the exact 2-tone chromatic number of cubic Halin graphs and flags
any graph needing 7 colors. ``toneStep`` computes tau_2 .. tau_tMax of subcubic
outerplanar graphs and checks tau_t <= tau_(t-1) + t + 1 for every t >= 3.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ttone.generators import (
    GraphBundle,
    enumerate_cubic_halin,
    enumerate_subcubic_outerplanar,
    random_halin,
    random_outerplanar,
)
from ttone.solver import BudgetExhausted, exact_tau
from ttone.trees import tree_tau_formula
from ttone.types import Edge, Graph, SearchBudget

CONJECTURES = ("halin6", "toneStep")
HALIN_ENUMERATION_LIMIT = 12
OUTERPLANAR_ENUMERATION_LIMIT = 7


@dataclass(frozen=True)
class ScanRow:
    """Result for one scanned instance.

    Attributes
    ----------
    instance_id:
        ``enum-NNNN`` for enumerated instances, ``rand-NNNN`` for sampled ones.
    taus:
        Exact t-tone chromatic numbers computed, keyed by t.
    status:
        ``"ok"`` or ``"budget-exhausted"``.
    holds:
        Whether the conjectured inequality holds; None when it could not be decided.
    edges:
        Edge list, kept only for counterexample candidates.
    """

    instance_id: str
    n: int
    taus: Dict[int, int]
    status: str
    holds: Optional[bool]
    note: str = ""
    edges: Tuple[Edge, ...] = ()

    @property
    def candidate(self) -> bool:
        return self.holds is False


@dataclass(frozen=True)
class ScanReport:
    which: str
    params: Dict[str, Any]
    rows: Tuple[ScanRow, ...] = field(default_factory=tuple)

    @property
    def candidates(self) -> List[ScanRow]:
        return [row for row in self.rows if row.candidate]

    @property
    def exhausted(self) -> List[ScanRow]:
        return [row for row in self.rows if row.status != "ok"]

    def csv_rows(self) -> List[List[str]]:
        t_values = sorted({t for row in self.rows for t in row.taus})
        header = ["instance_id", "n"] + [f"tau{t}" for t in t_values] + ["status", "holds", "note", "edges"]
        body = [
            [row.instance_id, str(row.n)]
            + [str(row.taus.get(t, "")) for t in t_values]
            + [
                row.status,
                "" if row.holds is None else str(row.holds).lower(),
                row.note,
                " ".join(f"{u}-{v}" for u, v in row.edges),
            ]
            for row in self.rows
        ]
        return [header] + body


def _instances(which: str, max_n: int, count: int, seed: int) -> List[Tuple[str, GraphBundle]]:
    rng = np.random.Generator(np.random.PCG64(seed))
    if which == "halin6":
        enumerated = enumerate_cubic_halin(min(max_n, HALIN_ENUMERATION_LIMIT))
        sizes = list(range(HALIN_ENUMERATION_LIMIT + 2, max_n + 1, 2))
        sampled = [
            random_halin(int(rng.choice(sizes)), 3, rng, cubic=True) for _ in range(count if sizes else 0)
        ]
    else:
        enumerated = enumerate_subcubic_outerplanar(min(max_n, OUTERPLANAR_ENUMERATION_LIMIT))
        sizes = list(range(OUTERPLANAR_ENUMERATION_LIMIT + 1, max_n + 1))
        sampled = [random_outerplanar(int(rng.choice(sizes)), rng) for _ in range(count if sizes else 0)]
    return [(f"enum-{i:04d}", b) for i, b in enumerate(enumerated)] + [
        (f"rand-{i:04d}", b) for i, b in enumerate(sampled)
    ]


def _lower_bound(g: Graph) -> int:
    """Every graph contains the star on its maximum degree."""

    return tree_tau_formula(g.max_degree) if g.max_degree else 2


def _scan_one(which: str, instance_id: str, g: Graph, t_max: int, budget: SearchBudget) -> ScanRow:
    taus: Dict[int, int] = {}
    try:
        taus[2], _ = exact_tau(g, 2, budget, start=_lower_bound(g))
        if which == "halin6":
            holds = taus[2] <= 6
        else:
            for t in range(3, t_max + 1):
                taus[t], _ = exact_tau(g, t, budget, start=taus[t - 1])
            holds = all(taus[t] <= taus[t - 1] + t + 1 for t in range(3, t_max + 1))
    except BudgetExhausted as exc:
        return ScanRow(instance_id, g.n, taus, "budget-exhausted", None, note=str(exc))
    return ScanRow(instance_id, g.n, taus, "ok", holds, edges=() if holds else g.edges)


def scan_conjecture(
    which: str,
    max_n: int,
    count: int = 0,
    seed: int = 0,
    t_max: int = 3,
    budget: Optional[SearchBudget] = None,
    workers: int = 4,
    on_row: Optional[Callable[[ScanRow], None]] = None,
) -> ScanReport:
    """Scan enumerated instances up to the tiny limit plus ``count`` seeded samples above it.

    Rows are returned sorted by instance id whatever order the workers finish in.
    ``on_row`` is called from the collecting thread as each row arrives.
    """

    if which not in CONJECTURES:
        raise ValueError(f"unknown conjecture {which!r}; expected one of {CONJECTURES}")
    if which == "toneStep" and t_max != 3:
        raise ValueError(f"toneStep compares tau_3 with tau_2 only; got t_max={t_max}")
    budget = budget or SearchBudget(max_nodes=5_000_000)
    instances = _instances(which, max_n, count, seed)

    rows: List[ScanRow] = []
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_id = {
            executor.submit(_scan_one, which, instance_id, bundle.graph, t_max, budget): instance_id
            for instance_id, bundle in instances
        }
        for future in as_completed(future_to_id):
            row = future.result()
            rows.append(row)
            if on_row is not None:
                on_row(row)

    params = {"max_n": max_n, "count": count, "seed": seed, "t_max": t_max}
    return ScanReport(which=which, params=params, rows=tuple(sorted(rows, key=lambda r: r.instance_id)))
