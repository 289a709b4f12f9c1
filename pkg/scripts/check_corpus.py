#!/usr/bin/env python3
"""
Corpus Soundness Checks
=======================

Runs the constructive colorers and the exact solver over seeded corpora and
reports every instance whose result disagrees with the characterization or fails
verification. Unit tests run small samples of the same corpora; this script runs
them at full size.

Checks:
- characterization: exact tau_2 equals the classified value on every enumerated
  subcubic outerplanar graph (n <= 8) and on seeded random ones (n <= 9)
- outerplanar: auto and threegood11 colorings verify on seeded random graphs (n <= 60)
- cubicHalin: the 7-coloring verifies on seeded random cubic Halin graphs (n <= 120)
- halin: the general coloring verifies within the bound (maximum degree 3..20)
- trees: exact tau_2 equals the tree formula on all trees with n <= 10
- wheels: exact tau_2 equals the wheel formula for 3..10 rim vertices

Usage:
    # Everything at full size
    python scripts/check_corpus.py

    # One check, first 20 instances, printing every result
    python scripts/check_corpus.py --check cubicHalin --limit 20 --verbose
"""

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor, as_completed
from datetime import datetime
from pathlib import Path
from typing import Callable, Dict, List, Tuple

import networkx as nx
import numpy as np

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from ttone.config import load_settings
from ttone.generators import enumerate_subcubic_outerplanar, random_halin, random_outerplanar, wheel_bundle
from ttone.graph import verify
from ttone.halin import color_cubic_halin7, color_halin, halin_bound, wheel_tau_formula
from ttone.outerplanar import classify_subcubic_outerplanar, color_subcubic_outerplanar
from ttone.solver import exact_tau
from ttone.trees import color_tree_2tone, tree_tau_formula
from ttone.types import Graph, Mode, SearchBudget

CHECKS = ("characterization", "outerplanar", "cubicHalin", "halin", "trees", "wheels")

Task = Tuple[str, Callable[[], Tuple[bool, str]]]


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def characterization_tasks(seed: int, count: int, budget: SearchBudget) -> List[Task]:
    rng = _rng(seed)
    bundles = enumerate_subcubic_outerplanar(8)
    bundles += [random_outerplanar(int(rng.integers(3, 10)), rng) for _ in range(count)]

    def task(g: Graph) -> Callable[[], Tuple[bool, str]]:
        def run() -> Tuple[bool, str]:
            expected = classify_subcubic_outerplanar(g).tau_class
            tau, _ = exact_tau(g, 2, budget, start=5)
            return tau == expected, f"n={g.n} exact={tau} class={expected}"
        return run

    return [(f"char-{i:04d}", task(b.graph)) for i, b in enumerate(bundles)]


def outerplanar_tasks(seed: int, count: int, budget: SearchBudget) -> List[Task]:
    rng = _rng(seed)
    bundles = [random_outerplanar(int(rng.integers(3, 61)), rng) for _ in range(count)]

    def task(bundle) -> Callable[[], Tuple[bool, str]]:
        def run() -> Tuple[bool, str]:
            emb = bundle.embedding()
            expected = classify_subcubic_outerplanar(bundle.graph).tau_class
            k, coloring, _ = color_subcubic_outerplanar(emb, "auto", budget)
            auto_ok = k == expected and verify(bundle.graph, coloring, Mode.TONE).valid
            k3, coloring3, _ = color_subcubic_outerplanar(emb, "threegood11", budget)
            good_ok = (
                k3 <= 11
                and verify(bundle.graph, coloring3, Mode.THREE_GOOD).valid
                and verify(bundle.graph, coloring3, Mode.TONE).valid
            )
            return auto_ok and good_ok, f"n={bundle.graph.n} auto k={k} (class {expected}), threegood k={k3}"
        return run

    return [(f"outer-{i:04d}", task(b)) for i, b in enumerate(bundles)]


def cubic_halin_tasks(seed: int, count: int, budget: SearchBudget) -> List[Task]:
    rng = _rng(seed)
    bundles = [random_halin(2 * int(rng.integers(3, 61)), 3, rng, cubic=True) for _ in range(count)]

    def task(bundle) -> Callable[[], Tuple[bool, str]]:
        def run() -> Tuple[bool, str]:
            k, coloring = color_cubic_halin7(bundle.halin())
            return k <= 7 and verify(bundle.graph, coloring).valid, f"n={bundle.graph.n} k={k}"
        return run

    return [(f"cubic-{i:04d}", task(b)) for i, b in enumerate(bundles)]


def halin_tasks(seed: int, count: int, budget: SearchBudget) -> List[Task]:
    rng = _rng(seed)
    bundles = []
    for _ in range(count):
        delta = int(rng.integers(3, 21))
        n = delta + 1 + 2 * int(rng.integers(0, 30))
        bundles.append(random_halin(n, delta, rng))

    def task(bundle) -> Callable[[], Tuple[bool, str]]:
        def run() -> Tuple[bool, str]:
            bound = halin_bound(bundle.graph.max_degree)
            k, coloring = color_halin(bundle.halin(), budget)
            ok = k <= bound and verify(bundle.graph, coloring).valid
            return ok, f"n={bundle.graph.n} delta={bundle.graph.max_degree} k={k} bound={bound}"
        return run

    return [(f"halin-{i:04d}", task(b)) for i, b in enumerate(bundles)]


def tree_tasks(seed: int, count: int, budget: SearchBudget) -> List[Task]:
    trees = []
    for n in range(2, 11):
        for tree in nx.nonisomorphic_trees(n):
            if max(d for _, d in tree.degree) <= 6:
                trees.append(Graph.from_networkx(tree)[0])

    def task(g: Graph) -> Callable[[], Tuple[bool, str]]:
        def run() -> Tuple[bool, str]:
            formula = tree_tau_formula(g.max_degree)
            tau, _ = exact_tau(g, 2, budget)
            k, coloring = color_tree_2tone(g)
            ok = tau == formula == k and verify(g, coloring).valid
            return ok, f"n={g.n} delta={g.max_degree} exact={tau} formula={formula} greedy={k}"
        return run

    return [(f"tree-{i:04d}", task(g)) for i, g in enumerate(trees)]


def wheel_tasks(seed: int, count: int, budget: SearchBudget) -> List[Task]:
    def task(d: int) -> Callable[[], Tuple[bool, str]]:
        def run() -> Tuple[bool, str]:
            g = wheel_bundle(d).graph
            formula = wheel_tau_formula(d)
            tau, witness = exact_tau(g, 2, budget)
            ok = tau == formula and verify(g, witness).valid
            return ok, f"d={d} exact={tau} formula={formula}"
        return run

    return [(f"wheel-{d:02d}", task(d)) for d in range(3, 11)]


BUILDERS: Dict[str, Tuple[Callable[[int, int, SearchBudget], List[Task]], int]] = {
    "characterization": (characterization_tasks, 100),
    "outerplanar": (outerplanar_tasks, 200),
    "cubicHalin": (cubic_halin_tasks, 100),
    "halin": (halin_tasks, 50),
    "trees": (tree_tasks, 0),
    "wheels": (wheel_tasks, 0),
}


def run_check(name: str, tasks: List[Task], workers: int, verbose: bool) -> Dict[str, object]:
    print(f"\n{'='*60}")
    print(f"CHECK {name}: {len(tasks)} instances")
    print(f"{'='*60}")

    failures: List[Dict[str, str]] = []
    done = 0
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_id = {executor.submit(run): instance_id for instance_id, run in tasks}
        for future in as_completed(future_to_id):
            instance_id = future_to_id[future]
            done += 1
            try:
                ok, detail = future.result()
            except Exception as exc:
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            if not ok:
                failures.append({"instance": instance_id, "detail": detail})
                print(f"  [{done}/{len(tasks)}] [ERROR] {instance_id}: {detail}")
            elif verbose:
                print(f"  [{done}/{len(tasks)}] [OK] {instance_id}: {detail}")

    failures.sort(key=lambda f: f["instance"])
    status = "[OK]" if not failures else "[ERROR]"
    print(f"{status} {name}: {len(tasks) - len(failures)}/{len(tasks)} passed")
    return {"check": name, "instances": len(tasks), "failures": failures}


def main() -> None:
    parser = argparse.ArgumentParser(description="Run corpus-scale soundness checks")
    parser.add_argument("--check", choices=CHECKS, action="append", help="Run only this check (repeatable)")
    parser.add_argument("--seed", type=int, default=2024, help="Corpus seed (default: 2024)")
    parser.add_argument("--limit", type=int, help="Only the first N instances of each check")
    parser.add_argument("--workers", type=int, help="Worker threads (default: TTONE_SCAN_WORKERS)")
    parser.add_argument("--verbose", action="store_true", help="Print every instance")
    args = parser.parse_args()

    settings = load_settings().override(scan_workers=args.workers)
    workers = settings.scan_workers
    budget = SearchBudget(max_nodes=settings.extension_max_nodes)

    results = []
    for name in args.check or CHECKS:
        build, count = BUILDERS[name]
        tasks = build(args.seed, count, budget)
        if args.limit:
            tasks = tasks[: args.limit]
        results.append(run_check(name, tasks, workers, args.verbose))

    failed = sum(len(r["failures"]) for r in results)
    print(f"\n{'='*60}")
    print(f"SUMMARY: {failed} failure(s) across {len(results)} check(s)")
    print(f"{'='*60}")

    log_dir = settings.log_dir
    log_dir.mkdir(parents=True, exist_ok=True)
    log_file = log_dir / f"corpus_check_{datetime.now().strftime('%Y%m%d_%H%M%S')}.json"
    log_file.write_text(json.dumps({"seed": args.seed, "results": results}, indent=2), encoding="utf-8")
    print(f"[INFO] Results saved to {log_file}")

    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
