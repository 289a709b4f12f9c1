#!/usr/bin/env python3
"""
t-tone coloring toolkit: command-line runner.

Subcommands:
  generate   build a graph file for a named family (random families need --seed)
  color      color a graph with a constructive method and self-check the result
  exact      compute the exact t-tone chromatic number with a witness
  verify     check a coloring file against a graph file
  classify   2-tone class (5, 6 or 7) of a subcubic outerplanar graph
  table      CSV of exact values next to the closed-form formulas
  scan       search for counterexample candidates to an open conjecture
  export     DOT text for rendering

Exit codes: 0 ok, 1 malformed input or parameters, 2 verification or precondition
failure, 3 solver budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ttone.config import Settings, load_settings
from ttone.cycles import cycle_graph, cycle_tau_formula
from ttone.generators import FAMILIES, GeneratorError, GraphBundle, generate, wheel_bundle
from ttone.graph import VerificationError, verify
from ttone.halin import color_cubic_halin7, color_halin, wheel_tau_formula
from ttone.outerplanar import TARGETS, classify_subcubic_outerplanar, color_subcubic_outerplanar
from ttone.plane import EmbeddingError, HalinError, embed, find_outer_order
from ttone.scanner import ScanRow, scan_conjecture
from ttone.solver import BudgetExhausted, ColoringError, SolverError, exact_tau
from ttone.trees import color_tree_2tone, tree_tau_formula
from ttone.types import Graph, GraphError, LabelingError, Mode, ReductionTrace, SearchBudget
from utils.graph_io import GraphFileError, read_coloring, read_graph, save_text_file, write_coloring, write_graph
from utils.step_logger import StepLogger
from visualizer import create_dot

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_FAILED = 2
EXIT_BUDGET = 3

COLOR_METHODS = TARGETS + ("halin7", "halin", "tree")
TABLES = ("cycles", "wheels", "trees")
SCAN_NAMES = {"halin6": "halin6", "tone-step": "toneStep", "toneStep": "toneStep"}


class UsageError(ValueError):
    """Raised for malformed command-line parameters."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def banner(title: str) -> None:
    print(f"\n{'='*60}")
    print(title)
    print(f"{'='*60}")


def parse_range(text: str) -> Tuple[int, int]:
    """``"3..12"`` to ``(3, 12)``."""

    try:
        low, high = (int(part) for part in text.split(".."))
    except ValueError:
        raise UsageError(f"range must look like A..B, got {text!r}") from None
    if low > high:
        raise UsageError(f"empty range {text!r}")
    return low, high


def _budget(settings: Settings) -> SearchBudget:
    return SearchBudget(max_nodes=settings.max_nodes)


def _csv_text(rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(rows)
    return buffer.getvalue()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        save_text_file(text, Path(out))
        print(f"[OK] Wrote {out}")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_generate(args: argparse.Namespace, settings: Settings) -> int:
    params: Dict[str, Any] = {}
    if args.n is not None:
        params["n"] = args.n
    if args.d is not None:
        params["d"] = args.d
    if args.avoid_short_cycles:
        params["avoid_short_cycles"] = True
    bundle = generate(args.family, params, args.seed)
    write_graph(bundle, Path(args.out))
    print(f"[OK] {args.family}: n={bundle.graph.n}, m={len(bundle.graph.edges)} -> {args.out}")
    return EXIT_OK


def _outerplane(bundle: GraphBundle):
    if bundle.outer_order is not None:
        return bundle.embedding()
    order = find_outer_order(bundle.graph)
    if order is None:
        raise ColoringError("precondition failed: graph is not a connected outerplanar graph")
    return embed(bundle.graph, order)


def _log_trace(logger: StepLogger, trace: ReductionTrace) -> None:
    for index, step in enumerate(trace.steps):
        logger.log_step_start(f"reduction_{step.kind}", {"index": index})
        logger.log_terminal_output(f"{step.kind}: removed {list(step.removed)}, added {list(step.added_edges)}")
        logger.log_step_complete(step.as_dict(), {"removed": len(step.removed)})


def cmd_color(args: argparse.Namespace, settings: Settings) -> int:
    method = args.method
    expected_t = 3 if method == "threegood11" else 2
    if args.t != expected_t:
        raise UsageError(f"method {method} produces {expected_t}-labels, not t={args.t}")

    bundle = read_graph(Path(args.input))
    g = bundle.graph
    logger = StepLogger.from_settings(f"color_{method}", settings)
    extension_budget = SearchBudget(max_nodes=settings.extension_max_nodes)
    mode = Mode.TONE

    if method in TARGETS:
        k, coloring, trace = color_subcubic_outerplanar(
            _outerplane(bundle), method, extension_budget, _budget(settings)
        )
        mode = {"good6": Mode.GOOD, "threegood11": Mode.THREE_GOOD}.get(method, Mode.TONE)
        if method == "auto" and k == 6:
            mode = Mode.GOOD
        _log_trace(logger, trace)
        print(f"[INFO] {len(trace.steps)} reductions, base {trace.base}")
    elif method == "tree":
        k, coloring = color_tree_2tone(g)
    else:
        if bundle.tree_edges is None:
            raise ColoringError("precondition failed: graph file carries no Halin decomposition")
        if method == "halin7":
            k, coloring = color_cubic_halin7(bundle.halin())
        else:
            k, coloring = color_halin(bundle.halin(), extension_budget)

    report = verify(g, coloring, mode)
    if not report.valid:
        print(f"[ERROR] {method} output failed self-check: {report.violations[0].describe()}", file=sys.stderr)
        return EXIT_FAILED
    if mode is not Mode.TONE and not verify(g, coloring, Mode.TONE).valid:
        print(f"[ERROR] {method} output is not a plain {coloring.t}-tone coloring", file=sys.stderr)
        return EXIT_FAILED

    write_coloring(coloring, Path(args.out))
    logger.log_final_output({"method": method, "n": g.n, "t": coloring.t, "k": k, "mode": mode.value})
    print(k)
    return EXIT_OK


def witness_path(input_path: Path) -> Path:
    """``graphs/k4e.json`` to ``graphs/k4e.witness.json``."""

    return input_path.with_name(f"{input_path.stem}.witness.json")


def check_label_size(t: int, mode: Mode) -> None:
    if t < 1:
        raise UsageError(f"t must be at least 1, got {t}")
    expected = {Mode.GOOD: 2, Mode.THREE_GOOD: 3}.get(mode)
    if expected is not None and t != expected:
        raise UsageError(f"mode {mode.value} uses labels of size {expected}, not t={t}")


def cmd_exact(args: argparse.Namespace, settings: Settings) -> int:
    source = Path(args.input)
    mode = Mode.parse(args.mode)
    check_label_size(args.t, mode)
    bundle = read_graph(source)
    tau, witness = exact_tau(bundle.graph, args.t, _budget(settings), mode)
    write_coloring(witness, Path(args.out) if args.out else witness_path(source))
    print(tau)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    mode = Mode.parse(args.mode)
    check_label_size(args.t, mode)
    bundle = read_graph(Path(args.graph))
    coloring = read_coloring(Path(args.coloring))
    if coloring.t != args.t:
        raise UsageError(f"coloring file holds {coloring.t}-labels, expected t={args.t}")
    report = verify(bundle.graph, coloring, mode)
    if report.valid:
        print(f"valid ({coloring.t}-labels over 1..{coloring.k})")
        return EXIT_OK
    print(f"invalid: {len(report.violations)} violation(s)")
    for violation in report.violations[: args.show]:
        print(f"  - {violation.describe()}")
    return EXIT_FAILED


def cmd_classify(args: argparse.Namespace, settings: Settings) -> int:
    bundle = read_graph(Path(args.input))
    result = classify_subcubic_outerplanar(bundle.graph)
    print(result.tau_class)
    if result.witness is not None:
        print(f"witness {result.witness}: {' '.join(str(v) for v in result.witness_vertices)}")
    else:
        print("witness none (no C3, C4, C7 or K4-e)")
    return EXIT_OK


def _star(delta: int) -> Graph:
    return Graph.from_edges(delta + 1, [(0, i) for i in range(1, delta + 1)])


def cmd_table(args: argparse.Namespace, settings: Settings) -> int:
    low, high = parse_range(args.range)
    budget = _budget(settings)
    builders: Dict[str, Tuple[str, int, Callable[[int], Graph], Callable[[int], int]]] = {
        "cycles": ("n", 3, cycle_graph, cycle_tau_formula),
        "wheels": ("d", 3, lambda d: wheel_bundle(d).graph, wheel_tau_formula),
        "trees": ("delta", 1, _star, tree_tau_formula),
    }
    column, minimum, build, formula = builders[args.name]
    if low < minimum:
        raise UsageError(f"table {args.name} starts at {column}={minimum}")

    rows: List[List[Any]] = [[column, "exact", "formula", "match"]]
    for value in range(low, high + 1):
        tau, _ = exact_tau(build(value), 2, budget)
        expected = formula(value)
        rows.append([value, tau, expected, str(tau == expected).lower()])
    _emit(_csv_text(rows), args.out)
    mismatches = [row for row in rows[1:] if row[3] != "true"]
    if mismatches:
        print(f"[WARN] {len(mismatches)} row(s) differ from the formula", file=sys.stderr)
    return EXIT_OK


def cmd_scan(args: argparse.Namespace, settings: Settings) -> int:
    which = SCAN_NAMES[args.conjecture]
    workers = settings.scan_workers
    logger = StepLogger.from_settings(f"scan_{which}", settings)

    banner(f"SCAN {which}: max n {args.max_n}, {args.count} samples, seed {args.seed}")

    def on_row(row: ScanRow) -> None:
        line = f"  {row.instance_id} n={row.n} taus={row.taus} {row.status}"
        logger.log_step_start(row.instance_id, {"n": row.n})
        logger.log_terminal_output(line.strip())
        logger.log_step_complete({"taus": row.taus, "status": row.status, "holds": row.holds})
        if args.verbose:
            print(line)

    report = scan_conjecture(
        which, args.max_n, args.count, args.seed, budget=_budget(settings), workers=workers, on_row=on_row
    )
    save_text_file(_csv_text(report.csv_rows()), Path(args.report))

    banner("SCAN SUMMARY")
    print(f"Instances:   {len(report.rows)}")
    print(f"Candidates:  {len(report.candidates)}")
    print(f"Exhausted:   {len(report.exhausted)}")
    for row in report.candidates:
        print(f"[WARN] candidate {row.instance_id} (n={row.n}): taus {row.taus}")
    if report.exhausted:
        print(f"[WARN] {len(report.exhausted)} instance(s) ran out of budget; see the report")
    print(f"[OK] Report written to {args.report}")
    logger.log_final_output({"which": which, "instances": len(report.rows), "candidates": len(report.candidates)})
    return EXIT_OK


def cmd_export(args: argparse.Namespace, settings: Settings) -> int:
    if not args.dot:
        raise UsageError("export supports --dot only")
    bundle = read_graph(Path(args.input))
    coloring = read_coloring(Path(args.coloring)) if args.coloring else None
    if coloring is not None:
        stray = [v for v in coloring.labels if v >= bundle.graph.n]
        if stray:
            raise UsageError(f"coloring names vertices outside the graph: {stray[:10]}")
    path = create_dot(bundle, coloring, args.out)
    print(f"[OK] DOT written to {path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="runner.py", description="t-tone graph coloring toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="Write a graph file for a named family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, help="Vertex count (cycle, path, complete, outerplanar, halin, cubicHalin)")
    p.add_argument("--d", type=int, help="Rim size for wheel, maximum degree for halin")
    p.add_argument("--seed", type=int, help="Seed for random families (required for them)")
    p.add_argument("--avoid-short-cycles", action="store_true", help="outerplanar: only faces of length 5, 6, 8, 9")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("color", help="Color a graph with a constructive method")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--method", required=True, choices=COLOR_METHODS)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--max-nodes", type=int, help="Budget for the class-7 exact fallback")
    p.set_defaults(handler=cmd_color)

    p = sub.add_parser("exact", help="Exact t-tone chromatic number")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--mode", default="tone", help="tone, good or 3-good")
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--out", help="Witness coloring path (default: <input>.witness.json)")
    p.set_defaults(handler=cmd_exact)

    p = sub.add_parser("verify", help="Check a coloring file against a graph file")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mode", required=True, help="tone, good or 3-good")
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--show", type=int, default=10, help="Violations to print (default: 10)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("classify", help="2-tone class of a subcubic outerplanar graph")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("table", help="Exact values next to closed-form formulas")
    p.add_argument("--name", required=True, choices=TABLES)
    p.add_argument("--range", required=True, help="A..B")
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("scan", help="Search for conjecture counterexample candidates")
    p.add_argument("--conjecture", required=True, choices=sorted(SCAN_NAMES))
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--count", type=int, default=0, help="Random samples above the enumerated range")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--report", required=True)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("export", help="Export a graph for rendering")
    p.add_argument("--dot", action="store_true", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--coloring", help="Annotate nodes with the labels of this coloring file")
    p.set_defaults(handler=cmd_export)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        settings = load_settings().override(getattr(args, "max_nodes", None), getattr(args, "workers", None))
        return args.handler(args, settings)
    except BudgetExhausted as e:
        print(f"[ERROR] budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ColoringError, EmbeddingError, HalinError, SolverError) as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_FAILED
    except (UsageError, GraphFileError, GeneratorError, GraphError, LabelingError, VerificationError, ValueError) as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
