"""Batch front-end: analyze scenario files, run suites, query graphs and codes.

Exit codes: 0 on success, 1..255 = number of failed scenarios (capped),
64 on usage errors.  JSON output is byte-identical across runs and thread
counts; timings only appear in the human-readable summary.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import engine
from .engine import CssFamily, entanglement_vector, multipartite_information
from .errors import TopomiError
from .grid import load_grid
from .model import EntropyModel
from .scenarios import (
    Scenario,
    gallery_dir,
    load_scenario,
    run_scenario,
    run_suite,
)

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _model_from_args(args) -> EntropyModel:
    return EntropyModel(
        quantum_dimension=args.dimension,
        alpha=args.alpha,
        log_base=args.log_base,
    )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--log-base", choices=("e", "2"), default="e",
                        help="units for reported entropies (default: e)")
    parser.add_argument("--alpha", type=float, default=None,
                        help="per-link coefficient (default: log D; cancels from invariants)")
    parser.add_argument("--dimension", type=float, default=2.0,
                        help="total quantum dimension D (default: 2)")
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument("--csv", type=Path, default=None,
                        help="write the per-subset J table as CSV (analytic payloads)")
    parser.add_argument("--threads", type=int, default=1,
                        help="parallel scenario evaluation (results stay deterministic)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="topomi",
                     description="multipartite information of planar subsystem collections")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run a single scenario file")
    p.add_argument("file", type=Path)
    _add_common(p)

    p = sub.add_parser("suite", help="run every scenario in a directory")
    p.add_argument("dir", type=Path, nargs="?", default=None,
                   help="scenario directory (default: the built-in gallery)")
    _add_common(p)

    p = sub.add_parser("rho", help="induced-subgraph invariant of a graph file")
    p.add_argument("file", type=Path)
    _add_common(p)

    p = sub.add_parser("stabilizer", help="exact code oracle on a lattice scenario")
    p.add_argument("file", type=Path)
    _add_common(p)

    p = sub.add_parser("vector", help="entanglement vector of an annular family directory")
    p.add_argument("dir", type=Path)
    _add_common(p)
    return parser


def _print_result(result, as_json: bool) -> None:
    if as_json:
        payload = {
            "schema": "topo-mpi/1",
            "name": result.name,
            "kind": result.kind,
            "passed": result.passed,
            "checks": [
                {"label": c.label, "passed": c.passed, "detail": c.detail}
                for c in result.checks
            ],
            "report": result.report,
        }
        sys.stdout.write(_dump_json(payload))
        return
    status = "PASS" if result.passed else "FAIL"
    print(f"{status} {result.name} [{result.kind}] ({result.elapsed * 1000:.1f} ms)")
    for c in result.checks:
        mark = "ok " if c.passed else "FAIL"
        print(f"  {mark} {c.label}: {c.detail}")


def _cmd_analyze(args) -> int:
    result = run_scenario(load_scenario(args.file), _model_from_args(args))
    if args.csv is not None:
        scn = load_scenario(args.file)
        if scn.kind == "analytic":
            from .scenarios import scenario_css

            report = multipartite_information(_model_from_args(args), scenario_css(scn))
            with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                engine.write_subset_table_csv(report, fh)
        else:
            print("--csv applies to analytic scenarios only", file=sys.stderr)
    _print_result(result, args.json)
    return 0 if result.passed else 1


def _cmd_suite(args) -> int:
    directory = args.dir if args.dir is not None else gallery_dir()
    suite = run_suite(directory, _model_from_args(args), threads=max(1, args.threads))
    if args.json:
        sys.stdout.write(_dump_json(suite.to_json_dict()))
    else:
        width = max((len(r.name) for r in suite.results), default=4)
        for r in suite.results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.name:<{width}} [{r.kind}] ({r.elapsed * 1000:7.1f} ms)")
            if not r.passed:
                for c in r.failures():
                    print(f"      FAIL {c.label}: {c.detail}")
        print(f"{len(suite.results) - suite.n_failed}/{len(suite.results)} scenarios passed")
    return min(suite.n_failed, 255)


def _cmd_rho(args) -> int:
    from .graphs import load_graph, rho

    graph = load_graph(args.file)
    value = rho(graph)
    if args.json:
        sys.stdout.write(_dump_json({
            "schema": "topo-mpi/1",
            "v": graph.vertex_count,
            "edges": [list(e) for e in graph.edges],
            "rho": value,
        }))
    else:
        print(f"rho = {value} (v = {graph.vertex_count}, edges = {len(graph.edges)})")
    return 0


def _cmd_stabilizer(args) -> int:
    scn = load_scenario(args.file)
    scn = Scenario(scn.name, "stabilizer", scn.payload, scn.expected, scn.case, scn.source_path)
    result = run_scenario(scn, _model_from_args(args))
    _print_result(result, args.json)
    return 0 if result.passed else 1


def _cmd_vector(args) -> int:
    model = _model_from_args(args)
    paths = sorted(Path(args.dir).glob("*.json"), key=lambda p: p.name)
    if not paths:
        print(f"error: no grid files found in {args.dir}", file=sys.stderr)
        return 1
    members = tuple(load_grid(p) for p in paths)
    members = tuple(sorted(members, key=lambda css: css.n_subsystems))
    family = CssFamily(members)
    vec = entanglement_vector(model, family)
    if args.json:
        sys.stdout.write(_dump_json({
            "schema": "topo-mpi/1",
            "sizes": list(range(3, family.max_n + 1)),
            "magnitudes": list(vec.magnitudes),
            "normalized": list(vec.normalized),
            "is_zero": vec.is_zero,
        }))
    else:
        print("p:         ", "  ".join(str(p) for p in range(3, family.max_n + 1)))
        print("normalized:", "  ".join(f"{x:.6f}" for x in vec.normalized))
        if vec.is_zero:
            print("all magnitudes zero (trivial phase); vector left unnormalized")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "suite": _cmd_suite,
        "rho": _cmd_rho,
        "stabilizer": _cmd_stabilizer,
        "vector": _cmd_vector,
    }
    try:
        return handlers[args.command](args)
    except TopomiError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
