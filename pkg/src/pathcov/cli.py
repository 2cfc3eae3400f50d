"""Command line interface: ``pathcov enumerate|cover|check|bench``.

Exit statuses:
  0  completed
  2  usage error
  3  truncated (--max-items, --timeout-secs, or the reader closed the pipe)
  4  invalid input
  5  graph is not single-entry single-exit
  6  --verify found uncovered items or could not run within its item cap
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Sequence

from . import bench
from .coverage import CRITERIA, CoverageConfig, cover, uncovered_items
from .enumeration import non_extendable_simple_paths, prime_paths, simple_cycles
from .graph import GraphError, NotSeseError
from .io import LoadedGraph, format_path, load_graph, parse_graph

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TRUNCATED = 3
EXIT_INVALID = 4
EXIT_NOT_SESE = 5
EXIT_VERIFY_FAILED = 6

TARGETS = {
    "prime-paths": prime_paths,
    "simple-cycles": simple_cycles,
    "non-extendable-simple-paths": non_extendable_simple_paths,
}

# bench preset mirroring the original experiments: 10M items, one hour per engine
PAPER_MAX_ITEMS = 10_000_000
PAPER_TIMEOUT = 3600.0


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _non_negative_int(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return n


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return x


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, metavar="FILE", help="graph document (JSON or DOT); '-' reads stdin")
    p.add_argument("--input-format", choices=["json", "dot"], help="default: by file extension, else sniffed")
    p.add_argument("--entry", metavar="LABEL", help="entry vertex, overrides the document")
    p.add_argument("--exit", metavar="LABEL", help="exit vertex, overrides the document")


def _add_limits(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-items", type=_non_negative_int, metavar="N", help="stop after N items")
    p.add_argument("--timeout-secs", type=_positive_float, metavar="S", help="stop after S seconds")
    p.add_argument("--format", choices=["lines", "ndjson"], default="lines", help="path output format")
    p.add_argument("--stats", action="store_true", help="write run statistics as JSON to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathcov",
        description="Stream prime paths and path-coverage test cases of directed graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="stream simple cycles, non-extendable simple paths or prime paths")
    p.add_argument("target", choices=list(TARGETS))
    _add_input(p)
    _add_limits(p)

    p = sub.add_parser("cover", help="stream test paths for a coverage criterion")
    p.add_argument("criterion", choices=list(CRITERIA))
    _add_input(p)
    p.add_argument("--k", type=_positive_int, default=1, help="items packed into one test path (default 1)")
    p.add_argument("--double-cycle", action="store_true", help="cover every rotation (simple-cycle only)")
    p.add_argument("--verify", action="store_true", help="re-check completeness against the item set")
    p.add_argument("--verify-cap", type=_positive_int, default=100_000, metavar="N", help="largest item set --verify accepts")
    _add_limits(p)

    p = sub.add_parser("check", help="validate a graph as single-entry single-exit")
    _add_input(p)

    p = sub.add_parser("bench", help="time the streaming engine against the breadth-wise baseline")
    _add_input(p)
    p.add_argument("--engines", default="stream,ao-baseline", help="comma-separated subset of: " + ", ".join(bench.ENGINES))
    p.add_argument("--timeout-secs", type=_positive_float, metavar="S", help="per-engine timeout")
    p.add_argument("--max-items", type=_positive_int, metavar="N", help="stream engine item limit")
    p.add_argument("--memory-mb", type=_positive_int, default=2048, help="baseline address-space allowance (default 2048)")
    p.add_argument("--stats-out", metavar="FILE", help="write the stats document as JSON")
    p.add_argument("--preset", choices=["paper"], help="paper: 10M items, one-hour timeout times --scale")
    p.add_argument("--scale", type=_positive_float, default=1.0, help="timeout scale for --preset (default 1)")
    return parser


def _load(args) -> LoadedGraph:
    try:
        if args.input == "-":
            return parse_graph(sys.stdin.buffer.read(), args.input_format, args.entry, args.exit)
        return load_graph(args.input, args.input_format, args.entry, args.exit)
    except OSError as e:
        raise CliError(f"cannot read {args.input}: {e.strerror or e}", EXIT_INVALID) from None
    except GraphError as e:
        raise CliError(f"invalid graph: {e}", EXIT_INVALID) from None


def _sese(loaded: LoadedGraph):
    try:
        return loaded.sese()
    except NotSeseError as e:
        raise CliError("not a single-entry single-exit graph:\n  " + "\n  ".join(e.problems), EXIT_NOT_SESE) from None


def _line_writer(out, labels, fmt: str) -> Callable:
    def write(p) -> None:
        out.write(format_path([labels[v] for v in p], fmt) + "\n")
        out.flush()

    return write


def _finish(stats: bench.RunStats, args, err) -> int:
    if args.stats:
        err.write(json.dumps(stats.to_dict()) + "\n")
        err.flush()
    return EXIT_OK if stats.status == bench.COMPLETED else EXIT_TRUNCATED


def cmd_enumerate(args, out, err) -> int:
    g = _load(args).graph
    stream = TARGETS[args.target](g)
    stats = bench.consume(
        stream, args.max_items, args.timeout_secs, _line_writer(out, g.labels, args.format), path_len=g.n + 1
    )
    return _finish(stats, args, err)


def cmd_cover(args, out, err) -> int:
    if args.double_cycle and args.criterion != "simple-cycle":
        raise CliError("--double-cycle only applies to the simple-cycle criterion", EXIT_USAGE)
    sese = _sese(_load(args))
    cfg = CoverageConfig(args.k, args.double_cycle)
    write = _line_writer(out, sese.graph.labels, args.format)
    suite = []

    def sink(tc) -> None:
        write(tc.path)
        if args.verify:
            suite.append(tc.path)

    stats = bench.consume(cover(sese, args.criterion, cfg), args.max_items, args.timeout_secs, sink, path_len=sese.graph.n + 1)
    code = _finish(stats, args, err)
    if args.verify:
        if stats.status != bench.COMPLETED:
            err.write("verify: skipped, the suite was truncated\n")
            return EXIT_VERIFY_FAILED
        try:
            missed = uncovered_items(sese, args.criterion, suite, cfg, args.verify_cap)
        except OverflowError as e:
            err.write(f"verify: not run, {e}\n")
            return EXIT_VERIFY_FAILED
        if missed:
            labels = sese.graph.labels
            for p in missed:
                err.write("verify: uncovered " + format_path([labels[v] for v in p]) + "\n")
            return EXIT_VERIFY_FAILED
        err.write("verify: ok\n")
    return code


def cmd_check(args, out, err) -> int:
    loaded = _load(args)
    g = loaded.graph
    problems = loaded.sese_problems()
    if problems:
        for msg in problems:
            out.write(f"violation: {msg}\n")
        return EXIT_NOT_SESE
    out.write(f"ok: {g.n} vertices, {len(g.edges)} edges, entry {g.labels[loaded.entry]}, exit {g.labels[loaded.exit]}\n")
    return EXIT_OK


def cmd_bench(args, out, err) -> int:
    engines = [e.strip() for e in args.engines.split(",") if e.strip()]
    unknown = [e for e in engines if e not in bench.ENGINES]
    if unknown or not engines:
        raise CliError(f"unknown engines {unknown}; choose from {', '.join(bench.ENGINES)}", EXIT_USAGE)
    timeout, max_items = args.timeout_secs, args.max_items
    if args.preset == "paper":
        timeout = timeout if timeout is not None else PAPER_TIMEOUT * args.scale
        max_items = max_items if max_items is not None else PAPER_MAX_ITEMS
    g = _load(args).graph
    rows = bench.run_engines(g, engines, timeout, max_items, args.memory_mb)
    out.write(bench.format_table(rows) + "\n")
    if args.stats_out:
        doc = {
            "graph": {"vertices": g.n, "edges": len(g.edges)},
            "timeout_secs": timeout,
            "max_items": max_items,
            "runs": [r.to_dict() for r in rows],
        }
        with open(args.stats_out, "w") as f:
            json.dump(doc, f, indent=2)
            f.write("\n")
    return EXIT_OK


COMMANDS = {"enumerate": cmd_enumerate, "cover": cmd_cover, "check": cmd_check, "bench": cmd_bench}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out, err)
    except CliError as e:
        err.write(f"pathcov: {e}\n")
        return e.code
    except BrokenPipeError:
        # reader went away; keep the interpreter from complaining at exit
        if out is sys.stdout:
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_TRUNCATED


if __name__ == "__main__":
    sys.exit(main())
