"""Command-line entry point: ``oddcycles analyze | verify | mine | gen``.

Exit codes: 0 success, 1 usage or I/O error, 2 campaign finished with at
least one check failure or a graph meeting a hypothesis expected to be
empty, 3 a budget left some results incomplete.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .cycles import DEFAULT_BUDGET
from .graph_core import GraphError, named_graph, parse_graph6, to_graph6
from .invariants import DEFAULT_NODE_BUDGET
from .verifier import (
    CHECK_IDS,
    CorpusReadError,
    CorpusSource,
    MinePredicate,
    analyze,
    mine,
    run_campaign,
)

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("oddcycles")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2, which is reserved for check failures
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="oddcycles", description="Odd cycle length invariants and theorem checks.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="verdict for one graph")
    a.add_argument("graph", help="graph6 string, name:ID (e.g. name:petersen) or - for stdin")
    a.add_argument("--json", action="store_true", help="print the full verdict as JSON")
    a.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    v = sub.add_parser("verify", help="run the checks over a corpus")
    v.add_argument("--corpus", required=True,
                   help="graph6 file, gen:N[,connected][,exact][,triangle-free][,max-odd=T] or rand:N,P,COUNT,SEED")
    v.add_argument("--checks", help="comma-separated check ids (default: all)")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    v.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    v.add_argument("--out", help="write the report here instead of stdout")
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--timing", action="store_true", help="include wall time in the JSON report")

    m = sub.add_parser("mine", help="list corpus graphs matching a predicate")
    m.add_argument("--corpus", required=True)
    tf = m.add_mutually_exclusive_group()
    tf.add_argument("--triangle-free", dest="triangle_free", action="store_const", const=True)
    tf.add_argument("--with-triangle", dest="triangle_free", action="store_const", const=False)
    m.add_argument("--odd-lengths", type=int, help="required number of odd cycle lengths")
    m.add_argument("--chi", type=int, help="required chromatic number")
    m.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    m.add_argument("--out")

    gn = sub.add_parser("gen", help="emit named graphs")
    gn.add_argument("--name", action="append", required=True, help="graph id such as book(3); repeatable")
    gn.add_argument("--graph6", action="store_true", help="graph6 output (the default and only format)")
    return p


def _load_graph(token: str):
    if token == "-":
        line = sys.stdin.buffer.readline()
        return parse_graph6(line)
    if token.startswith("name:"):
        return named_graph(token[5:])
    return parse_graph6(token)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_analyze(args) -> int:
    g = _load_graph(args.graph)
    v = analyze(g, args.budget)
    d = v.to_dict()
    if args.json:
        sys.stdout.write(json.dumps(d, indent=2) + "\n")
    else:
        sys.stdout.write(f"graph6 {d['graph6']}\nn {d['n']}\nedges {d['edge_count']}\n"
                         f"odd_lengths {d['spectrum']['odd_lengths']}\nchi {d['chi']}\nomega {d['omega']}\n")
        for cid, r in d["checks"].items():
            extra = f" ({r['reason']})" if "reason" in r else ""
            sys.stdout.write(f"{cid} {r['status']}{extra}\n")
    if v.failed or v.discoveries:
        return EXIT_FAIL
    if any(r.reason == "budget" for r in v.checks.values()) or not v.spectrum.complete:
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_verify(args) -> int:
    checks = None
    if args.checks:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
        bad = [c for c in checks if c not in CHECK_IDS]
        if bad:
            raise ValueError(f"unknown check ids {bad}; known: {', '.join(CHECK_IDS)}")
    if args.jobs < 1:
        raise ValueError("--jobs must be >= 1")
    source = CorpusSource.parse(args.corpus)
    report = run_campaign(source, checks, workers=args.jobs, budget=args.budget, node_budget=args.node_budget)
    log.info("%d graphs, %d failures, %.1f s", report.graphs, report.failure_count, report.wall_time)
    text = report.to_csv() if args.format == "csv" else report.to_json(timing=args.timing)
    _emit(text, args.out)
    if report.failure_count or report.discoveries:
        return EXIT_FAIL
    if report.budget_skips:
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_mine(args) -> int:
    source = CorpusSource.parse(args.corpus)
    pred = MinePredicate(args.triangle_free, args.odd_lengths, args.chi)
    hits = mine(source, pred, budget=args.budget)
    if hits:
        log.warning("%d graph(s) match the predicate", len(hits))
    _emit("".join(h + "\n" for h in hits), args.out)
    return EXIT_OK


def _cmd_gen(args) -> int:
    lines = [to_graph6(named_graph(name)).decode("ascii") for name in args.name]
    sys.stdout.write("".join(line + "\n" for line in lines))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    handler = {"analyze": _cmd_analyze, "verify": _cmd_verify, "mine": _cmd_mine, "gen": _cmd_gen}[args.cmd]
    try:
        return handler(args)
    except (GraphError, CorpusReadError, ValueError, OSError) as exc:
        print(f"oddcycles: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
