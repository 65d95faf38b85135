"""Per-graph verdicts and corpus campaigns over the theorem checks.

Every check has a hypothesis and a predicate.  A check whose hypothesis is
not met is ``skip`` with reason ``hypothesis``; a check that needs an
odd-cycle spectrum the enumerator could not finish, or a colouring search
that ran out of nodes, is ``skip`` with reason ``budget``.  Nothing passes
vacuously.

Check ids:

``gyarfas_bound``
    any graph: ``chi <= 2|L| + 2``.
``gyarfas_equality``
    ``|L| >= 1``: ``chi == 2|L| + 2`` exactly when some block is ``K_{2|L|+2}``.
``wang_single``
    ``L == {k}``, ``k >= 5``: ``chi == 3``.
``wang_35``
    ``L == {3, 5}``: ``chi == 3`` if there is neither K4 nor W6, else
    ``chi == max(4, omega)``.
``thm_3l``
    ``L == {3, 3 + 2l}``, ``l >= 2``: ``chi == max(3, omega)``.
``thm_kl``
    ``L == {k, k + 2l}``, ``k >= 5``: ``chi == 3``.
``krs_extension``
    ``|L| == 1`` and K4-free: every proper 3-colouring of the shortest odd
    cycle extends to ``g`` (colourings enumerated up to renaming colours).
``nonseparating_exists``
    3-connected and non-bipartite: a non-separating induced odd cycle exists.
``book_characterization``
    2-connected, ``L == {3}``: ``g`` is K4 or a book.
``voss_two_diagonals``
    K4-free, ``chi >= 4``: some odd cycle has two diagonals.
``lemma_3connected``
    4-critical with ``L == {k, k + 2l}``, ``k >= 5``: 3-connected.
``lemma_intersect2``
    same hypothesis: any two odd cycles share at least two vertices.
``dirac_2cut``
    ``chi``-critical with a 2-cut: every 2-cut splits as a same-colour side
    and a distinct-colour side with the two critical derived graphs.

The two lemma hypotheses are empty if the main theorem holds, so any graph
meeting them is also recorded as a discovery.
"""

from __future__ import annotations

import json
import logging
import multiprocessing as mp
import random
import sys
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, Iterator

from .cycles import (
    DEFAULT_BUDGET,
    CycleSpectrum,
    cycle_lengths,
    min_pairwise_odd_cycle_intersection,
    shortest_odd_cycle,
)
from .graph_core import (
    Graph,
    GraphError,
    bits,
    blocks_and_cuts,
    is_bipartite,
    is_connected,
    parse_graph6,
    random_graph,
    read_graph6_lines,
    to_graph6,
)
from .generate import generate_graphs
from .invariants import (
    DEFAULT_NODE_BUDGET,
    SolverBudgetExceeded,
    chromatic_number,
    clique_number,
    extend_precoloring,
    is_k_critical,
)
from .structure import (
    BlockDecomposition,
    detect_book,
    dirac_decomposition_check,
    find_k4,
    find_w6,
    non_separating_induced_odd_cycle,
    odd_cycle_with_two_diagonals,
    two_separations,
    vertex_connectivity,
)

log = logging.getLogger(__name__)

REPORT_VERSION = 1

CHECK_IDS = (
    "gyarfas_bound",
    "gyarfas_equality",
    "wang_single",
    "wang_35",
    "thm_3l",
    "thm_kl",
    "krs_extension",
    "nonseparating_exists",
    "book_characterization",
    "voss_two_diagonals",
    "lemma_3connected",
    "lemma_intersect2",
    "dirac_2cut",
)
DISCOVERY_CHECKS = ("lemma_3connected", "lemma_intersect2")


class CorpusReadError(OSError):
    pass


class _Skip(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def _hyp(cond: bool) -> None:
    if not cond:
        raise _Skip("hypothesis")


@dataclass
class CheckResult:
    status: str
    reason: str | None = None
    witness: Any = None

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"status": self.status}
        if self.reason is not None:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = self.witness
        return out


PASS = CheckResult("pass")


class _Facts:
    """Lazily computed invariants of one graph, shared by the checks."""

    def __init__(self, g: Graph, budget: int, node_budget: int):
        self.g = g
        self.budget = budget
        self.node_budget = node_budget

    @cached_property
    def spectrum(self) -> CycleSpectrum:
        return cycle_lengths(self.g, self.budget)

    @property
    def odd(self) -> frozenset[int]:
        if not self.spectrum.complete:
            raise _Skip("budget")
        return self.spectrum.odd_lengths

    @cached_property
    def omega_witness(self) -> tuple[int, int]:
        return clique_number(self.g)

    @property
    def omega(self) -> int:
        return self.omega_witness[0]

    @cached_property
    def _chi(self):
        try:
            return chromatic_number(self.g, self.node_budget, lower_bound=self.omega)
        except SolverBudgetExceeded:
            return None

    @property
    def chi(self) -> int:
        if self._chi is None:
            raise _Skip("budget")
        return self._chi[0]

    @cached_property
    def blocks(self) -> BlockDecomposition:
        return BlockDecomposition(*blocks_and_cuts(self.g))

    @cached_property
    def connected(self) -> bool:
        return is_connected(self.g)

    @cached_property
    def bipartite(self) -> bool:
        return is_bipartite(self.g) is not None

    @property
    def two_connected(self) -> bool:
        return self.g.n >= 3 and self.connected and not self.blocks.cut_vertices

    @cached_property
    def three_connected(self) -> bool:
        g = self.g
        if g.n < 4 or g.min_degree() < 3 or not self.two_connected:
            return False
        return vertex_connectivity(g) >= 3

    @cached_property
    def k4(self) -> int | None:
        return find_k4(self.g) if self.omega >= 4 else None

    @cached_property
    def critical(self) -> bool:
        try:
            return is_k_critical(self.g, self.node_budget, chi=self.chi).is_k_critical
        except SolverBudgetExceeded:
            raise _Skip("budget") from None


def _chk_gyarfas_bound(f: _Facts) -> CheckResult:
    L, chi = f.odd, f.chi
    if chi <= 2 * len(L) + 2:
        return PASS
    return CheckResult("fail", witness={"chi": chi, "odd_lengths": sorted(L)})


def _chk_gyarfas_equality(f: _Facts) -> CheckResult:
    L = f.odd
    _hyp(len(L) >= 1)
    top = 2 * len(L) + 2
    tight = f.chi == top
    block = f.blocks.is_k(f.g, top)
    if tight == block:
        return PASS
    return CheckResult("fail", witness={"chi": f.chi, "odd_lengths": sorted(L), "complete_block": block})


def _chk_wang_single(f: _Facts) -> CheckResult:
    L = f.odd
    _hyp(len(L) == 1 and min(L) >= 5)
    return PASS if f.chi == 3 else CheckResult("fail", witness={"chi": f.chi})


def _chk_wang_35(f: _Facts) -> CheckResult:
    _hyp(f.odd == {3, 5})
    k4 = f.k4
    w6 = find_w6(f.g)
    want = 3 if k4 is None and w6 is None else max(4, f.omega)
    if f.chi == want:
        return PASS
    return CheckResult("fail", witness={"chi": f.chi, "expected": want,
                                        "k4": None if k4 is None else list(bits(k4)),
                                        "w6": None if w6 is None else list(bits(w6))})


def _chk_thm_3l(f: _Facts) -> CheckResult:
    L = f.odd
    _hyp(len(L) == 2 and 3 in L and max(L) >= 7)
    want = max(3, f.omega)
    if f.chi == want:
        return PASS
    return CheckResult("fail", witness={"chi": f.chi, "expected": want})


def _chk_thm_kl(f: _Facts) -> CheckResult:
    L = f.odd
    _hyp(len(L) == 2 and min(L) >= 5)
    return PASS if f.chi == 3 else CheckResult("fail", witness={"chi": f.chi, "expected": 3})


def cycle_colorings(m: int) -> Iterator[list[int]]:
    """Proper 3-colourings of an ``m``-cycle with positions 0, 1 coloured 0, 1.

    Every proper 3-colouring is a colour renaming of exactly one of these.
    """
    seq = [0, 1]

    def rec() -> Iterator[list[int]]:
        if len(seq) == m:
            if seq[-1] != seq[0]:
                yield list(seq)
            return
        for c in range(3):
            if c != seq[-1]:
                seq.append(c)
                yield from rec()
                seq.pop()

    yield from rec()


def _chk_krs_extension(f: _Facts) -> CheckResult:
    L = f.odd
    _hyp(len(L) == 1 and f.k4 is None)
    c = shortest_odd_cycle(f.g)
    assert c is not None
    for cols in cycle_colorings(len(c)):
        fixed = dict(zip(c.vertices, cols))
        try:
            ext = extend_precoloring(f.g, fixed, 3, f.node_budget)
        except SolverBudgetExceeded:
            raise _Skip("budget") from None
        if ext is None:
            return CheckResult("fail", witness={"cycle": list(c.vertices), "coloring": cols})
    return PASS


def _chk_nonseparating(f: _Facts) -> CheckResult:
    _hyp(not f.bipartite and f.three_connected)
    c = non_separating_induced_odd_cycle(f.g)
    return PASS if c is not None else CheckResult("fail", witness={"reason": "no non-separating induced odd cycle"})


def _chk_book(f: _Facts) -> CheckResult:
    _hyp(f.two_connected and f.odd == {3})
    g = f.g
    is_k4 = g.n == 4 and g.edge_count == 6
    if is_k4 or detect_book(g) is not None:
        return PASS
    return CheckResult("fail", witness={"reason": "neither K4 nor a book"})


def _chk_voss(f: _Facts) -> CheckResult:
    _hyp(f.k4 is None and f.chi >= 4)
    hit = odd_cycle_with_two_diagonals(f.g)
    return PASS if hit is not None else CheckResult("fail", witness={"reason": "no odd cycle with two diagonals"})


def _lemma_hypothesis(f: _Facts) -> None:
    L = f.odd
    _hyp(len(L) == 2 and min(L) >= 5 and f.chi == 4 and f.critical)


def _chk_lemma_3connected(f: _Facts) -> CheckResult:
    _lemma_hypothesis(f)
    kappa = vertex_connectivity(f.g)
    return PASS if kappa >= 3 else CheckResult("fail", witness={"connectivity": kappa})


def _chk_lemma_intersect2(f: _Facts) -> CheckResult:
    _lemma_hypothesis(f)
    res = min_pairwise_odd_cycle_intersection(f.g, f.budget)
    if not res.complete:
        raise _Skip("budget")
    if res.value is None or res.value >= 2:
        return PASS
    return CheckResult("fail", witness={"min_intersection": res.value})


def _chk_dirac(f: _Facts) -> CheckResult:
    g = f.g
    _hyp(g.n >= 4 and f.two_connected)
    chi = f.chi
    _hyp(chi >= 3 and g.min_degree() >= chi - 1)
    seps = two_separations(g)
    _hyp(bool(seps) and f.critical)
    for sep in seps:
        try:
            res = dirac_decomposition_check(g, sep, chi=chi, budget=f.node_budget)
        except SolverBudgetExceeded:
            raise _Skip("budget") from None
        if not res.passed:
            return CheckResult("fail", witness={"separation": sep.to_dict(), "check": res.to_dict()})
    return PASS


CHECKS: dict[str, Callable[[_Facts], CheckResult]] = {
    "gyarfas_bound": _chk_gyarfas_bound,
    "gyarfas_equality": _chk_gyarfas_equality,
    "wang_single": _chk_wang_single,
    "wang_35": _chk_wang_35,
    "thm_3l": _chk_thm_3l,
    "thm_kl": _chk_thm_kl,
    "krs_extension": _chk_krs_extension,
    "nonseparating_exists": _chk_nonseparating,
    "book_characterization": _chk_book,
    "voss_two_diagonals": _chk_voss,
    "lemma_3connected": _chk_lemma_3connected,
    "lemma_intersect2": _chk_lemma_intersect2,
    "dirac_2cut": _chk_dirac,
}


@dataclass
class Verdict:
    graph6: str
    n: int
    edge_count: int
    spectrum: CycleSpectrum
    chi: int | None
    omega: int
    checks: dict[str, CheckResult]

    @property
    def failed(self) -> list[str]:
        return [k for k, r in self.checks.items() if r.status == "fail"]

    @property
    def discoveries(self) -> list[str]:
        return [k for k in DISCOVERY_CHECKS if k in self.checks and self.checks[k].status != "skip"]

    def to_dict(self) -> dict:
        return {
            "graph6": self.graph6,
            "n": self.n,
            "edge_count": self.edge_count,
            "spectrum": self.spectrum.to_dict(),
            "chi": self.chi,
            "omega": self.omega,
            "checks": {k: r.to_dict() for k, r in self.checks.items()},
        }


def _resolve_checks(checks: Iterable[str] | None) -> tuple[str, ...]:
    if checks is None:
        return CHECK_IDS
    wanted = set(checks)
    unknown = wanted - set(CHECK_IDS)
    if unknown:
        raise ValueError(f"unknown check ids: {sorted(unknown)}")
    return tuple(c for c in CHECK_IDS if c in wanted)


def analyze(g: Graph, budget: int = DEFAULT_BUDGET, checks: Iterable[str] | None = None,
            node_budget: int = DEFAULT_NODE_BUDGET) -> Verdict:
    ids = _resolve_checks(checks)
    f = _Facts(g, budget, node_budget)
    results: dict[str, CheckResult] = {}
    for cid in ids:
        try:
            results[cid] = CHECKS[cid](f)
        except _Skip as s:
            results[cid] = CheckResult("skip", reason=s.reason)
    chi = f._chi[0] if f._chi is not None else None
    return Verdict(to_graph6(g).decode("ascii"), g.n, g.edge_count, f.spectrum, chi, f.omega, results)


# ---------------------------------------------------------------------------
# corpora

@dataclass(frozen=True)
class CorpusSource:
    """Where campaign graphs come from.

    ``kind`` is ``file`` (``path``), ``generate`` (orders ``1..n``, or only
    ``n`` when ``exact``; optional connected filter and hereditary pruning)
    or ``random`` (``count`` draws of G(n, p), per-graph seeds drawn from one
    seeded stream).
    """

    kind: str
    path: str | None = None
    n: int = 0
    connected: bool = False
    exact: bool = False
    triangle_free: bool = False
    max_odd_lengths: int | None = None
    p: float = 0.0
    count: int = 0
    seed: int = 0

    @classmethod
    def parse(cls, text: str) -> CorpusSource:
        """``gen:N[,connected][,exact][,triangle-free][,max-odd=T]``, ``rand:N,P,COUNT,SEED`` or a path."""
        if text.startswith("gen:"):
            parts = [p.strip() for p in text[4:].split(",")]
            try:
                n = int(parts[0])
            except ValueError:
                raise ValueError(f"bad corpus {text!r}") from None
            kw: dict[str, Any] = {}
            for p in parts[1:]:
                if p == "connected":
                    kw["connected"] = True
                elif p == "exact":
                    kw["exact"] = True
                elif p == "triangle-free":
                    kw["triangle_free"] = True
                elif p.startswith("max-odd="):
                    kw["max_odd_lengths"] = int(p.split("=", 1)[1])
                else:
                    raise ValueError(f"unknown gen option {p!r}")
            if not 1 <= n <= 32:
                raise ValueError("gen order must be in 1..32")
            return cls("generate", n=n, **kw)
        if text.startswith("rand:"):
            try:
                n, p, count, seed = text[5:].split(",")
                return cls("random", n=int(n), p=float(p), count=int(count), seed=int(seed))
            except ValueError:
                raise ValueError(f"bad corpus {text!r}; expected rand:N,P,COUNT,SEED") from None
        return cls("file", path=text)

    def describe(self) -> dict:
        if self.kind == "file":
            return {"kind": "file", "path": self.path}
        if self.kind == "random":
            return {"kind": "random", "n": self.n, "p": self.p, "count": self.count, "seed": self.seed}
        return {"kind": "generate", "n": self.n, "connected": self.connected, "exact": self.exact,
                "triangle_free": self.triangle_free, "max_odd_lengths": self.max_odd_lengths}

    def graphs(self) -> Iterator[Graph]:
        if self.kind == "file":
            yield from _read_file(self.path)
        elif self.kind == "random":
            rng = random.Random(self.seed)
            for _ in range(self.count):
                yield random_graph(self.n, self.p, rng.getrandbits(64))
        else:
            orders = [self.n] if self.exact else range(1, self.n + 1)
            for k in orders:
                yield from generate_graphs(k, connected=self.connected, triangle_free=self.triangle_free,
                                           max_odd_lengths=self.max_odd_lengths)


def _read_file(path: str | None) -> Iterator[Graph]:
    try:
        if path == "-":
            lines: Iterable[bytes] = sys.stdin.buffer
            yield from read_graph6_lines(lines)
            return
        with open(path, "rb") as fh:  # type: ignore[arg-type]
            yield from read_graph6_lines(fh)
    except OSError as exc:
        raise CorpusReadError(f"cannot read corpus {path}: {exc}") from exc
    except GraphError as exc:
        raise CorpusReadError(f"bad graph6 line in {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# campaigns

@dataclass
class Report:
    corpus: dict
    checks: tuple[str, ...]
    budget: int
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    discoveries: list[dict] = field(default_factory=list)
    graphs: int = 0
    by_order: dict[int, int] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def failure_count(self) -> int:
        return sum(c["fail"] for c in self.counts.values())

    @property
    def budget_skips(self) -> int:
        return sum(c["skip_budget"] for c in self.counts.values())

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "version": REPORT_VERSION,
            "corpus": self.corpus,
            "budget": self.budget,
            "totals": {
                "graphs": self.graphs,
                "evaluations": self.graphs * len(self.checks),
                "by_order": {str(k): v for k, v in sorted(self.by_order.items())},
                "failures": self.failure_count,
                "budget_skips": self.budget_skips,
                "discoveries": len(self.discoveries),
            },
            "checks": [{"id": cid, **self.counts[cid]} for cid in self.checks],
            "failures": self.failures,
            "discoveries": self.discoveries,
        }
        if timing:
            out["timing"] = {"wall_seconds": round(self.wall_time, 3)}
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        lines = ["check,pass,fail,skip_hypothesis,skip_budget"]
        for cid in self.checks:
            c = self.counts[cid]
            lines.append(f"{cid},{c['pass']},{c['fail']},{c['skip_hypothesis']},{c['skip_budget']}")
        return "\n".join(lines) + "\n"


# worker state, set once per process
_WORKER: dict[str, Any] = {}


def _init_worker(checks: tuple[str, ...], budget: int, node_budget: int) -> None:
    _WORKER.update(checks=checks, budget=budget, node_budget=node_budget)


def _work(line: bytes) -> tuple[int, tuple[str, ...], dict | None, list[str]]:
    g = parse_graph6(line)
    v = analyze(g, _WORKER["budget"], _WORKER["checks"], _WORKER["node_budget"])
    statuses = tuple(
        "skip_" + r.reason if r.status == "skip" else r.status  # type: ignore[operator]
        for r in v.checks.values()
    )
    keep = v.failed or v.discoveries
    return g.n, statuses, (v.to_dict() if keep else None), v.discoveries


def _map(lines: Iterator[bytes], workers: int, init_args: tuple, chunksize: int):
    if workers <= 1:
        _init_worker(*init_args)
        yield from map(_work, lines)
        return
    ctx = mp.get_context("fork")
    with ctx.Pool(workers, initializer=_init_worker, initargs=init_args) as pool:
        yield from pool.imap(_work, lines, chunksize=chunksize)


def run_campaign(source: CorpusSource, checks: Iterable[str] | None = None, workers: int = 1,
                 budget: int = DEFAULT_BUDGET, node_budget: int = DEFAULT_NODE_BUDGET,
                 chunksize: int = 64, progress: Callable[[int], None] | None = None) -> Report:
    """Analyse every corpus graph; results merge in corpus order, so the report is independent of ``workers``."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    ids = _resolve_checks(checks)
    report = Report(source.describe(), ids, budget)
    report.counts = {cid: {"pass": 0, "fail": 0, "skip_hypothesis": 0, "skip_budget": 0} for cid in ids}
    start = time.perf_counter()
    lines = (to_graph6(g) for g in source.graphs())
    for n, statuses, verdict, discovered in _map(lines, workers, (ids, budget, node_budget), chunksize):
        report.graphs += 1
        report.by_order[n] = report.by_order.get(n, 0) + 1
        for cid, st in zip(ids, statuses):
            report.counts[cid][st] += 1
        if verdict is not None:
            if any(r["status"] == "fail" for r in verdict["checks"].values()):
                report.failures.append(verdict)
                log.warning("check failure on %s: %s", verdict["graph6"],
                            [k for k, r in verdict["checks"].items() if r["status"] == "fail"])
            for cid in discovered:
                report.discoveries.append({"graph6": verdict["graph6"], "check": cid})
                log.warning("hypothesis of %s met by %s", cid, verdict["graph6"])
        if progress is not None:
            progress(report.graphs)
    report.wall_time = time.perf_counter() - start
    return report


@dataclass(frozen=True)
class MinePredicate:
    triangle_free: bool | None = None
    odd_length_count: int | None = None
    chi: int | None = None


def _mine_one(line: bytes, pred: MinePredicate, budget: int, node_budget: int) -> str | None:
    g = parse_graph6(line)
    if pred.triangle_free is not None:
        has_triangle = any(g.adj[u] & g.adj[v] for u, v in g.edges())
        if has_triangle == pred.triangle_free:
            return None
    if pred.odd_length_count is not None:
        spec = cycle_lengths(g, budget)
        if not spec.complete:
            log.warning("spectrum incomplete for %s; not mined", line.decode())
            return None
        if len(spec.odd_lengths) != pred.odd_length_count:
            return None
    if pred.chi is not None and chromatic_number(g, node_budget)[0] != pred.chi:
        return None
    return line.decode("ascii")


def mine(source: CorpusSource, predicate: MinePredicate, budget: int = DEFAULT_BUDGET,
         node_budget: int = DEFAULT_NODE_BUDGET) -> list[str]:
    """graph6 lines of every corpus graph matching all set fields of ``predicate``, in corpus order."""
    out = []
    scanned = 0
    for g in source.graphs():
        scanned += 1
        hit = _mine_one(to_graph6(g), predicate, budget, node_budget)
        if hit is not None:
            out.append(hit)
    log.info("mine: scanned %d graphs, %d match", scanned, len(out))
    return out
