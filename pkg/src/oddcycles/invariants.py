"""Exact chromatic number, clique number, criticality and precoloring extension.

Colourings are found by a DSATUR-ordered backtracking search over bitset
colour classes.  Free colours (those not pinned by a precolouring) are
interchangeable, so the search opens them in order and never tries two
unopened ones at the same node.

Criticality is tested by edge deletions only.  Deleting a non-isolated
vertex ``v`` yields a subgraph of ``G - e`` for any edge ``e`` at ``v``, so if
every edge deletion lowers the chromatic number, so does every vertex
deletion; isolated vertices are handled separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .graph_core import Graph, bits

DEFAULT_NODE_BUDGET = 10**8

PROVENANCES = (
    "exact_solver",
    "phi_construction",
    "k4_extension",
    "type_alternating",
    "extension",
    "bipartite",
)


class SolverBudgetExceeded(RuntimeError):
    pass


class ImproperPrecoloring(ValueError):
    pass


@dataclass(frozen=True)
class ColoringCertificate:
    colors: dict[int, int]
    c: int
    provenance: str = "exact_solver"

    def is_proper(self, g: Graph) -> bool:
        cols = self.colors
        for v, cv in cols.items():
            if not 0 <= cv < self.c:
                return False
            for w in bits(g.adj[v]):
                if w > v and cols.get(w, -1) == cv:
                    return False
        return True

    def validate(self, g: Graph, *, full: bool = True, all_used: bool = True) -> None:
        """Raise ``ValueError`` unless the colouring is proper (and total / tight if asked)."""
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if not self.is_proper(g):
            raise ValueError("colouring is not proper")
        if full and set(self.colors) != set(range(g.n)):
            raise ValueError("colouring does not cover every vertex")
        if all_used and set(self.colors.values()) != set(range(self.c)):
            raise ValueError("not every colour 0..c-1 is used")

    def to_dict(self) -> dict:
        return {
            "colors": [self.colors.get(v) for v in range(max(self.colors, default=-1) + 1)],
            "c": self.c,
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class CriticalityReport:
    chi: int
    is_k_critical: bool
    witness: tuple[int, ...] | None = field(default=None)
    """An edge ``(u, v)`` whose deletion keeps ``chi``, or ``(v,)`` for an isolated vertex."""


def _search(adj: tuple[int, ...], n: int, k: int, pre: Mapping[int, int] | None,
            budget: int) -> list[int] | None:
    colors = [-1] * n
    classes = [0] * k
    uncolored = (1 << n) - 1
    pinned: set[int] = set()
    if pre:
        for v, c in pre.items():
            colors[v] = c
            classes[c] |= 1 << v
            uncolored &= ~(1 << v)
            pinned.add(c)
    free = [c for c in range(k) if c not in pinned]
    pinned_list = sorted(pinned)
    nodes = 0

    def rec(uncolored: int, opened: int) -> bool:
        nonlocal nodes
        if not uncolored:
            return True
        nodes += 1
        if nodes > budget:
            raise SolverBudgetExceeded(f"colouring search exceeded {budget} nodes")
        palette = pinned_list + free[:opened]
        fresh = free[opened] if opened < len(free) else -1
        best_v = -1
        best_opts: list[int] = []
        best_key = None
        for v in bits(uncolored):
            nb = adj[v]
            opts = [c for c in palette if not classes[c] & nb]
            if fresh >= 0:
                opts.append(fresh)
            if not opts:
                return False
            key = (len(opts), -(nb & uncolored).bit_count())
            if best_key is None or key < best_key:
                best_key = key
                best_v = v
                best_opts = opts
                if len(opts) == 1:
                    break
        v = best_v
        bit = 1 << v
        rest = uncolored & ~bit
        for c in best_opts:
            classes[c] |= bit
            colors[v] = c
            if rec(rest, opened + (c == fresh)):
                return True
            classes[c] &= ~bit
        colors[v] = -1
        return False

    if rec(uncolored, 0):
        return colors
    return None


def k_coloring(g: Graph, k: int, budget: int = DEFAULT_NODE_BUDGET) -> list[int] | None:
    """A proper colouring with colours ``0..k-1`` or ``None`` if none exists."""
    if g.n == 0:
        return []
    if k <= 0:
        return None
    return _search(g.adj, g.n, k, None, budget)


def _greedy_dsatur(g: Graph) -> list[int]:
    n, adj = g.n, g.adj
    colors = [-1] * n
    uncolored = (1 << n) - 1
    while uncolored:
        best_v, best_key, best_used = -1, None, 0
        for v in bits(uncolored):
            used = 0
            for w in bits(adj[v] & ~uncolored):
                used |= 1 << colors[w]
            key = (-used.bit_count(), -(adj[v] & uncolored).bit_count())
            if best_key is None or key < best_key:
                best_v, best_key, best_used = v, key, used
        c = 0
        while best_used >> c & 1:
            c += 1
        colors[best_v] = c
        uncolored &= ~(1 << best_v)
    return colors


def clique_number(g: Graph) -> tuple[int, int]:
    """Maximum clique size and a witness mask (first maximum in lexicographic search order)."""
    adj = g.adj
    best = 0
    best_set = 0

    def expand(r: int, size: int, p: int) -> None:
        nonlocal best, best_set
        if not p:
            if size > best:
                best, best_set = size, r
            return
        while p:
            if size + p.bit_count() <= best:
                return
            low = p & -p
            v = low.bit_length() - 1
            expand(r | low, size + 1, p & adj[v])
            p ^= low

    expand(0, 0, g.vertex_mask)
    return best, best_set


def chromatic_number(g: Graph, budget: int = DEFAULT_NODE_BUDGET,
                     lower_bound: int | None = None) -> tuple[int, ColoringCertificate]:
    """Exact chromatic number with a certificate using exactly that many colours.

    The clique number (or ``lower_bound`` when the caller already knows it)
    bounds from below, greedy DSATUR from above, and the backtracking search
    closes the gap one colour count at a time.
    """
    n = g.n
    if n == 0:
        return 0, ColoringCertificate({}, 0)
    if g.edge_count == 0:
        return 1, ColoringCertificate({v: 0 for v in range(n)}, 1)
    lb = lower_bound if lower_bound is not None else clique_number(g)[0]
    greedy = _greedy_dsatur(g)
    ub = max(greedy) + 1
    best = greedy
    for k in range(max(lb, 2), ub):
        found = _search(g.adj, n, k, None, budget)
        if found is not None:
            best = found
            break
    chi = max(best) + 1
    return chi, ColoringCertificate(dict(enumerate(best)), chi)


def _without_edge(adj: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
    out = list(adj)
    out[u] &= ~(1 << v)
    out[v] &= ~(1 << u)
    return tuple(out)


def is_k_critical(g: Graph, budget: int = DEFAULT_NODE_BUDGET, chi: int | None = None) -> CriticalityReport:
    if chi is None:
        chi = chromatic_number(g, budget)[0]
    n = g.n
    if n == 0:
        return CriticalityReport(0, False)
    if n == 1:
        return CriticalityReport(1, True)
    for v in range(n):
        if not g.adj[v]:
            return CriticalityReport(chi, False, (v,))
    for u, v in g.edges():
        if _search(_without_edge(g.adj, u, v), n, chi - 1, None, budget) is None:
            return CriticalityReport(chi, False, (u, v))
    return CriticalityReport(chi, True)


def extract_critical_subgraph(g: Graph, budget: int = DEFAULT_NODE_BUDGET) -> Graph:
    """A ``chi(g)``-critical subgraph: one lexicographic pass of edge deletions, then isolated vertices dropped.

    One pass suffices: an edge whose deletion lowered ``chi`` still does so
    in every later subgraph.
    """
    chi = chromatic_number(g, budget)[0]
    if chi <= 1:
        return Graph(min(g.n, 1), (0,) * min(g.n, 1))
    adj = g.adj
    for u, v in g.edges():
        trial = _without_edge(adj, u, v)
        if _search(trial, g.n, chi - 1, None, budget) is None:
            adj = trial
    keep = 0
    for v, row in enumerate(adj):
        if row:
            keep |= 1 << v
    return Graph(g.n, adj).induced(keep)[0]


def extend_precoloring(g: Graph, fixed: Mapping[int, int], c: int,
                       budget: int = DEFAULT_NODE_BUDGET) -> ColoringCertificate | None:
    """Extend a proper partial colouring to a proper ``c``-colouring, if possible.

    The certificate keeps the caller's colour names, so its palette is
    ``0..c-1`` and some colours may be unused.
    """
    for v, col in fixed.items():
        if not 0 <= v < g.n:
            raise ImproperPrecoloring(f"vertex {v} outside the graph")
        if not 0 <= col < c:
            raise ImproperPrecoloring(f"colour {col} outside 0..{c - 1}")
        for w in bits(g.adj[v]):
            if fixed.get(w, -1) == col:
                raise ImproperPrecoloring(f"edge {v}-{w} is monochromatic")
    found = _search(g.adj, g.n, c, fixed, budget)
    if found is None:
        return None
    return ColoringCertificate(dict(enumerate(found)), c, "extension")
