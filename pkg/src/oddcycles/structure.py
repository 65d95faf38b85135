"""Blocks, connectivity, 2-separations and the witness finders the lemmas talk about."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .cycles import Cycle, _iter_cycles
from .graph_core import (
    Graph,
    GraphError,
    add_edge,
    bits,
    blocks_and_cuts,
    components,
    contract_pair,
    is_connected,
)
from .invariants import DEFAULT_NODE_BUDGET, chromatic_number, is_k_critical, k_coloring


class TooSmall(GraphError):
    pass


class InvalidSeparation(GraphError):
    pass


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: list[int]
    cut_vertices: int

    def is_k(self, g: Graph, m: int) -> bool:
        """Whether some block is a complete graph on ``m`` vertices."""
        for b in self.blocks:
            if b.bit_count() == m and all((g.adj[v] & b) == b & ~(1 << v) for v in bits(b)):
                return True
        return False


@dataclass(frozen=True)
class TwoSeparation:
    a_side: int
    b_side: int
    cut: tuple[int, int]

    def to_dict(self) -> dict:
        return {"a_side": list(bits(self.a_side)), "b_side": list(bits(self.b_side)), "cut": list(self.cut)}


@dataclass(frozen=True)
class BookWitness:
    spine: tuple[int, int]
    pages: tuple[int, ...]


def block_decomposition(g: Graph) -> BlockDecomposition:
    blocks, cuts = blocks_and_cuts(g)
    return BlockDecomposition(blocks, cuts)


def _local_connectivity(g: Graph, s: int, t: int, cap: int) -> int:
    """Number of internally disjoint s-t paths (s, t non-adjacent), stopping at ``cap``."""
    # node 2v = v_in, 2v+1 = v_out
    n = g.n
    res: list[dict[int, int]] = [dict() for _ in range(2 * n)]
    big = n + 1
    for v in range(n):
        res[2 * v][2 * v + 1] = big if v in (s, t) else 1
        res[2 * v + 1].setdefault(2 * v, 0)
        for w in bits(g.adj[v]):
            res[2 * v + 1][2 * w] = 1
            res[2 * w].setdefault(2 * v + 1, 0)
    src, dst = 2 * s + 1, 2 * t
    flow = 0
    while flow < cap:
        prev = {src: src}
        queue = deque([src])
        while queue and dst not in prev:
            x = queue.popleft()
            for y, c in res[x].items():
                if c > 0 and y not in prev:
                    prev[y] = x
                    queue.append(y)
        if dst not in prev:
            break
        y = dst
        while y != src:
            x = prev[y]
            res[x][y] -= 1
            res[y][x] += 1
            y = x
        flow += 1
    return flow


def vertex_connectivity(g: Graph) -> int:
    """Exact vertex connectivity by unit-capacity max-flow (Even's pair schedule).

    Complete graphs get ``n - 1``.
    """
    n = g.n
    if n < 2:
        raise TooSmall("vertex connectivity needs at least two vertices")
    if not is_connected(g):
        return 0
    best = n - 1
    i = 0
    while i <= best and i < n:
        for j in range(i + 1, n):
            if not g.adj[i] >> j & 1:
                best = min(best, _local_connectivity(g, i, j, best))
        i += 1
    return best


def two_separations(g: Graph) -> list[TwoSeparation]:
    """One canonical separation for each pair ``{u, v}`` whose removal disconnects ``g``.

    The ``a_side`` is the smallest component (ties: lowest mask) plus the cut.
    """
    out = []
    n = g.n
    full = g.vertex_mask
    for u in range(n):
        for v in range(u + 1, n):
            cut = (1 << u) | (1 << v)
            comps = components(g, full & ~cut)
            if len(comps) < 2:
                continue
            small = min(comps, key=lambda m: (m.bit_count(), m))
            out.append(TwoSeparation(small | cut, (full & ~small) | cut, (u, v)))
    return out


def detect_book(g: Graph) -> BookWitness | None:
    """Witness that ``g`` is exactly the book with ``n - 2`` pages."""
    n = g.n
    if n < 3 or g.edge_count != 2 * (n - 2) + 1:
        return None
    full = g.vertex_mask
    for x1, x2 in g.edges():
        others = full & ~((1 << x1) | (1 << x2))
        if g.adj[x1] & others != others or g.adj[x2] & others != others:
            continue
        if all(g.adj[y] & others == 0 for y in bits(others)):
            return BookWitness((x1, x2), tuple(bits(others)))
    return None


def find_k4(g: Graph) -> int | None:
    adj = g.adj
    for a in range(g.n):
        pa = adj[a] & ~((2 << a) - 1)
        for b in bits(pa):
            pb = pa & adj[b] & ~((2 << b) - 1)
            for c in bits(pb):
                pc = pb & adj[c] & ~((2 << c) - 1)
                if pc:
                    d = (pc & -pc).bit_length() - 1
                    return (1 << a) | (1 << b) | (1 << c) | (1 << d)
    return None


def find_w6(g: Graph) -> int | None:
    """A hub plus a 5-cycle inside its neighbourhood (subgraph containment)."""
    for h in range(g.n):
        nb = g.adj[h]
        if nb.bit_count() < 5:
            continue
        sub, verts = g.induced(nb)
        for c in _iter_cycles(sub, 5, 5):
            mask = 1 << h
            for i in c.vertices:
                mask |= 1 << verts[i]
            return mask
    return None


def _iter_induced_cycles(g: Graph, m: int) -> Iterator[Cycle]:
    """Induced (chordless) cycles of length ``m`` in lexicographic canonical order."""
    adj = g.adj
    for s in range(g.n):
        allowed = g.vertex_mask & ~((2 << s) - 1)
        adj_s = adj[s]
        for first in bits(adj_s & allowed):
            path = [s, first]
            on_path = (1 << s) | (1 << first)
            stack: list[int | None] = [None]
            while stack:
                cand = stack[-1]
                d = len(path)
                if cand is None:
                    cand = 0
                    if d < m:
                        blocked = 0
                        for x in path[1:-1]:
                            blocked |= adj[x]
                        cand = adj[path[-1]] & allowed & ~on_path & ~blocked
                        if d + 1 < m:
                            cand &= ~adj_s
                        else:
                            cand &= adj_s & ~((2 << first) - 1)
                if not cand:
                    stack.pop()
                    on_path &= ~(1 << path.pop())
                    continue
                w = (cand & -cand).bit_length() - 1
                stack[-1] = cand & (cand - 1)
                if d + 1 == m:
                    yield Cycle(tuple(path) + (w,))
                    continue
                path.append(w)
                on_path |= 1 << w
                stack.append(None)


def iter_induced_odd_cycles(g: Graph) -> Iterator[Cycle]:
    for m in range(3, g.n + 1, 2):
        yield from _iter_induced_cycles(g, m)


def non_separating_induced_odd_cycle(g: Graph) -> Cycle | None:
    """Shortest-first search for an induced odd cycle whose removal leaves ``g`` connected."""
    full = g.vertex_mask
    for c in iter_induced_odd_cycles(g):
        if is_connected(g, full & ~c.mask):
            return c
    return None


def odd_cycle_with_two_diagonals(g: Graph) -> tuple[Cycle, list[tuple[int, int]]] | None:
    for m in range(5, g.n + 1, 2):
        for c in _iter_cycles(g, m, m):
            inside = 0
            cm = c.mask
            for v in c.vertices:
                inside += (g.adj[v] & cm).bit_count()
            if inside // 2 - m >= 2:
                return c, c.chords(g)
    return None


@dataclass(frozen=True)
class DiracCheck:
    g1_side: int
    g2_side: int
    clauses: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.clauses.values())

    def to_dict(self) -> dict:
        return {"g1_side": list(bits(self.g1_side)), "g2_side": list(bits(self.g2_side)),
                "clauses": dict(self.clauses)}


def _validate_separation(g: Graph, sep: TwoSeparation) -> None:
    u, v = sep.cut
    cut = (1 << u) | (1 << v)
    if u == v or not (0 <= u < g.n and 0 <= v < g.n):
        raise InvalidSeparation("cut must be two distinct vertices of the graph")
    if sep.a_side | sep.b_side != g.vertex_mask or sep.a_side & sep.b_side != cut:
        raise InvalidSeparation("sides must cover V and meet exactly in the cut")
    if sep.a_side == cut or sep.b_side == cut:
        raise InvalidSeparation("both sides must be strictly larger than the cut")
    a_only, b_only = sep.a_side & ~cut, sep.b_side & ~cut
    if any(g.adj[x] & b_only for x in bits(a_only)):
        raise InvalidSeparation("an edge crosses the separation")


def _side_graph(g: Graph, side: int, u: int, v: int) -> tuple[Graph, int, int]:
    sub, verts = g.induced(side)
    return sub, verts.index(u), verts.index(v)


def dirac_decomposition_check(g: Graph, sep: TwoSeparation, chi: int | None = None,
                              budget: int = DEFAULT_NODE_BUDGET) -> DiracCheck:
    """Check the split of a critical graph at a 2-cut into a same-colour and a distinct-colour side.

    Both assignments of ``(a_side, b_side)`` to ``(G1, G2)`` are tried; the one
    passing more clauses is reported (``a_side`` as ``G1`` on ties).
    """
    _validate_separation(g, sep)
    if chi is None:
        chi = chromatic_number(g, budget)[0]
    u, v = sep.cut
    nonadjacent = not g.has_edge(u, v)
    best: DiracCheck | None = None
    for s1, s2 in ((sep.a_side, sep.b_side), (sep.b_side, sep.a_side)):
        g1, u1, v1 = _side_graph(g, s1, u, v)
        g2, u2, v2 = _side_graph(g, s2, u, v)
        clauses = {"uv_nonadjacent": nonadjacent}
        g1_plus = add_edge(g1, u1, v1)
        g2_merged = contract_pair(g2, u2, v2)
        # type 1: no (chi-1)-colouring separates u, v; type 2: none merges them
        clauses["g1_type1"] = (k_coloring(g1, chi - 1, budget) is not None
                               and k_coloring(g1_plus, chi - 1, budget) is None)
        clauses["g2_type2"] = (k_coloring(g2, chi - 1, budget) is not None
                               and k_coloring(g2_merged, chi - 1, budget) is None)
        r1 = is_k_critical(g1_plus, budget)
        r2 = is_k_critical(g2_merged, budget)
        clauses["g1_plus_uv_critical"] = r1.is_k_critical and r1.chi == chi
        clauses["g2_contracted_critical"] = r2.is_k_critical and r2.chi == chi
        check = DiracCheck(s1, s2, clauses)
        if best is None or sum(clauses.values()) > sum(best.clauses.values()):
            best = check
    assert best is not None
    return best
