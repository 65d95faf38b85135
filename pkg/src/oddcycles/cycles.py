"""Cycle-length spectra, odd girth and explicit cycle enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .graph_core import Graph, bits, blocks_and_cuts, is_bipartite

DEFAULT_BUDGET = 10**7


class BipartiteInput(ValueError):
    pass


class _BudgetHit(Exception):
    pass


class _Saturated(Exception):
    pass


@dataclass(frozen=True)
class CycleSpectrum:
    lengths: frozenset[int]
    complete: bool
    visited: int = 0

    @property
    def odd_lengths(self) -> frozenset[int]:
        return frozenset(x for x in self.lengths if x % 2)

    def to_dict(self) -> dict:
        return {
            "lengths": sorted(self.lengths),
            "odd_lengths": sorted(self.odd_lengths),
            "complete": self.complete,
        }


@dataclass(frozen=True)
class Cycle:
    """A cycle as a canonical vertex sequence.

    Canonical means: least vertex first, then the direction whose second
    vertex is the smaller of the two neighbours of that least vertex.
    """

    vertices: tuple[int, ...]

    @classmethod
    def canonical(cls, seq) -> Cycle:
        seq = list(seq)
        if len(seq) < 3 or len(set(seq)) != len(seq):
            raise ValueError("a cycle needs at least 3 distinct vertices")
        i = seq.index(min(seq))
        seq = seq[i:] + seq[:i]
        if seq[-1] < seq[1]:
            seq = [seq[0]] + seq[:0:-1]
        return cls(tuple(seq))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def is_valid_in(self, g: Graph) -> bool:
        vs = self.vertices
        if len(vs) < 3 or len(set(vs)) != len(vs):
            return False
        if any(not 0 <= v < g.n for v in vs):
            return False
        return all(g.has_edge(a, b) for a, b in self.edges())

    def chords(self, g: Graph) -> list[tuple[int, int]]:
        """Edges of ``g`` joining two non-consecutive vertices of the cycle."""
        vs = self.vertices
        m = len(vs)
        pos = {v: i for i, v in enumerate(vs)}
        out = []
        for i, v in enumerate(vs):
            for w in bits(g.adj[v] & self.mask):
                j = pos[w]
                if j > i and (j - i) % m not in (1, m - 1):
                    out.append((min(v, w), max(v, w)))
        return sorted(out)

    def path(self, i: int, j: int) -> list[int]:
        """Vertices from position ``i`` to ``j`` walking forward (indices mod length)."""
        m = len(self.vertices)
        out = [self.vertices[i % m]]
        k = i % m
        while k != j % m:
            k = (k + 1) % m
            out.append(self.vertices[k])
        return out


class CycleList(NamedTuple):
    cycles: list[Cycle]
    truncated: bool


class IntersectionResult(NamedTuple):
    value: int | None
    complete: bool


def _length_mask(lo: int, hi: int, step: int = 1) -> int:
    m = 0
    for x in range(lo, hi + 1, step):
        m |= 1 << x
    return m


def _possible_lengths(g: Graph, block: int) -> int:
    """Upper bound on the cycle lengths a block can carry, as a bitmask over lengths."""
    size = block.bit_count()
    sub, _ = g.induced(block)
    parts = is_bipartite(sub)
    if parts is None:
        return _length_mask(3, size)
    a, b = parts
    return _length_mask(4, 2 * min(a.bit_count(), b.bit_count()), 2)


def cycle_lengths(g: Graph, budget: int = DEFAULT_BUDGET) -> CycleSpectrum:
    """All cycle lengths of ``g`` by backtracking over simple paths inside each block.

    A path is only extended while some still-unseen length is reachable from
    it, and a block is abandoned once every length it could carry has been
    seen.  Each closed cycle is counted once against ``budget``.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    adj = g.adj
    found = 0
    visited = 0
    complete = True
    block_list, _ = blocks_and_cuts(g)
    missing = 0
    s = first = 0
    adj_s = 0

    def extend(v: int, avail: int, d: int) -> None:
        nonlocal found, visited, missing
        if d >= 3 and adj_s >> v & 1 and first < v:
            visited += 1
            if visited > budget:
                raise _BudgetHit
            bit = 1 << d
            if missing & bit:
                found |= bit
                missing ^= bit
                if not missing:
                    raise _Saturated
        r = avail.bit_count()
        if not (missing >> (d + 1)) & ((1 << r) - 1):
            return
        cand = adj[v] & avail
        while cand:  # inlined bits(): this loop is the campaign hot path
            low = cand & -cand
            cand ^= low
            extend(low.bit_length() - 1, avail ^ low, d + 1)

    try:
        for block in block_list:
            if block.bit_count() < 3:
                continue
            missing = _possible_lengths(g, block) & ~found
            if not missing:
                continue
            try:
                for s in bits(block):
                    allowed = block & ~((2 << s) - 1)
                    if allowed.bit_count() < 2:
                        break
                    adj_s = adj[s]
                    for first in bits(adj_s & allowed):
                        extend(first, allowed & ~(1 << first), 2)
            except _Saturated:
                pass
    except _BudgetHit:
        complete = False
    lengths = frozenset(x for x in range(3, g.n + 1) if found >> x & 1)
    return CycleSpectrum(lengths, complete, visited)


def odd_lengths(g: Graph, budget: int = DEFAULT_BUDGET) -> frozenset[int]:
    return cycle_lengths(g, budget).odd_lengths


def odd_girth(g: Graph) -> int | None:
    """Shortest odd cycle length via BFS in the bipartite double cover.

    From each vertex ``v`` the distance from ``(v, 0)`` to ``(v, 1)`` is the
    shortest odd closed walk through ``v``; the minimum over ``v`` is the odd
    girth, since a shortest odd closed walk is a cycle.
    """
    adj = g.adj
    best: int | None = None
    for v in range(g.n):
        # seen[p]: vertices reached at distance of parity p
        seen = [1 << v, 0]
        frontier = 1 << v
        parity = 0
        d = 0
        while frontier:
            d += 1
            if best is not None and d >= best:
                break
            parity ^= 1
            nxt = 0
            for x in bits(frontier):
                nxt |= adj[x]
            nxt &= ~seen[parity]
            if parity and nxt >> v & 1:
                best = d
                break
            seen[parity] |= nxt
            frontier = nxt
    return best


def _iter_cycles(g: Graph, lo: int, hi: int, budget: int | None = None) -> Iterator[Cycle]:
    """Canonical cycles with length in ``lo..hi``, lexicographic order.

    Raises ``_BudgetHit`` after ``budget`` cycles if a budget is given.
    """
    adj = g.adj
    n = g.n
    count = 0
    for s in range(n):
        allowed = g.vertex_mask & ~((2 << s) - 1)
        if allowed.bit_count() < 2:
            break
        adj_s = adj[s]
        path = [s]
        # explicit stack of (vertex, avail, remaining candidate mask)
        firsts = adj_s & allowed
        for first in bits(firsts):
            path.append(first)
            stack = [(first, allowed & ~(1 << first), None)]
            while stack:
                v, avail, cand = stack[-1]
                d = len(path)
                if cand is None:
                    if lo <= d <= hi and d >= 3 and adj_s >> v & 1 and first < v:
                        count += 1
                        if budget is not None and count > budget:
                            raise _BudgetHit
                        yield Cycle(tuple(path))
                    cand = adj[v] & avail if d < hi and avail.bit_count() >= max(lo - d, 1) else 0
                if cand:
                    w = (cand & -cand).bit_length() - 1
                    stack[-1] = (v, avail, cand & (cand - 1))
                    path.append(w)
                    stack.append((w, avail & ~(1 << w), None))
                else:
                    stack.pop()
                    path.pop()
        path.pop()


def cycles_of_length(g: Graph, m: int, limit: int) -> CycleList:
    """Up to ``limit`` canonical ``m``-cycles in lexicographic order."""
    if not 3 <= m <= max(g.n, 3):
        raise ValueError(f"cycle length {m} outside 3..{g.n}")
    out: list[Cycle] = []
    for c in _iter_cycles(g, m, m):
        if len(out) == limit:
            return CycleList(out, True)
        out.append(c)
    return CycleList(out, False)


def iter_odd_cycles(g: Graph, budget: int | None = None) -> Iterator[Cycle]:
    """Odd cycles by increasing length, lexicographic within a length."""
    for m in range(3, g.n + 1, 2):
        yield from _iter_cycles(g, m, m, budget)


def shortest_odd_cycle(g: Graph) -> Cycle | None:
    og = odd_girth(g)
    if og is None:
        return None
    return cycles_of_length(g, og, 1).cycles[0]


def min_pairwise_odd_cycle_intersection(g: Graph, budget: int = DEFAULT_BUDGET) -> IntersectionResult:
    """Least ``|V(C) ∩ V(C')|`` over unordered pairs of distinct odd cycles.

    ``value`` is ``None`` when fewer than two odd cycles exist, or when the
    budget ran out (then ``complete`` is false).
    """
    if is_bipartite(g) is not None:
        raise BipartiteInput("graph has no odd cycle")
    masks: list[int] = []
    try:
        for c in _iter_cycles(g, 3, g.n, budget):
            if len(c) % 2:
                masks.append(c.mask)
    except _BudgetHit:
        return IntersectionResult(None, False)
    best: int | None = None
    for i in range(len(masks)):
        mi = masks[i]
        for j in range(i + 1, len(masks)):
            k = (mi & masks[j]).bit_count()
            if best is None or k < best:
                best = k
                if best == 0:
                    return IntersectionResult(0, True)
    return IntersectionResult(best, True)
