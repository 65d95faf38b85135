"""Simple undirected graphs on at most 32 vertices, stored as neighbourhood bitsets.

A vertex set is a plain ``int`` whose bit ``i`` marks vertex ``i``.  Graph
values are immutable; every editing helper returns a fresh :class:`Graph`.

Named graphs use a fixed vertex numbering:

* ``complete(k)``: vertices ``0..k-1``.
* ``cycle(k)``: ``0-1-...-(k-1)-0``.
* ``path(k)``: ``0-1-...-(k-1)`` (``k`` vertices).
* ``wheel(k)``: hub ``0``, rim cycle ``1-2-...-(k-1)-1``; ``wheel(6)`` is W6.
* ``book(r)``: spine ``0-1``, pages ``2..r+1`` each joined to both spine ends.
* ``complete_bipartite(a,b)``: sides ``0..a-1`` and ``a..a+b-1``.
* ``petersen``: Kneser graph K(5,2); vertex ``i`` is the ``i``-th 2-subset of
  ``{0..4}`` in lexicographic order, adjacent when disjoint.
* ``groetzsch``: Mycielskian of C5; ``0..4`` the cycle, ``5+i`` the shadow of
  ``i`` (joined to the cycle neighbours of ``i``), ``10`` the apex.
* ``chvatal``: the 12-vertex 4-regular triangle-free Chvátal graph with the
  edge list in ``_CHVATAL_EDGES``.
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_ORDER = 32
GRAPH6_HEADER = b">>graph6<<"

VertexSet = int


class GraphError(ValueError):
    pass


class UnsupportedOrder(GraphError):
    pass


class IndexOutOfRange(GraphError, IndexError):
    pass


class EdgeAbsent(GraphError):
    pass


class MalformedGraph6(GraphError):
    pass


class MalformedHeader(MalformedGraph6):
    pass


class NonCanonicalPadding(MalformedGraph6):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True, slots=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        n, adj = self.n, self.adj
        if n < 0 or n > MAX_ORDER:
            raise UnsupportedOrder(f"order {n} outside 0..{MAX_ORDER}")
        if len(adj) != n:
            raise GraphError("adjacency length does not match order")
        full = (1 << n) - 1
        for i, row in enumerate(adj):
            if row & ~full:
                raise GraphError(f"row {i} has a neighbour outside 0..{n - 1}")
            if row >> i & 1:
                raise GraphError(f"self-loop at {i}")
            for j in bits(row):
                if not adj[j] >> i & 1:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0 or n > MAX_ORDER:
            raise UnsupportedOrder(f"order {n} outside 0..{MAX_ORDER}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise IndexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, row in enumerate(self.adj):
            for v in bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def induced(self, mask: int) -> tuple[Graph, list[int]]:
        """Induced subgraph on ``mask``, renumbered densely.

        Returns the subgraph and the list mapping new index -> old vertex.
        """
        verts = list(bits(mask & self.vertex_mask))
        index = {v: i for i, v in enumerate(verts)}
        adj = []
        for v in verts:
            row = 0
            for w in bits(self.adj[v] & mask):
                row |= 1 << index[w]
            adj.append(row)
        return Graph(len(verts), tuple(adj)), verts

    def relabel(self, perm: list[int]) -> Graph:
        """Graph with vertex ``perm[i]`` of ``self`` renamed to ``i``."""
        pos = [0] * self.n
        for i, v in enumerate(perm):
            pos[v] = i
        adj = [0] * self.n
        for i, v in enumerate(perm):
            row = 0
            for w in bits(self.adj[v]):
                row |= 1 << pos[w]
            adj[i] = row
        return Graph(self.n, tuple(adj))

    def __str__(self) -> str:
        return to_graph6(self).decode("ascii")


def components(g: Graph, mask: int | None = None) -> list[int]:
    """Connected components of the subgraph induced on ``mask`` (default: all)."""
    if mask is None:
        mask = g.vertex_mask
    adj = g.adj
    out = []
    rest = mask
    while rest:
        seen = rest & -rest
        frontier = seen
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        out.append(seen)
        rest &= ~seen
    return out


def is_connected(g: Graph, mask: int | None = None) -> bool:
    """Whether the subgraph induced on ``mask`` is connected; empty counts as connected."""
    if mask is None:
        mask = g.vertex_mask
    if not mask:
        return True
    adj = g.adj
    seen = mask & -mask
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


# ---------------------------------------------------------------------------
# graph6

def _decode_order(data: bytes) -> tuple[int, int]:
    if not data:
        raise MalformedHeader("empty graph6 string")
    first = data[0]
    if first == ord("~"):
        raise UnsupportedOrder("long-form graph6 (n >= 63) is not supported")
    if not 63 <= first <= 126:
        raise MalformedHeader(f"invalid graph6 order byte {first!r}")
    n = first - 63
    if n > MAX_ORDER:
        raise UnsupportedOrder(f"order {n} exceeds {MAX_ORDER}")
    return n, 1


def parse_graph6(text: bytes | str) -> Graph:
    """Decode a single short-form graph6 line."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    elif data.startswith(b">>"):
        raise MalformedHeader("unknown >>header<<")
    if data[:1] in (b":", b";", b"&"):
        raise MalformedHeader("sparse6/digraph6 input is not accepted")
    n, pos = _decode_order(data)
    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != nchars:
        raise MalformedGraph6(f"expected {nchars} body bytes for n={n}, got {len(body)}")
    value = 0
    for ch in body:
        if not 63 <= ch <= 126:
            raise MalformedGraph6(f"invalid graph6 byte {ch!r}")
        value = (value << 6) | (ch - 63)
    pad = nchars * 6 - nbits
    if value & ((1 << pad) - 1):
        raise NonCanonicalPadding("graph6 padding bits must be zero")
    value >>= pad
    adj = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(adj))


def to_graph6(g: Graph) -> bytes:
    n = g.n
    if n > MAX_ORDER:
        raise UnsupportedOrder(f"order {n} exceeds {MAX_ORDER}")
    out = bytearray([n + 63])
    acc = 0
    nacc = 0
    adj = g.adj
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | (adj[i] >> j & 1)
            nacc += 1
            if nacc == 6:
                out.append(acc + 63)
                acc = nacc = 0
    if nacc:
        out.append((acc << (6 - nacc)) + 63)
    return bytes(out)


def read_graph6_lines(lines: Iterable[bytes | str]) -> Iterator[Graph]:
    """Parse a stream of graph6 lines, skipping blank ones; the header may lead the first."""
    for line in lines:
        if isinstance(line, str):
            line = line.encode("ascii")
        line = line.strip()
        if line:
            yield parse_graph6(line)


# ---------------------------------------------------------------------------
# named graphs

_CHVATAL_EDGES = [
    (0, 1), (0, 4), (0, 6), (0, 9), (1, 2), (1, 5), (1, 7), (2, 3), (2, 6), (2, 8),
    (3, 4), (3, 7), (3, 9), (4, 5), (4, 8), (5, 10), (5, 11), (6, 10), (6, 11),
    (7, 8), (7, 11), (8, 10), (9, 10), (9, 11),
]

_NAME_RE = re.compile(r"^\s*([a-z_]+)\s*(?:\(\s*([0-9,\s]*)\))?\s*$")
_ARITY = {
    "petersen": 0, "groetzsch": 0, "chvatal": 0,
    "complete": 1, "cycle": 1, "wheel": 1, "book": 1, "path": 1,
    "complete_bipartite": 2,
}


def parse_graph_id(text: str) -> tuple[str, tuple[int, ...]]:
    """Split ``"wheel(6)"`` into ``("wheel", (6,))``; validates name and arity."""
    m = _NAME_RE.match(text)
    if not m:
        raise GraphError(f"malformed graph id {text!r}")
    name, args = m.group(1), m.group(2)
    params = tuple(int(a) for a in args.split(",") if a.strip()) if args else ()
    if name not in _ARITY:
        raise GraphError(f"unknown named graph {name!r}")
    if len(params) != _ARITY[name]:
        raise GraphError(f"{name} takes {_ARITY[name]} parameter(s), got {len(params)}")
    if any(p < 1 for p in params):
        raise GraphError("graph parameters must be >= 1")
    return name, params


def named_graph(graph_id: str) -> Graph:
    name, p = parse_graph_id(graph_id)
    if name == "petersen":
        pairs = list(combinations(range(5), 2))
        edges = [(i, j) for i, j in combinations(range(10), 2) if not set(pairs[i]) & set(pairs[j])]
        return Graph.from_edges(10, edges)
    if name == "groetzsch":
        edges = [(i, (i + 1) % 5) for i in range(5)]
        edges += [(5 + i, (i + d) % 5) for i in range(5) for d in (1, 4)]
        edges += [(10, 5 + i) for i in range(5)]
        return Graph.from_edges(11, edges)
    if name == "chvatal":
        return Graph.from_edges(12, _CHVATAL_EDGES)
    if name == "complete":
        (k,) = p
        _check_order(k)
        return Graph.from_edges(k, combinations(range(k), 2))
    if name == "cycle":
        (k,) = p
        if k < 3:
            raise GraphError("cycle(k) needs k >= 3")
        _check_order(k)
        return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])
    if name == "path":
        (k,) = p
        _check_order(k)
        return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])
    if name == "wheel":
        (k,) = p
        if k < 4:
            raise GraphError("wheel(k) needs k >= 4")
        _check_order(k)
        rim = k - 1
        edges = [(0, i) for i in range(1, k)]
        edges += [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
        return Graph.from_edges(k, edges)
    if name == "book":
        (r,) = p
        _check_order(r + 2)
        edges = [(0, 1)] + [(s, 2 + i) for i in range(r) for s in (0, 1)]
        return Graph.from_edges(r + 2, edges)
    a, b = p
    _check_order(a + b)
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _check_order(n: int) -> None:
    if n > MAX_ORDER:
        raise UnsupportedOrder(f"order {n} exceeds {MAX_ORDER}")


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdős–Rényi G(n, p) from a seeded Mersenne Twister (``random.Random``).

    Pairs ``i < j`` are visited in lexicographic order, one draw each.
    """
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability {p} outside [0, 1]")
    _check_order(n)
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# editing

def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise IndexOutOfRange(f"vertex {v} outside 0..{g.n - 1}")


def delete_vertex(g: Graph, v: int) -> Graph:
    _check_vertex(g, v)
    return g.induced(g.vertex_mask & ~(1 << v))[0]


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if not g.has_edge(u, v):
        raise EdgeAbsent(f"no edge {u}-{v}")
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return Graph(g.n, tuple(adj))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise GraphError(f"self-loop at {u}")
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph(g.n, tuple(adj))


def contract_pair(g: Graph, u: int, v: int) -> Graph:
    """Identify ``u`` and ``v``; the merged vertex takes index ``min(u, v)``.

    Vertices above ``max(u, v)`` shift down by one.  Loops are dropped and
    parallel edges collapse.
    """
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise GraphError("contract_pair needs two distinct vertices")
    keep, gone = min(u, v), max(u, v)

    def image(x: int) -> int:
        if x == gone:
            return keep
        return x - 1 if x > gone else x

    edges = set()
    for a, b in g.edges():
        a, b = image(a), image(b)
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(g.n - 1, sorted(edges))


def is_bipartite(g: Graph) -> tuple[int, int] | None:
    """Return parts ``(A, B)`` as vertex masks, or ``None`` if an odd cycle exists.

    Each component's least vertex goes to ``A``, so isolated vertices land in ``A``.
    """
    side = [-1] * g.n
    adj = g.adj
    a = b = 0
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in bits(adj[x]):
                if side[y] < 0:
                    side[y] = side[x] ^ 1
                    queue.append(y)
                elif side[y] == side[x]:
                    return None
    for v, s in enumerate(side):
        if s:
            b |= 1 << v
        else:
            a |= 1 << v
    return a, b


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + h.n, g.adj + tuple(row << shift for row in h.adj))


def blocks_and_cuts(g: Graph) -> tuple[list[int], int]:
    """Blocks (as vertex masks) and the cut-vertex mask, by Tarjan lowpoints.

    Isolated vertices form singleton blocks.  Blocks are sorted by mask value.
    """
    n = g.n
    adj = g.adj
    disc = [-1] * n
    low = [0] * n
    out: list[int] = []
    cuts = 0
    t = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        if not adj[root]:
            disc[root] = t
            t += 1
            out.append(1 << root)
            continue
        disc[root] = low[root] = t
        t += 1
        edge_stack: list[tuple[int, int]] = []
        # frames: (vertex, parent, remaining neighbour mask)
        stack = [(root, -1, adj[root])]
        root_children = 0
        while stack:
            v, parent, rest = stack[-1]
            if rest:
                w = (rest & -rest).bit_length() - 1
                stack[-1] = (v, parent, rest & (rest - 1))
                if disc[w] < 0:
                    disc[w] = low[w] = t
                    t += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, adj[w]))
                elif w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
                continue
            stack.pop()
            if parent < 0:
                continue
            if low[v] < low[parent]:
                low[parent] = low[v]
            if low[v] >= disc[parent]:
                block = 0
                while True:
                    a, b = edge_stack.pop()
                    block |= (1 << a) | (1 << b)
                    if a == parent and b == v:
                        break
                out.append(block)
                if parent == root:
                    root_children += 1
                else:
                    cuts |= 1 << parent
        if root_children >= 2:
            cuts |= 1 << root
    out.sort()
    return out, cuts
