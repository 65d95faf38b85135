"""Explicit colouring constructions and an orchestrator that falls back to the exact solver.

Colours are 0-based.  The three-colour rule around an odd cycle with
diagonals ``v0v2`` and ``v1v3`` uses colours 1, 2, 3 in its usual statement;
here they become 0, 1, 2 (``v1`` gets 2, the set ``S1`` gets 0, ``S2`` gets 1).
The type-alternating colouring already uses 0, 1, 2 and keeps them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .cycles import DEFAULT_BUDGET, Cycle, cycle_lengths
from .graph_core import Graph, bits, components, is_bipartite
from .invariants import DEFAULT_NODE_BUDGET, ColoringCertificate, chromatic_number
from .structure import iter_induced_odd_cycles


class ConstructionError(ValueError):
    """The input is outside the graph class a construction is meant for."""


class ExtraChord(ConstructionError):
    pass


class ComponentNotBipartite(ConstructionError):
    pass


class TooManyAttachments(ConstructionError):
    pass


class PreconditionViolated(ConstructionError):
    pass


@dataclass(frozen=True)
class PhiPlan:
    roles: tuple[int, ...]
    """``roles[i]`` is the vertex playing ``v_i``; diagonals are ``v0v2`` and ``v1v3``."""

    @property
    def s1(self) -> int:
        k = len(self.roles)
        return _mask(self.roles[i] for i in [*range(3, k - 1, 2), 0])

    @property
    def s2(self) -> int:
        k = len(self.roles)
        return _mask(self.roles[i] for i in range(2, k, 2))

    @classmethod
    def from_cycle(cls, g: Graph, cycle: Cycle) -> PhiPlan:
        """Rotate/reflect ``cycle`` so that ``v0v2`` and ``v1v3`` are edges of ``g``."""
        vs = list(cycle.vertices)
        k = len(vs)
        if k % 2 == 0 or k < 5:
            raise ConstructionError("needs an odd cycle of length at least 5")
        for seq in (vs, vs[::-1]):
            for r in range(k):
                roles = seq[r:] + seq[:r]
                if g.has_edge(roles[0], roles[2]) and g.has_edge(roles[1], roles[3]):
                    return cls(tuple(roles))
        raise ConstructionError("cycle has no pair of crossing diagonals v0v2, v1v3")


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def phi_base_coloring(g: Graph, plan: PhiPlan) -> ColoringCertificate:
    """Three-colour the cycle plus its two diagonals by the fixed role rule."""
    roles = plan.roles
    k = len(roles)
    cyc = Cycle.canonical(roles)
    if not cyc.is_valid_in(g):
        raise ConstructionError("plan vertices do not form a cycle of the graph")
    expected = sorted({tuple(sorted((roles[0], roles[2]))), tuple(sorted((roles[1], roles[3])))})
    chords = cyc.chords(g)
    if chords != expected:
        raise ExtraChord(f"induced subgraph has chords {chords}, expected exactly {expected}")
    colors = {roles[1]: 2}
    for v in bits(plan.s1):
        colors[v] = 0
    for v in bits(plan.s2):
        colors[v] = 1
    assert len(colors) == k
    cert = ColoringCertificate(colors, 3, "phi_construction")
    if not cert.is_proper(g):
        raise RuntimeError("phi colouring is not proper; role rule violated")
    return cert


def extend_over_k4(g: Graph, x: int) -> ColoringCertificate:
    """Four-colour ``g`` from a 4-clique ``x`` when every component of ``g - x`` is bipartite
    and touches at most two clique vertices.

    Clique vertices get colours 0..3 in index order.  Each component's parts
    take the colours of the two lowest clique vertices it does not touch.
    """
    xs = list(bits(x))
    if len(xs) != 4 or any((g.adj[v] & x) != x & ~(1 << v) for v in xs):
        raise ConstructionError("x must be a 4-clique of g")
    colors = {v: i for i, v in enumerate(xs)}
    for comp in components(g, g.vertex_mask & ~x):
        sub, verts = g.induced(comp)
        parts = is_bipartite(sub)
        if parts is None:
            raise ComponentNotBipartite(f"component {verts} of g - X has an odd cycle")
        attached = [v for v in xs if g.adj[v] & comp]
        if len(attached) > 2:
            raise TooManyAttachments(f"component {verts} is adjacent to clique vertices {attached}")
        free = [v for v in xs if v not in attached]
        ca, cb = colors[free[0]], colors[free[1]]
        for i in bits(parts[0]):
            colors[verts[i]] = ca
        for i in bits(parts[1]):
            colors[verts[i]] = cb
    cert = ColoringCertificate(colors, 4, "k4_extension")
    if not cert.is_proper(g):
        raise RuntimeError("k4 extension produced an improper colouring")
    return cert


def type_alternating_coloring(g: Graph, c: Cycle, parts: tuple[int, int],
                              tags: Mapping[int, int]) -> ColoringCertificate | None:
    """Three-colour ``g`` from an induced cycle ``c`` whose complement is bipartite ``(A, B)``.

    ``tags[u]`` is 0 when ``u``'s neighbours off the cycle all lie in ``A`` and
    1 when they all lie in ``B``.  ``A`` gets colour 1, ``B`` colour 0, and each
    maximal run of equal tags ``j`` along the cycle alternates ``j, 2, j, ...``.
    Returns ``None`` when only one tag occurs.
    """
    a, b = parts
    cm = c.mask
    rest = g.vertex_mask & ~cm
    if not c.is_valid_in(g):
        raise PreconditionViolated("c is not a cycle of g")
    if c.chords(g):
        raise PreconditionViolated("c is not induced")
    if a & b or (a | b) != rest:
        raise PreconditionViolated("(A, B) must partition V(g) - V(c)")
    if any(g.adj[v] & a for v in bits(a)) or any(g.adj[v] & b for v in bits(b)):
        raise PreconditionViolated("(A, B) is not a bipartition of g - V(c)")
    if len(components(g, rest)) > 1:
        raise PreconditionViolated("g - V(c) is not connected")
    for u in c.vertices:
        if u not in tags or tags[u] not in (0, 1):
            raise PreconditionViolated(f"cycle vertex {u} has no valid tag")
        side = a if tags[u] == 0 else b
        if g.adj[u] & rest & ~side:
            raise PreconditionViolated(f"tag of {u} disagrees with its neighbourhood")
    seq = list(c.vertices)
    if len({tags[u] for u in seq}) < 2:
        return None
    start = next(i for i in range(len(seq)) if tags[seq[i]] != tags[seq[i - 1]])
    seq = seq[start:] + seq[:start]
    colors: dict[int, int] = {}
    for v in bits(a):
        colors[v] = 1
    for v in bits(b):
        colors[v] = 0
    pos = 0
    for i, u in enumerate(seq):
        if i > 0 and tags[u] != tags[seq[i - 1]]:
            pos = 0
        colors[u] = tags[u] if pos % 2 == 0 else 2
        pos += 1
    cert = ColoringCertificate(colors, 3, "type_alternating")
    if not cert.is_proper(g):
        raise RuntimeError("type-alternating colouring is not proper despite valid preconditions")
    return cert


def _tags_for(g: Graph, c: Cycle, a: int, b: int) -> dict[int, int] | None:
    tags: dict[int, int] = {}
    free = []
    for u in c.vertices:
        na, nb = g.adj[u] & a, g.adj[u] & b
        if na and nb:
            return None
        if na:
            tags[u] = 0
        elif nb:
            tags[u] = 1
        else:
            free.append(u)
    missing = [t for t in (0, 1) if t not in tags.values()]
    for u in free:
        tags[u] = missing.pop(0) if missing else 0
    return tags


def try_type_alternating(g: Graph) -> ColoringCertificate | None:
    """First success over non-separating induced odd cycles, shortest first."""
    full = g.vertex_mask
    for c in iter_induced_odd_cycles(g):
        rest = full & ~c.mask
        if len(components(g, rest)) > 1:
            continue
        sub, verts = g.induced(rest)
        parts = is_bipartite(sub)
        if parts is None:
            continue
        a = _mask(verts[i] for i in bits(parts[0]))
        b = _mask(verts[i] for i in bits(parts[1]))
        tags = _tags_for(g, c, a, b)
        if tags is None:
            continue
        cert = type_alternating_coloring(g, c, (a, b), tags)
        if cert is not None:
            return cert
    return None


def _four_cliques(g: Graph):
    adj = g.adj
    for a in range(g.n):
        pa = adj[a] & ~((2 << a) - 1)
        for b in bits(pa):
            pb = pa & adj[b] & ~((2 << b) - 1)
            for c in bits(pb):
                for d in bits(pb & adj[c] & ~((2 << c) - 1)):
                    yield (1 << a) | (1 << b) | (1 << c) | (1 << d)


def is_three_plus_gap(odd: frozenset[int]) -> bool:
    """``odd == {3, 3 + 2l}`` with ``l >= 2``."""
    return len(odd) == 2 and 3 in odd and max(odd) >= 7


def constructive_three_color(g: Graph, budget: int = DEFAULT_BUDGET,
                             node_budget: int = DEFAULT_NODE_BUDGET) -> tuple[ColoringCertificate, str]:
    """Colour ``g`` by the first applicable construction, else by the exact solver.

    Order: bipartition; 4-clique extension (odd lengths ``{3, 3+2l}``, ``l >= 2``);
    type-alternating colouring around a non-separating induced odd cycle;
    exact solver.
    """
    parts = is_bipartite(g)
    if parts is not None:
        if g.edge_count == 0:
            cert = ColoringCertificate({v: 0 for v in range(g.n)}, min(g.n, 1), "bipartite")
        else:
            cols = {v: 0 for v in bits(parts[0])}
            cols.update({v: 1 for v in bits(parts[1])})
            cert = ColoringCertificate(cols, 2, "bipartite")
        return cert, cert.provenance
    spec = cycle_lengths(g, budget)
    if spec.complete and is_three_plus_gap(spec.odd_lengths):
        for x in _four_cliques(g):
            try:
                cert = extend_over_k4(g, x)
            except ConstructionError:
                continue
            return cert, cert.provenance
    cert = try_type_alternating(g)
    if cert is not None:
        return cert, cert.provenance
    _, cert = chromatic_number(g, node_budget)
    return cert, cert.provenance
