"""Isomorph-free generation of all graphs of a given order by canonical augmentation.

A child of order ``k+1`` is built from a canonically labelled parent of
order ``k`` by adding vertex ``k`` joined to a subset ``S``.  The child is
kept only if the new vertex lies in the automorphism orbit of the child's
canonical deletion vertex: among vertices maximising ``(degree, sum of
neighbour degrees)``, the one nauty places last.  Children of one parent
that share a canonical form are merged.  Every accepted graph is emitted in
nauty's canonical labelling.

Pruning by a hereditary property (triangle-free, at most ``t`` odd cycle
lengths) is sound because the canonical parent is an induced subgraph.
"""

from __future__ import annotations

from typing import Callable, Iterator

import pynauty

from .cycles import cycle_lengths
from .graph_core import Graph, bits, is_connected

# graphs of order n up to isomorphism, n = 0..10
PUBLISHED_COUNTS = [1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168]
PUBLISHED_CONNECTED_COUNTS = [1, 1, 1, 2, 6, 21, 112, 853, 11117, 261080, 11716571]

Adjacency = tuple[int, ...]


def _nauty_graph(adj: list[int] | Adjacency) -> pynauty.Graph:
    return pynauty.Graph(len(adj), adjacency_dict={v: list(bits(row)) for v, row in enumerate(adj)})


def canonical_form(adj: Adjacency) -> Adjacency:
    lab = pynauty.canon_label(_nauty_graph(adj))
    return _relabel(adj, lab)


def _relabel(adj, lab) -> Adjacency:
    pos = [0] * len(lab)
    for i, v in enumerate(lab):
        pos[v] = i
    out = []
    for v in lab:
        row = 0
        for w in bits(adj[v]):
            row |= 1 << pos[w]
        out.append(row)
    return tuple(out)


def _independent_sets(adj: Adjacency) -> list[int]:
    """All independent vertex sets, in increasing numeric order."""
    out = [0]
    for v in range(len(adj)):
        bit = 1 << v
        out += [s | bit for s in out if not adj[v] & s]
    out.sort()
    return out


def _children(parent: Adjacency, triangle_free: bool) -> list[Adjacency]:
    k = len(parent)
    deg = [row.bit_count() for row in parent]
    top_deg = max(deg, default=-1)
    top = 0
    for v, d in enumerate(deg):
        if d == top_deg:
            top |= 1 << v
    seen: set[Adjacency] = set()
    out = []
    # a triangle through the new vertex needs an edge inside its neighbourhood
    subsets = _independent_sets(parent) if triangle_free else range(1 << k)
    for s in subsets:
        size = s.bit_count()
        max_old = top_deg + 1 if s & top else top_deg
        if size < max_old:
            continue
        adj = list(parent)
        for v in bits(s):
            adj[v] |= 1 << k
        adj.append(s)
        if size == max_old:
            cdeg = deg + [size]
            for v in bits(s):
                cdeg[v] += 1
            cands = [v for v in range(k + 1) if cdeg[v] == size]
            score = {v: sum(cdeg[w] for w in bits(adj[v])) for v in cands}
            best = max(score.values())
            if score[k] != best:
                continue
            cands = [v for v in cands if score[v] == best]
        else:
            cands = [k]
        ng = _nauty_graph(adj)
        lab = pynauty.canon_label(ng)
        if len(cands) > 1:
            cset = set(cands)
            w = next(v for v in reversed(lab) if v in cset)
            if w != k:
                orbits = pynauty.autgrp(ng)[3]
                if orbits[w] != orbits[k]:
                    continue
        form = _relabel(adj, lab)
        if form not in seen:
            seen.add(form)
            out.append(form)
    return out


def generate_graphs(n: int, *, connected: bool = False, triangle_free: bool = False,
                    max_odd_lengths: int | None = None,
                    keep: Callable[[Graph], bool] | None = None) -> Iterator[Graph]:
    """All graphs of order ``n`` up to isomorphism, in canonical labelling.

    ``triangle_free`` / ``max_odd_lengths`` / ``keep`` restrict to a
    hereditary class and prune the search tree; ``connected`` filters the
    final level only.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    if n == 0:
        yield Graph(0, ())
        return

    def admit(adj: Adjacency) -> bool:
        if max_odd_lengths is None and keep is None:
            return True
        g = Graph(len(adj), adj)
        if max_odd_lengths is not None:
            spec = cycle_lengths(g)
            if not spec.complete or len(spec.odd_lengths) > max_odd_lengths:
                return False
        return keep is None or keep(g)

    level: list[Adjacency] = [(0,)]
    for k in range(1, n - 1):
        level = [c for p in level for c in _children(p, triangle_free) if admit(c)]
    if n == 1:
        final: Iterator[Adjacency] = iter(level)
    else:
        final = (c for p in level for c in _children(p, triangle_free) if admit(c))
    for adj in final:
        g = Graph(n, adj)
        if connected and not is_connected(g):
            continue
        yield g


def generate_up_to(n: int, **kwargs) -> Iterator[Graph]:
    """Orders ``1..n`` in increasing order."""
    for k in range(1, n + 1):
        yield from generate_graphs(k, **kwargs)
