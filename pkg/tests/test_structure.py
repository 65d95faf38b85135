from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given

from oddcycles.cycles import Cycle
from oddcycles.graph_core import Graph, bits, is_connected, named_graph
from oddcycles.invariants import is_k_critical
from oddcycles.structure import (
    InvalidSeparation,
    TooSmall,
    TwoSeparation,
    block_decomposition,
    detect_book,
    dirac_decomposition_check,
    find_k4,
    find_w6,
    iter_induced_odd_cycles,
    non_separating_induced_odd_cycle,
    odd_cycle_with_two_diagonals,
    two_separations,
    vertex_connectivity,
)
from oracles import all_cycles, graphs, naive_connectivity, naive_cut_vertices, seeded_graphs


def _two_triangles_sharing_vertex():
    return Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


class TestBlocks:
    def test_examples(self):
        d = block_decomposition(_two_triangles_sharing_vertex())
        assert len(d.blocks) == 2 and d.cut_vertices == 0b100
        d = block_decomposition(named_graph("petersen"))
        assert d.blocks == [(1 << 10) - 1] and d.cut_vertices == 0
        d = block_decomposition(named_graph("path(3)"))
        assert sorted(d.blocks) == [0b011, 0b110] and d.cut_vertices == 0b010

    def test_random_against_oracles(self):
        for g in seeded_graphs(1000, 16, seed=99):
            d = block_decomposition(g)
            assert set(bits(d.cut_vertices)) == naive_cut_vertices(g)
            # every edge in exactly one block
            for u, v in g.edges():
                owners = [b for b in d.blocks if b >> u & 1 and b >> v & 1]
                assert len(owners) == 1
            # a vertex lies in two or more blocks exactly when it is a cut vertex
            for v in range(g.n):
                multi = sum(b >> v & 1 for b in d.blocks) >= 2
                assert multi == bool(d.cut_vertices >> v & 1)

    def test_matches_networkx_blocks(self):
        for g in seeded_graphs(200, 12, seed=4):
            ng = nx.Graph(g.edges())
            ours = sorted(b for b in block_decomposition(g).blocks if b.bit_count() >= 2)
            theirs = sorted(sum(1 << v for v in comp) for comp in nx.biconnected_components(ng))
            assert ours == theirs

    def test_is_k(self):
        g = named_graph("complete(4)")
        assert block_decomposition(g).is_k(g, 4)
        assert not block_decomposition(named_graph("wheel(6)")).is_k(named_graph("wheel(6)"), 4)


class TestConnectivity:
    def test_examples(self):
        assert vertex_connectivity(named_graph("complete(4)")) == 3
        assert vertex_connectivity(named_graph("petersen")) == 3
        assert vertex_connectivity(named_graph("path(5)")) == 1
        assert vertex_connectivity(Graph(3, (0, 0, 0))) == 0

    def test_too_small(self):
        with pytest.raises(TooSmall):
            vertex_connectivity(Graph(1, (0,)))

    def test_against_subset_deletion(self):
        for g in seeded_graphs(300, 9, seed=21, min_n=2):
            assert vertex_connectivity(g) == naive_connectivity(g), str(g)

    @given(graphs(min_n=2, max_n=9))
    def test_three_connected_iff_no_small_cuts(self, g):
        kappa = vertex_connectivity(g)
        no_small_cut = (g.n >= 4 and is_connected(g) and not naive_cut_vertices(g)
                        and not two_separations(g))
        assert (kappa >= 3) == no_small_cut


class TestTwoSeparations:
    def test_diamond_splits_at_shared_edge(self):
        # removing the shared edge's ends leaves the two tips isolated
        diamond = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
        assert two_separations(diamond) == [TwoSeparation(0b0111, 0b1110, (1, 2))]

    def test_k4_has_none(self):
        assert two_separations(named_graph("complete(4)")) == []

    def test_triangles_joined_through_two_vertices(self):
        # triangles 0-1-2 and 5-6-7; 2-3-5 and 1-4-6 link them, so {3, 4} is a 2-cut
        g = Graph.from_edges(8, [(0, 1), (1, 2), (0, 2), (5, 6), (6, 7), (5, 7),
                                 (2, 3), (3, 5), (1, 4), (4, 6)])
        cuts = {s.cut for s in two_separations(g)}
        assert (3, 4) in cuts

    def test_three_connected_empty(self):
        assert two_separations(named_graph("petersen")) == []

    def test_sides_are_valid(self):
        for g in seeded_graphs(150, 9, seed=8, min_n=4):
            for s in two_separations(g):
                u, v = s.cut
                cut = (1 << u) | (1 << v)
                assert s.a_side | s.b_side == g.vertex_mask and s.a_side & s.b_side == cut
                assert s.a_side != cut and s.b_side != cut
                for x in bits(s.a_side & ~cut):
                    assert not g.adj[x] & s.b_side & ~cut


class TestWitnessFinders:
    def test_book(self):
        w = detect_book(named_graph("book(3)"))
        assert w is not None and w.spine == (0, 1) and w.pages == (2, 3, 4)
        assert detect_book(named_graph("complete(4)")) is None
        assert detect_book(named_graph("cycle(5)")) is None

    def test_k4_w6(self):
        assert find_k4(named_graph("complete(5)")) == 0b01111
        assert find_w6(named_graph("wheel(6)")) == 0b111111
        assert find_k4(named_graph("petersen")) is None
        assert find_w6(named_graph("petersen")) is None

    def test_w6_is_subgraph_not_induced(self):
        # a wheel plus an extra rim chord still contains a wheel
        g = Graph.from_edges(6, named_graph("wheel(6)").edges() + [(1, 3)])
        assert find_w6(g) == 0b111111

    def test_nonseparating(self):
        c = non_separating_induced_odd_cycle(named_graph("complete(4)"))
        assert c is not None and len(c) == 3
        pet = named_graph("petersen")
        c = non_separating_induced_odd_cycle(pet)
        assert len(c) == 5 and not c.chords(pet)
        rest, _ = pet.induced(pet.vertex_mask & ~c.mask)
        assert rest.edge_count == 5 and is_connected(rest)
        assert non_separating_induced_odd_cycle(named_graph("cycle(6)")) is None

    def test_spanning_cycle_counts(self):
        assert non_separating_induced_odd_cycle(named_graph("cycle(7)")).vertices == tuple(range(7))

    @given(graphs(max_n=9))
    def test_induced_odd_cycles_oracle(self, g):
        ours = sorted(c.vertices for c in iter_induced_odd_cycles(g))
        brute = sorted(c for c in all_cycles(g) if len(c) % 2 and not Cycle(c).chords(g))
        assert ours == brute

    def test_two_diagonals(self):
        assert odd_cycle_with_two_diagonals(named_graph("complete(4)")) is None
        c, chords = odd_cycle_with_two_diagonals(named_graph("wheel(6)"))
        assert len(c) == 5 and len(chords) >= 2 and 0 in c.vertices
        gr = named_graph("groetzsch")
        c, chords = odd_cycle_with_two_diagonals(gr)
        assert c.is_valid_in(gr) and len(c) % 2 == 1 and len(chords) >= 2
        assert all(gr.has_edge(u, v) for u, v in chords)

    def test_two_diagonals_oracle(self):
        for g in seeded_graphs(120, 8, seed=31):
            exists = any(len(c) % 2 and len(Cycle(c).chords(g)) >= 2 for c in all_cycles(g))
            assert (odd_cycle_with_two_diagonals(g) is not None) == exists


class TestDirac:
    def test_c5_all_cuts_pass(self):
        g = named_graph("cycle(5)")
        seps = two_separations(g)
        assert seps
        for s in seps:
            assert dirac_decomposition_check(g, s).passed

    def test_hajos_join_of_two_k4(self):
        # K4 on 0..3 minus 0-3, K4 on 3..6 minus 3-4, plus 0-4: 4-critical with 2-cuts
        g = Graph.from_edges(7, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3),
                                 (3, 5), (3, 6), (4, 5), (4, 6), (5, 6), (0, 4)])
        assert is_k_critical(g).is_k_critical
        seps = two_separations(g)
        assert {s.cut for s in seps} == {(0, 3), (3, 4)}
        for s in seps:
            check = dirac_decomposition_check(g, s)
            assert check.passed, check.clauses

    def test_three_connected_rejected(self):
        g = named_graph("petersen")
        fake = TwoSeparation(0b0000011111, 0b1111100011, (0, 1))
        with pytest.raises(InvalidSeparation):
            dirac_decomposition_check(g, fake)

    def test_k4_fake_pair_rejected(self):
        g = named_graph("complete(4)")
        fake = TwoSeparation(0b0111, 0b1011, (0, 1))
        with pytest.raises(InvalidSeparation):
            dirac_decomposition_check(g, fake)
