import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import D_EX, nx_holes, simple_graphs, to_nx
from phylochord import (
    GraphError,
    Hole,
    W_CONFIGURATION,
    clique_number,
    common_neighbor_on_cycle,
    contains_w_configuration,
    enumerate_holes,
    is_chordal,
    is_hole,
    make_graph,
    opposite_to_chord_vertices,
    phylogeny_graph,
    simplicial_vertices,
    validate_cycle,
    verify_certificate,
    verify_elimination_ordering,
)
from phylochord.chordal import ChordalityCertificate


def cycle_graph(k, chords=()):
    return make_graph(k, [(t, (t + 1) % k) for t in range(k)] + list(chords))


def complete(k):
    return make_graph(k, [(a, b) for a in range(k) for b in range(a + 1, k)])


class TestHole:
    def test_canonical_rotation_and_reflection(self):
        assert Hole.from_cycle([3, 2, 1, 0]).vertices == (0, 1, 2, 3)
        assert Hole.from_cycle([2, 0, 3, 1, 2]).vertices == (0, 2, 1, 3)
        assert str(Hole.from_cycle([1, 2, 3, 0])) == "0-1-2-3-0"

    def test_rejects_short_or_repeating(self):
        with pytest.raises(GraphError):
            Hole.from_cycle([0, 1, 2])
        with pytest.raises(GraphError):
            Hole.from_cycle([0, 1, 0, 2])

    def test_is_hole(self):
        C5 = cycle_graph(5)
        assert is_hole(C5, [0, 1, 2, 3, 4, 0])
        assert not is_hole(C5, [0, 1, 2, 3])
        assert not is_hole(cycle_graph(5, [(0, 2)]), [0, 1, 2, 3, 4])


class TestIsChordal:
    def test_four_cycle(self):
        cert = is_chordal(cycle_graph(4))
        assert not cert and str(cert.hole) == "0-1-2-3-0"

    def test_example_phylogeny_is_chordal(self):
        P = phylogeny_graph(D_EX)
        cert = is_chordal(P)
        assert cert.chordal and verify_certificate(P, cert)
        assert enumerate_holes(P) == []

    def test_edge_cases(self):
        for G in (make_graph(0, []), make_graph(1, []), complete(6)):
            assert is_chordal(G).chordal

    @given(simple_graphs(max_n=10))
    def test_agrees_with_networkx(self, G):
        cert = is_chordal(G)
        assert cert.chordal == nx.is_chordal(to_nx(G))
        assert verify_certificate(G, cert)

    def test_bad_orderings_rejected(self):
        C4 = cycle_graph(4)
        assert not verify_elimination_ordering(C4, [0, 1, 2, 3])
        assert not verify_elimination_ordering(C4, [0, 1, 2])
        hole = ChordalityCertificate(hole=Hole.from_cycle([0, 1, 2, 3]))
        assert verify_certificate(C4, hole)
        assert not verify_certificate(complete(4), hole)


class TestEnumerateHoles:
    def test_five_cycle(self):
        assert enumerate_holes(cycle_graph(5)) == [Hole((0, 1, 2, 3, 4))]

    def test_disjoint_union(self):
        G = make_graph(9, [(0, 1), (1, 2), (2, 3), (3, 0)] + [(4 + t, 4 + (t + 1) % 5) for t in range(5)])
        assert [len(h) for h in enumerate_holes(G)] == [4, 5]

    def test_cap(self):
        with pytest.raises(GraphError):
            enumerate_holes(make_graph(15, []))

    @given(simple_graphs(max_n=9))
    def test_matches_networkx_chordless_cycles(self, G):
        holes = enumerate_holes(G)
        assert len(set(holes)) == len(holes)
        assert all(is_hole(G, h.vertices) for h in holes)
        # a vertex set carries at most one hole
        assert {h.vertex_set for h in holes} == nx_holes(G)
        assert (not holes) == is_chordal(G).chordal


class TestCycleHelpers:
    def test_simplicial(self):
        assert simplicial_vertices(complete(4)) == {0, 1, 2, 3}
        assert simplicial_vertices(make_graph(3, [(0, 1), (1, 2)])) == {0, 2}
        assert simplicial_vertices(W_CONFIGURATION) == {0, 6}

    def test_opposite_to_chord(self):
        # cycle v1..v5 with chords v1v3, v1v4 (0-based)
        G = cycle_graph(5, [(0, 2), (0, 3)])
        assert opposite_to_chord_vertices(G, [0, 1, 2, 3, 4]) == {1, 4}
        assert opposite_to_chord_vertices(cycle_graph(5), range(5)) == set()
        assert opposite_to_chord_vertices(complete(4), [0, 1, 2, 3, 0]) == {0, 1, 2, 3}

    def test_common_neighbor(self):
        assert common_neighbor_on_cycle(complete(4), [0, 1, 2, 3], (0, 1)) in (2, 3)
        assert common_neighbor_on_cycle(cycle_graph(5, [(0, 2), (0, 3)]), range(5), (0, 1)) == 2
        assert common_neighbor_on_cycle(cycle_graph(4), range(4), (0, 1)) is None
        with pytest.raises(GraphError):
            common_neighbor_on_cycle(complete(4), [0, 1, 2, 3], (0, 2))

    def test_validate_cycle(self):
        assert validate_cycle(cycle_graph(4), [0, 1, 2, 3, 0]) == [0, 1, 2, 3]
        with pytest.raises(GraphError):
            validate_cycle(cycle_graph(4), [0, 2, 1, 3])
        with pytest.raises(GraphError):
            opposite_to_chord_vertices(complete(3), [0, 1, 2])


class TestWConfiguration:
    def test_pattern(self):
        assert len(W_CONFIGURATION.edges) == 11
        assert contains_w_configuration(W_CONFIGURATION) == tuple(range(7))

    def test_complete_and_cycle(self):
        phi = contains_w_configuration(complete(7))
        assert phi is not None and sorted(phi) == list(range(7))
        assert contains_w_configuration(cycle_graph(7)) is None

    @given(simple_graphs(max_n=9))
    def test_embedding_preserves_edges(self, G):
        phi = contains_w_configuration(G)
        if phi is None:
            H = to_nx(G)
            matcher = nx.algorithms.isomorphism.GraphMatcher(H, to_nx(W_CONFIGURATION))
            assert not matcher.subgraph_is_monomorphic()
        else:
            assert len(set(phi)) == 7
            assert all(G.has_edge(phi[a], phi[b]) for a, b in W_CONFIGURATION.edges)


@given(simple_graphs(max_n=10))
def test_clique_number_matches_networkx(G):
    H = to_nx(G)
    expected = max((len(c) for c in nx.find_cliques(H)), default=0)
    assert clique_number(G) == expected


@given(simple_graphs(max_n=8), st.randoms(use_true_random=False))
def test_hole_enumeration_relabel_invariant(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    H = make_graph(G.n, [(perm[a], perm[b]) for a, b in G.edges])
    assert sorted(len(h) for h in enumerate_holes(G)) == sorted(len(h) for h in enumerate_holes(H))
