import itertools
import time

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import D_EX, acyclic_digraphs, to_nx_digraph
from phylochord import (
    DegreeBounds,
    Digraph,
    GraphError,
    canonical_form,
    check_degree_bounds,
    induced_subdigraph,
    induced_subgraph,
    is_acyclic,
    make_digraph,
    make_graph,
    topological_order,
    underlying_graph,
)
from phylochord.verifier import random_digraph


class TestConstruction:
    def test_masks(self):
        assert D_EX.out_adj[0] == 0b1010
        assert D_EX.in_adj[3] == 0b0101
        assert D_EX.outdegree(1) == 2 and D_EX.indegree(4) == 2
        assert D_EX.out_neighbors(1) == [2, 4]
        assert D_EX.in_neighbors(3) == [0, 2]

    def test_from_out_masks_round_trip(self):
        assert Digraph.from_out_masks(D_EX.out_adj) == D_EX

    @pytest.mark.parametrize("arcs", [[(0, 0)], [(0, 5)], [(-1, 0)]])
    def test_rejects_bad_arcs(self, arcs):
        with pytest.raises(GraphError):
            make_digraph(3, arcs)

    def test_rejects_duplicate_arc(self):
        with pytest.raises(GraphError, match="duplicate"):
            make_digraph(3, [(0, 1), (0, 1)])

    def test_graph_normalises_edges(self):
        G = make_graph(3, [(2, 0), (1, 2)])
        assert G.sorted_edges() == [(0, 2), (1, 2)]
        assert G.has_edge(0, 2) and G.has_edge(2, 0)
        with pytest.raises(GraphError):
            make_graph(3, [(0, 1), (1, 0)])

    def test_degree_bounds_validated(self):
        with pytest.raises(GraphError):
            DegreeBounds(0, 2)


class TestTopologicalOrder:
    def test_example_order(self):
        ok, order = topological_order(D_EX)
        assert ok and order == (0, 1, 2, 3, 4)

    def test_two_cycle_witness(self):
        ok, cyc = topological_order(make_digraph(2, [(0, 1), (1, 0)]))
        assert not ok and cyc[0] == cyc[-1] and set(cyc) == {0, 1}

    @given(acyclic_digraphs(max_n=9))
    def test_order_is_linear_extension(self, D):
        ok, order = topological_order(D)
        assert ok
        pos = {v: k for k, v in enumerate(order)}
        assert sorted(order) == list(range(D.n))
        assert all(pos[a] < pos[b] for a, b in D.arcs)

    @given(acyclic_digraphs(max_n=8), st.data())
    def test_cycle_witness_follows_arcs(self, D, data):
        # a back arc from the end of a directed path to its start
        paths = [(a, b) for a in range(D.n) for b in range(D.n)
                 if a != b and not D.has_arc(b, a) and nx.has_path(to_nx_digraph(D), a, b)]
        if not paths:
            return
        a, b = data.draw(st.sampled_from(paths))
        D2 = Digraph(D.n, D.arcs | {(b, a)})
        ok, witness = topological_order(D2)
        assert not ok
        assert witness[0] == witness[-1]
        assert len(set(witness[:-1])) == len(witness) - 1
        assert all(D2.has_arc(x, y) for x, y in zip(witness, witness[1:]))

    @given(acyclic_digraphs(max_n=7))
    def test_agrees_with_networkx(self, D):
        assert is_acyclic(D) == nx.is_directed_acyclic_graph(to_nx_digraph(D))


class TestDegreeBounds:
    def test_violation_reported(self):
        D = make_digraph(4, [(0, 3), (1, 3), (2, 3)])
        bad = check_degree_bounds(D, DegreeBounds(2, 2))
        assert bad is not None and bad.vertex == 3 and bad.indegree == 3
        assert check_degree_bounds(D, DegreeBounds(3, 1)) is None


class TestInduced:
    def test_subdigraph_relabels_densely(self):
        sub, labels = induced_subdigraph(D_EX, {1, 3, 4})
        assert labels == (1, 3, 4)
        assert sub.sorted_arcs() == [(0, 2), (1, 2)]

    def test_subgraph(self):
        G = underlying_graph(D_EX)
        sub, labels = induced_subgraph(G, [4, 0, 1])
        assert labels == (0, 1, 4)
        assert sub.sorted_edges() == [(0, 1), (1, 2)]

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            induced_subdigraph(D_EX, {7})

    def test_underlying(self):
        G = underlying_graph(D_EX)
        assert G.sorted_edges() == sorted(D_EX.arcs)


class TestCanonicalForm:
    @given(acyclic_digraphs(max_n=9), st.randoms(use_true_random=False))
    def test_relabelling_invariant(self, D, rnd):
        perm = list(range(D.n))
        rnd.shuffle(perm)
        assert canonical_form(D.relabel(perm)) == canonical_form(D)

    def test_separates_isomorphism_classes(self):
        # networkx isomorphism as the oracle on small random pairs
        base = [random_digraph(5, DegreeBounds(2, 2), [5, t]) for t in range(40)]
        rot = [4, 0, 3, 1, 2]
        pool = base + [D.relabel(rot) for D in base[:20]]
        hits = 0
        for A, B in itertools.combinations(pool, 2):
            same = nx.is_isomorphic(to_nx_digraph(A), to_nx_digraph(B))
            hits += same
            assert (canonical_form(A) == canonical_form(B)) == same
        assert hits >= 20

    def test_distinguishes_direction(self):
        assert canonical_form(make_digraph(3, [(0, 1), (0, 2)])) != canonical_form(make_digraph(3, [(1, 0), (2, 0)]))

    def test_cap(self):
        with pytest.raises(GraphError):
            canonical_form(Digraph(17, frozenset()))

    def test_symmetric_inputs_fast(self):
        start = time.perf_counter()
        canonical_form(Digraph(16, frozenset()))
        canonical_form(make_digraph(16, [(2 * k, 2 * k + 1) for k in range(8)]))
        assert time.perf_counter() - start < 5
