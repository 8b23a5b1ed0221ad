"""Competition, underlying and phylogeny graphs of a small acyclic digraph."""
# %%
from phylochord import cared_edges, competition_graph, make_digraph, phylogeny_graph, underlying_graph
from phylochord.formats import digraph_to_dot

# 3 has in-neighbours 0 and 2, 4 has in-neighbours 1 and 3
D = make_digraph(5, [(0, 1), (0, 3), (1, 2), (1, 4), (2, 3), (3, 4)])

print("U(D):", underlying_graph(D).sorted_edges())
print("C(D):", competition_graph(D).sorted_edges())
P = phylogeny_graph(D)
print("P(D):", P.sorted_edges(), f"({len(P.edges)} edges)")

# %%
# the two competition edges are missing from U(D); their carers are the common prey
for ce in cared_edges(D):
    print(f"cared edge {ce.endpoints} taken care of by {ce.carers}")

# %%
# vertices 0..3 are pairwise adjacent in P(D)
print(all(P.has_edge(a, b) for a in range(4) for b in range(a + 1, 4)))

# %%
# DOT export: cared edges dashed grey, underlying edges solid
print(digraph_to_dot(D, labels=["v1", "v2", "v3", "v4", "v5"]))
