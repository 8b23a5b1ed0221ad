"""Shared fixtures, hypothesis strategies and brute-force oracles."""
from __future__ import annotations

import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from phylochord import DegreeBounds, Digraph, SimpleGraph, make_digraph, make_graph

settings.register_profile(
    "default",
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# five vertices, arcs as in the worked example; P(D) has a K4 on 0..3
D_EX = make_digraph(5, [(0, 1), (0, 3), (1, 2), (1, 4), (2, 3), (3, 4)])
D_PATH5 = make_digraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


@pytest.fixture
def d_ex():
    return D_EX


# ---------------------------------------------------------------------------
# strategies


@st.composite
def acyclic_digraphs(draw, max_n=8, bounds=DegreeBounds(2, 2)):
    """Random (i, j) digraph: forward arcs under a random vertex order."""
    n = draw(st.integers(0, max_n))
    perm = draw(st.permutations(range(n)))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    picks = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    indeg = [0] * n
    outdeg = [0] * n
    arcs = []
    for (a, b), keep in zip(pairs, picks):
        if keep and outdeg[a] < bounds.j and indeg[b] < bounds.i:
            outdeg[a] += 1
            indeg[b] += 1
            arcs.append((perm[a], perm[b]))
    return make_digraph(n, arcs)


@st.composite
def simple_graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    picks = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return make_graph(n, [e for e, keep in zip(pairs, picks) if keep])


# ---------------------------------------------------------------------------
# oracles (deliberately naive)


def competition_oracle(D: Digraph) -> set:
    """Edges xy with a common out-neighbour, by a triple loop over vertices."""
    edges = set()
    for x in range(D.n):
        for y in range(x + 1, D.n):
            for w in range(D.n):
                if (x, w) in D.arcs and (y, w) in D.arcs:
                    edges.add((x, y))
    return edges


def to_nx(G: SimpleGraph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def to_nx_digraph(D: Digraph) -> nx.DiGraph:
    H = nx.DiGraph()
    H.add_nodes_from(range(D.n))
    H.add_edges_from(D.arcs)
    return H


def nx_holes(G: SimpleGraph) -> set:
    """Vertex sets of chordless cycles of length >= 4."""
    return {frozenset(c) for c in nx.chordless_cycles(to_nx(G)) if len(c) >= 4}


def random_graph(rng: np.random.Generator, max_n: int = 10) -> SimpleGraph:
    n = int(rng.integers(0, max_n + 1))
    p = rng.uniform(0.1, 0.7)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return make_graph(n, [e for e, k in zip(pairs, keep) if k])


def random_chordal_graph(rng: np.random.Generator, n: int, max_degree=None,
                         max_clique: int = 4, min_clique: int = 1) -> SimpleGraph:
    """Chordal graph grown by attaching each new vertex to a clique.

    Reversing the insertion order gives a perfect elimination ordering.
    With ``max_degree`` set, attachments that would exceed it are skipped;
    so are cliques smaller than ``min_clique`` (the vertex may stay isolated).
    """
    adj = [0] * n
    for v in range(1, n):
        for _ in range(8):
            anchor = int(rng.integers(0, v))
            clique = [anchor]
            cand = [u for u in range(v) if adj[anchor] >> u & 1]
            rng.shuffle(cand)
            size = int(rng.integers(min_clique, max_clique + 1))
            for u in cand:
                if len(clique) >= size:
                    break
                if all(adj[u] >> w & 1 for w in clique):
                    clique.append(u)
            if len(clique) < min(min_clique, v):
                continue
            if max_degree is not None:
                if len(clique) > max_degree or any(adj[u].bit_count() >= max_degree for u in clique):
                    continue
            for u in clique:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            break
    return SimpleGraph.from_adj(adj)


def simple_cycles(G: SimpleGraph, max_len=None):
    """Every cycle (length >= 3) once, as a vertex list starting at its least vertex."""
    out = []
    limit = max_len or G.n

    def walk(start, path, seen):
        last = path[-1]
        for w in G.neighbors(last):
            if w == start and len(path) >= 3 and path[1] < path[-1]:
                out.append(list(path))
            elif w > start and w not in seen and len(path) < limit:
                seen.add(w)
                path.append(w)
                walk(start, path, seen)
                path.pop()
                seen.discard(w)

    for s in range(G.n):
        walk(s, [s], {s})
    return out


def all_forward_digraphs(n: int, bounds: DegreeBounds):
    """Brute force: every subset of forward pairs, filtered by the bounds."""
    pairs = list(itertools.combinations(range(n), 2))
    for r in range(len(pairs) + 1):
        for arcs in itertools.combinations(pairs, r):
            D = Digraph(n, frozenset(arcs))
            if all(D.indegree(v) <= bounds.i and D.outdegree(v) <= bounds.j for v in range(n)):
                yield D


# ---------------------------------------------------------------------------
# acceptance report: one line per criterion at the end of the run

_CRITERIA = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_criterion_"):
        _CRITERIA[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split("_")[2])):
        num = name.split("_")[2]
        label = name.split("_", 3)[3].replace("_", " ")
        terminalreporter.write_line(f"criterion {num:>2} {label}: {_CRITERIA[name].upper()}")
