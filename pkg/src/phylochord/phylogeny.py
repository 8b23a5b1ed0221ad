"""Competition and phylogeny (moral) graphs, cared edges and their carers."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graph_core import (
    DegreeBounds,
    Digraph,
    GraphError,
    SimpleGraph,
    check_degree_bounds,
    iter_bits,
    require_acyclic,
)

__all__ = [
    "CaredEdge",
    "CareReport",
    "competition_graph",
    "phylogeny_graph",
    "cared_edges",
    "care_bound_check",
    "competition_adj",
    "phylogeny_adj",
]


@dataclass(frozen=True)
class CaredEdge:
    """Edge of P(D) that comes only from a shared out-neighbour.

    ``carers`` holds every common out-neighbour of the endpoints, ascending.
    """

    endpoints: tuple
    carers: tuple

    @property
    def edge(self) -> tuple:
        return self.endpoints


@dataclass
class CareReport:
    cared_edges: list
    per_carer_count: dict
    per_vertex_incidence: dict
    max_care: int
    max_incidence: int
    violations: list = field(default_factory=list)

    @property
    def flagged(self) -> bool:
        return bool(self.violations)


def competition_adj(D: Digraph) -> list:
    """Competition-graph adjacency masks, no acyclicity check."""
    adj = [0] * D.n
    for w in range(D.n):
        preds = D.in_adj[w]
        if preds & (preds - 1):
            for u in iter_bits(preds):
                adj[u] |= preds
    for u in range(D.n):
        adj[u] &= ~(1 << u)
    return adj


def phylogeny_adj(D: Digraph) -> list:
    """Phylogeny-graph adjacency masks, no acyclicity check."""
    adj = competition_adj(D)
    for u in range(D.n):
        adj[u] |= D.out_adj[u] | D.in_adj[u]
    return adj


def competition_graph(D: Digraph) -> SimpleGraph:
    require_acyclic(D)
    return SimpleGraph.from_adj(competition_adj(D))


def phylogeny_graph(D: Digraph) -> SimpleGraph:
    """Moral graph: underlying edges plus an edge between any two co-parents."""
    require_acyclic(D)
    return SimpleGraph.from_adj(phylogeny_adj(D))


def _cared_edges(D: Digraph) -> list:
    found = {}
    for w in range(D.n):
        preds = D.in_adj[w]
        if not preds & (preds - 1):
            continue
        for x, y in combinations(iter_bits(preds), 2):
            if (D.out_adj[x] | D.in_adj[x]) >> y & 1:
                continue
            found.setdefault((x, y), []).append(w)
    return [CaredEdge(e, tuple(found[e])) for e in sorted(found)]


def cared_edges(D: Digraph) -> list:
    """Edges of C(D) missing from U(D), lexicographically ordered."""
    require_acyclic(D)
    return _cared_edges(D)


def care_bound_check(D: Digraph, bounds: DegreeBounds) -> CareReport:
    """Tally cared edges per carer and per endpoint against the (i, j) limits.

    A vertex of an (i, j) digraph cannot take care of more than i(i-1)/2
    edges, nor be incident to more than i(i-1)j/2 cared edges.  Any entry in
    ``violations`` therefore points at a bug, not at the input.
    """
    require_acyclic(D)
    bad = check_degree_bounds(D, bounds)
    if bad is not None:
        raise GraphError(
            f"vertex {bad.vertex} has indegree {bad.indegree} and outdegree {bad.outdegree}, "
            f"exceeding ({bounds.i}, {bounds.j})"
        )
    edges = _cared_edges(D)
    per_carer = {}
    per_vertex = {}
    for ce in edges:
        for w in ce.carers:
            per_carer[w] = per_carer.get(w, 0) + 1
        for x in ce.endpoints:
            per_vertex[x] = per_vertex.get(x, 0) + 1
    care_limit = bounds.i * (bounds.i - 1) // 2
    incidence_limit = care_limit * bounds.j
    violations = [("care", w, c) for w, c in sorted(per_carer.items()) if c > care_limit]
    violations += [("incidence", x, c) for x, c in sorted(per_vertex.items()) if c > incidence_limit]
    return CareReport(
        cared_edges=edges,
        per_carer_count=per_carer,
        per_vertex_incidence=per_vertex,
        max_care=max(per_carer.values(), default=0),
        max_incidence=max(per_vertex.values(), default=0),
        violations=violations,
    )
