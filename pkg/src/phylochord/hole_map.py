"""Holes of P(D) versus holes of U(D) for (2,2) digraphs.

A hole H of the phylogeny graph is mapped to a hole of the underlying graph
living inside the subgraph obtained by splicing, into every cared edge of H,
one of its carers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional

from .chordal import Hole, holes_from_adj, is_hole
from .graph_core import (
    DegreeBounds,
    Digraph,
    GraphError,
    SimpleGraph,
    check_degree_bounds,
    induced_subgraph,
    iter_bits,
    require_acyclic,
    underlying_graph,
)
from .phylogeny import phylogeny_adj

__all__ = [
    "TheoremViolation",
    "ExtendingSet",
    "ObtainedSubgraph",
    "PhiResult",
    "CorrespondenceReport",
    "HOLE_MAP_CAP",
    "extending_sets",
    "obtained_subgraph",
    "phi",
    "phi_details",
    "verify_hole_correspondence",
    "max_matching",
]

HOLE_MAP_CAP = 10
_TWO_TWO = DegreeBounds(2, 2)


class TheoremViolation(AssertionError):
    """A structural guarantee for (2,2) digraphs failed; indicates a bug."""


@dataclass(frozen=True)
class ExtendingSet:
    hole: Hole
    assignment: tuple  # ((x, y), carer) per cared edge, edges in hole order

    @property
    def carers(self) -> tuple:
        return tuple(w for _, w in self.assignment)

    def as_dict(self) -> dict:
        return dict(self.assignment)


@dataclass(frozen=True)
class ObtainedSubgraph:
    graph: SimpleGraph  # densely relabelled; labels[k] is the vertex of D
    labels: tuple
    hamiltonian_cycle: tuple  # vertices of D
    extending_set: ExtendingSet

    @property
    def vertices(self) -> frozenset:
        return frozenset(self.labels)


def _validated_hole(D: Digraph, H, p_adj=None) -> Hole:
    require_acyclic(D)
    bad = check_degree_bounds(D, _TWO_TWO)
    if bad is not None:
        raise GraphError(f"not a (2,2) digraph: vertex {bad.vertex} has degrees ({bad.indegree}, {bad.outdegree})")
    seq = H.vertices if isinstance(H, Hole) else tuple(H)
    if p_adj is None:
        p_adj = phylogeny_adj(D)
    if not is_hole(SimpleGraph.from_adj(p_adj), seq):
        raise GraphError(f"{'-'.join(map(str, seq))} is not a hole of the phylogeny graph")
    return H if isinstance(H, Hole) else Hole.from_cycle(seq)


def _hole_cared_edges(D: Digraph, H: Hole) -> list:
    vs = H.vertices
    out = []
    for t in range(len(vs)):
        x, y = vs[t], vs[(t + 1) % len(vs)]
        if (D.out_adj[x] | D.in_adj[x]) >> y & 1:
            continue
        carers = list(iter_bits(D.out_adj[x] & D.out_adj[y]))
        out.append(((x, y), carers))
    return out


def _extending_sets(D: Digraph, H: Hole) -> Iterator[ExtendingSet]:
    cared = _hole_cared_edges(D, H)
    on_hole = H.mask
    for choice in product(*(c for _, c in cared)):
        if len(set(choice)) != len(choice):
            raise TheoremViolation(f"a vertex takes care of two edges of hole {H} in {D}")
        for w in choice:
            if on_hole >> w & 1:
                raise TheoremViolation(f"carer {w} lies on hole {H} in {D}")
        yield ExtendingSet(H, tuple((e, w) for (e, _), w in zip(cared, choice)))


def extending_sets(D: Digraph, H) -> Iterator[ExtendingSet]:
    """Every choice of one carer per cared edge of the P-hole ``H``.

    Choices are ordered lexicographically, least carers first.  A hole with
    no cared edge yields the single empty assignment.
    """
    H = _validated_hole(D, H)
    return _extending_sets(D, H)


def _obtained(D: Digraph, W: ExtendingSet, u_graph: SimpleGraph) -> ObtainedSubgraph:
    carers = W.carers
    for a in carers:
        for b in carers:
            if a < b and u_graph.has_edge(a, b):
                raise TheoremViolation(f"carers {a} and {b} of hole {W.hole} are adjacent in U(D)")
    spliced = dict(W.assignment)
    cycle = []
    vs = W.hole.vertices
    for t in range(len(vs)):
        x, y = vs[t], vs[(t + 1) % len(vs)]
        cycle.append(x)
        if (x, y) in spliced:
            cycle.append(spliced[(x, y)])
    for t in range(len(cycle)):
        if not u_graph.has_edge(cycle[t], cycle[(t + 1) % len(cycle)]):
            raise TheoremViolation(f"spliced cycle {cycle} is not a cycle of U(D)")
    L, labels = induced_subgraph(u_graph, set(cycle))
    if len(labels) != len(cycle):
        raise TheoremViolation(f"spliced cycle {cycle} repeats a vertex")
    return ObtainedSubgraph(L, labels, tuple(cycle), W)


def obtained_subgraph(D: Digraph, W: ExtendingSet) -> ObtainedSubgraph:
    """Induced subgraph of U(D) on the hole plus its chosen carers."""
    _validated_hole(D, W.hole)
    return _obtained(D, W, underlying_graph(D))


@dataclass
class PhiResult:
    hole: Hole  # the image, a hole of U(D)
    source: Hole
    chosen: Optional[ExtendingSet]
    succeeded: list = field(default_factory=list)  # extending sets whose L is not chordal
    tried: int = 0
    candidates: list = field(default_factory=list)  # every U-hole inside some obtained subgraph


def _phi(D: Digraph, H: Hole, u_graph: SimpleGraph) -> PhiResult:
    sets = list(_extending_sets(D, H))
    if len(sets) == 1 and not sets[0].assignment:
        if not is_hole(u_graph, H.vertices):
            raise TheoremViolation(f"hole {H} has no cared edge but is not a hole of U(D)")
        return PhiResult(H, H, None, succeeded=sets, tried=1, candidates=[H])
    chosen, image = None, None
    succeeded = []
    candidates = set()
    for W in sets:
        L = _obtained(D, W, u_graph)
        holes = [Hole.from_cycle([L.labels[v] for v in h.vertices]) for h in holes_from_adj(L.graph.adj)]
        if not holes:
            continue
        succeeded.append(W)
        candidates.update(holes)
        if chosen is None:
            chosen, image = W, min(holes)
    if chosen is None:
        raise TheoremViolation(f"no obtained subgraph of hole {H} contains a hole of U(D) in {D}")
    return PhiResult(image, H, chosen, succeeded, len(sets), sorted(candidates))


def phi_details(D: Digraph, H) -> PhiResult:
    H = _validated_hole(D, H)
    return _phi(D, H, underlying_graph(D))


def phi(D: Digraph, H) -> Hole:
    """Hole of U(D) assigned to the P-hole ``H``.

    ``H`` itself when all its edges are underlying edges; otherwise the
    canonically least hole of the subgraph obtained from ``H`` by the first
    extending set (in :func:`extending_sets` order) whose subgraph has one.
    """
    return phi_details(D, H).hole


def max_matching(left: list, adjacency: dict) -> dict:
    """Maximum bipartite matching by augmenting paths; returns left -> right."""
    match_right = {}

    def augment(u, seen) -> bool:
        for r in adjacency.get(u, ()):
            if r in seen:
                continue
            seen.add(r)
            if r not in match_right or augment(match_right[r], seen):
                match_right[r] = u
                return True
        return False

    for u in left:
        augment(u, set())
    return {u: r for r, u in match_right.items()}


@dataclass
class CorrespondenceReport:
    holes_P: list
    holes_U: list
    phi: dict
    candidates: dict
    disjoint: bool
    no_short_even_holes: bool
    assignment: dict
    injective: bool
    count_ok: bool

    @property
    def hypotheses_met(self) -> bool:
        return self.disjoint and self.no_short_even_holes

    @property
    def passed(self) -> bool:
        return not self.hypotheses_met or (self.injective and self.count_ok)


def verify_hole_correspondence(D: Digraph, cap: int = HOLE_MAP_CAP) -> CorrespondenceReport:
    """Compare holes of P(D) and U(D) and look for an injective hole map.

    The hypotheses are recorded rather than enforced: P-holes pairwise
    vertex-disjoint and no U-hole of length 4 or 6.  ``injective`` says
    whether distinct U-holes can be assigned to all P-holes, each taken from
    the holes inside that P-hole's obtained subgraphs.
    """
    if D.n > cap:
        raise GraphError(f"hole correspondence capped at {cap} vertices, digraph has {D.n}")
    require_acyclic(D)
    bad = check_degree_bounds(D, _TWO_TWO)
    if bad is not None:
        raise GraphError(f"not a (2,2) digraph: vertex {bad.vertex} has degrees ({bad.indegree}, {bad.outdegree})")
    u_graph = underlying_graph(D)
    holes_P = holes_from_adj(phylogeny_adj(D))
    holes_U = holes_from_adj(u_graph.adj)
    images = {}
    candidates = {}
    for H in holes_P:
        res = _phi(D, H, u_graph)
        images[H] = res.hole
        candidates[H] = res.candidates
    disjoint = all(not (a.mask & b.mask) for i, a in enumerate(holes_P) for b in holes_P[i + 1:])
    no_short_even = all(len(h) not in (4, 6) for h in holes_U)
    assignment = max_matching(holes_P, candidates)
    return CorrespondenceReport(
        holes_P=holes_P,
        holes_U=holes_U,
        phi=images,
        candidates=candidates,
        disjoint=disjoint,
        no_short_even_holes=no_short_even,
        assignment=assignment,
        injective=len(assignment) == len(holes_P),
        count_ok=len(holes_U) >= len(holes_P),
    )
