"""Digraph and simple-graph types with bitset adjacency.

Vertices are dense indices ``0..n-1``.  Each type keeps its arc/edge set
together with per-vertex neighbourhood bitmasks (plain ints), which is what
every hot loop in the package works on.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "GraphError",
    "Digraph",
    "SimpleGraph",
    "DegreeBounds",
    "DegreeViolation",
    "make_digraph",
    "make_graph",
    "topological_order",
    "is_acyclic",
    "require_acyclic",
    "check_degree_bounds",
    "induced_subdigraph",
    "induced_subgraph",
    "underlying_graph",
    "canonical_form",
    "CANONICAL_MAX_N",
    "iter_bits",
]

CANONICAL_MAX_N = 16


class GraphError(ValueError):
    """Invalid graph input or violated precondition."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Digraph:
    """Simple digraph on vertices ``0..n-1``.

    Loops and duplicate arcs are rejected.  Acyclicity is *not* enforced
    here; see :func:`topological_order`.
    """

    n: int
    arcs: frozenset
    out_adj: tuple = field(init=False, repr=False, compare=False)
    in_adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        out = [0] * self.n
        inn = [0] * self.n
        for t, h in self.arcs:
            if not (0 <= t < self.n and 0 <= h < self.n):
                raise GraphError(f"arc ({t}, {h}) has an endpoint out of range 0..{self.n - 1}")
            if t == h:
                raise GraphError(f"loop at vertex {t}")
            out[t] |= 1 << h
            inn[h] |= 1 << t
        object.__setattr__(self, "out_adj", tuple(out))
        object.__setattr__(self, "in_adj", tuple(inn))

    @classmethod
    def from_out_masks(cls, out_masks: Sequence[int]) -> "Digraph":
        arcs = frozenset((t, h) for t, m in enumerate(out_masks) for h in iter_bits(m))
        return cls(len(out_masks), arcs)

    @property
    def vertex_count(self) -> int:
        return self.n

    def sorted_arcs(self) -> list:
        return sorted(self.arcs)

    def outdegree(self, v: int) -> int:
        return self.out_adj[v].bit_count()

    def indegree(self, v: int) -> int:
        return self.in_adj[v].bit_count()

    def out_neighbors(self, v: int) -> list:
        return list(iter_bits(self.out_adj[v]))

    def in_neighbors(self, v: int) -> list:
        return list(iter_bits(self.in_adj[v]))

    def has_arc(self, t: int, h: int) -> bool:
        return bool(self.out_adj[t] >> h & 1)

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Digraph with vertex ``v`` renamed ``perm[v]``."""
        return Digraph(self.n, frozenset((perm[t], perm[h]) for t, h in self.arcs))

    def __str__(self):
        return f"Digraph(n={self.n}, arcs={self.sorted_arcs()})"


def _edge(u: int, v: int) -> tuple:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Simple undirected graph; edges are stored as ``(min, max)`` pairs."""

    n: int
    edges: frozenset
    adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        adj = [0] * self.n
        normalized = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint out of range 0..{self.n - 1}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            normalized.add(_edge(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "adj", tuple(adj))

    @classmethod
    def from_adj(cls, adj: Sequence[int]) -> "SimpleGraph":
        edges = frozenset((u, v) for u, m in enumerate(adj) for v in iter_bits(m) if u < v)
        return cls(len(adj), edges)

    @property
    def vertex_count(self) -> int:
        return self.n

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def __str__(self):
        return f"SimpleGraph(n={self.n}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class DegreeBounds:
    """Maximum indegree ``i`` and maximum outdegree ``j``."""

    i: int = 2
    j: int = 2

    def __post_init__(self):
        if self.i < 1 or self.j < 1:
            raise GraphError(f"degree bounds must be positive, got ({self.i}, {self.j})")


@dataclass(frozen=True)
class DegreeViolation:
    vertex: int
    indegree: int
    outdegree: int


def make_digraph(vertex_count: int, arcs: Iterable) -> Digraph:
    """Validated constructor; duplicates are an error rather than merged."""
    arcs = [tuple(a) for a in arcs]
    seen = set()
    for a in arcs:
        if len(a) != 2:
            raise GraphError(f"arc {a!r} is not a pair")
        if a in seen:
            raise GraphError(f"duplicate arc {a}")
        seen.add(a)
    return Digraph(vertex_count, frozenset(seen))


def make_graph(vertex_count: int, edges: Iterable) -> SimpleGraph:
    edges = [tuple(e) for e in edges]
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge {e!r} is not a pair")
        key = _edge(*e)
        if key in seen:
            raise GraphError(f"duplicate edge {e}")
        seen.add(key)
    return SimpleGraph(vertex_count, frozenset(seen))


def topological_order(D: Digraph) -> tuple:
    """Return ``(True, order)`` or ``(False, cycle)``.

    ``cycle`` is a closed vertex walk ``(v0, v1, ..., v0)`` along arcs.
    Kahn's algorithm picks the least available vertex first, so the order is
    deterministic.
    """
    indeg = [D.indegree(v) for v in range(D.n)]
    heap = [v for v in range(D.n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in iter_bits(D.out_adj[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) == D.n:
        return True, tuple(order)
    # every remaining vertex has an in-neighbour among the remaining ones;
    # walking backwards must revisit a vertex
    remaining = 0
    for v in range(D.n):
        if indeg[v] > 0:
            remaining |= 1 << v
    v = (remaining & -remaining).bit_length() - 1
    seen = {}
    walk = []
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        pred = D.in_adj[v] & remaining
        v = (pred & -pred).bit_length() - 1
    back = walk[seen[v]:] + [v]
    return False, tuple(reversed(back))


def is_acyclic(D: Digraph) -> bool:
    return topological_order(D)[0]


def require_acyclic(D: Digraph) -> None:
    ok, witness = topological_order(D)
    if not ok:
        raise GraphError(f"digraph is not acyclic: directed cycle {witness}")


def check_degree_bounds(D: Digraph, bounds: DegreeBounds):
    """``None`` when every vertex is within bounds, else the first violation."""
    for v in range(D.n):
        ind, outd = D.indegree(v), D.outdegree(v)
        if ind > bounds.i or outd > bounds.j:
            return DegreeViolation(v, ind, outd)
    return None


def _check_subset(n: int, S) -> list:
    S = sorted(set(S))
    for v in S:
        if not 0 <= v < n:
            raise GraphError(f"vertex {v} out of range 0..{n - 1}")
    return S


def induced_subdigraph(D: Digraph, S) -> tuple:
    """Induced subdigraph on ``S`` relabelled densely.

    Returns ``(sub, labels)`` where ``labels[k]`` is the original vertex
    behind new vertex ``k`` (ascending order).
    """
    S = _check_subset(D.n, S)
    index = {v: k for k, v in enumerate(S)}
    arcs = frozenset((index[t], index[h]) for t, h in D.arcs if t in index and h in index)
    return Digraph(len(S), arcs), tuple(S)


def induced_subgraph(G: SimpleGraph, S) -> tuple:
    S = _check_subset(G.n, S)
    index = {v: k for k, v in enumerate(S)}
    edges = frozenset((index[u], index[v]) for u, v in G.edges if u in index and v in index)
    return SimpleGraph(len(S), edges), tuple(S)


def underlying_graph(D: Digraph) -> SimpleGraph:
    return SimpleGraph.from_adj([D.out_adj[v] | D.in_adj[v] for v in range(D.n)])


# ---------------------------------------------------------------------------
# canonical form: individualisation/refinement with automorphism pruning


def _refine(cells: list, out_adj, in_adj) -> list:
    """Split cells by (out, in) neighbour counts into every cell until stable."""
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        new_cells = []
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            groups = {}
            for v in c:
                o, i = out_adj[v], in_adj[v]
                sig = tuple(((o & m).bit_count(), (i & m).bit_count()) for m in masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _leaf_code(order: list, out_adj) -> tuple:
    pos = [0] * len(order)
    for k, v in enumerate(order):
        pos[v] = k
    code = []
    for v in order:
        m = 0
        for w in iter_bits(out_adj[v]):
            m |= 1 << pos[w]
        code.append(m)
    return tuple(code)


def canonical_form(D: Digraph) -> bytes:
    """Byte string equal for two digraphs iff they are isomorphic."""
    n = D.n
    if n > CANONICAL_MAX_N:
        raise GraphError(f"canonical_form supports at most {CANONICAL_MAX_N} vertices, got {n}")
    out_adj, in_adj = D.out_adj, D.in_adj
    start = {}
    for v in range(n):
        start.setdefault((D.indegree(v), D.outdegree(v)), []).append(v)
    cells = _refine([start[k] for k in sorted(start)], out_adj, in_adj)

    best = [None, None]  # code, order
    automorphisms = []

    def search(cells, prefix):
        target = next((k for k, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _leaf_code(order, out_adj)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            elif code == best[0]:
                gamma = [0] * n
                for a, b in zip(best[1], order):
                    gamma[a] = b
                automorphisms.append(gamma)
            return
        explored = []
        for v in cells[target]:
            if explored and _same_orbit(v, explored, prefix, automorphisms):
                continue
            explored.append(v)
            rest = [w for w in cells[target] if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(child, out_adj, in_adj), prefix + [v])

    search(cells, [])
    code = best[0] or ()
    return bytes([n]) + b"".join(m.to_bytes(2, "big") for m in code)


def _same_orbit(v: int, explored: list, prefix: list, automorphisms: list) -> bool:
    gens = [g for g in automorphisms if all(g[p] == p for p in prefix)]
    if not gens:
        return False
    # orbit of v under the group generated by gens
    orbit = {v}
    frontier = [v]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return any(u in orbit for u in explored)
