"""Chordality with certificates, hole enumeration and cycle utilities."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .graph_core import GraphError, SimpleGraph, iter_bits

__all__ = [
    "Hole",
    "ChordalityCertificate",
    "HOLE_ENUMERATION_CAP",
    "is_chordal",
    "is_chordal_adj",
    "verify_certificate",
    "verify_elimination_ordering",
    "is_hole",
    "enumerate_holes",
    "holes_from_adj",
    "simplicial_vertices",
    "validate_cycle",
    "opposite_to_chord_vertices",
    "common_neighbor_on_cycle",
    "W_CONFIGURATION",
    "contains_w_configuration",
    "clique_number",
    "clique_number_adj",
]

HOLE_ENUMERATION_CAP = 14


def _canonical_cycle(seq: Sequence[int]) -> tuple:
    k = seq.index(min(seq))
    rot = list(seq[k:]) + list(seq[:k])
    if len(rot) > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


@dataclass(frozen=True, order=True)
class Hole:
    """Chordless cycle of length >= 4 in canonical rotation/reflection.

    The least vertex comes first and its smaller cycle-neighbour second.
    """

    vertices: tuple

    @classmethod
    def from_cycle(cls, seq: Sequence[int]) -> "Hole":
        seq = list(seq)
        if len(seq) > 1 and seq[0] == seq[-1]:
            seq = seq[:-1]
        if len(seq) < 4 or len(set(seq)) != len(seq):
            raise GraphError(f"{seq} is not a cycle of at least 4 distinct vertices")
        return cls(_canonical_cycle(seq))

    def __len__(self):
        return len(self.vertices)

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @property
    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m

    def edges(self) -> list:
        vs = self.vertices
        return [tuple(sorted((vs[k], vs[(k + 1) % len(vs)]))) for k in range(len(vs))]

    def closed(self) -> tuple:
        return self.vertices + self.vertices[:1]

    def __str__(self):
        return "-".join(map(str, self.closed()))


@dataclass(frozen=True)
class ChordalityCertificate:
    """Either a perfect elimination ordering or a hole."""

    ordering: Optional[tuple] = None
    hole: Optional[Hole] = None

    @property
    def chordal(self) -> bool:
        return self.hole is None

    def __bool__(self):
        return self.chordal


def is_hole(G: SimpleGraph, seq: Sequence[int]) -> bool:
    """True iff ``seq`` (open or closed) is an induced cycle of length >= 4."""
    seq = list(seq)
    if len(seq) > 1 and seq[0] == seq[-1]:
        seq = seq[:-1]
    k = len(seq)
    if k < 4 or len(set(seq)) != k or any(not 0 <= v < G.n for v in seq):
        return False
    for a in range(k):
        for b in range(a + 1, k):
            consecutive = b == a + 1 or (a == 0 and b == k - 1)
            if G.has_edge(seq[a], seq[b]) != consecutive:
                return False
    return True


def verify_elimination_ordering(G: SimpleGraph, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(G.n)):
        return False
    later = (1 << G.n) - 1
    for v in order:
        later &= ~(1 << v)
        nbrs = G.adj[v] & later
        for u in iter_bits(nbrs):
            if nbrs & ~G.adj[u] & ~(1 << u):
                return False
    return True


def verify_certificate(G: SimpleGraph, cert: ChordalityCertificate) -> bool:
    if cert.hole is not None:
        return is_hole(G, cert.hole.vertices)
    return cert.ordering is not None and verify_elimination_ordering(G, cert.ordering)


def _mcs_elimination(adj: Sequence[int]) -> list:
    """Reverse maximum-cardinality-search order (least index breaks ties)."""
    n = len(adj)
    weight = [0] * n
    numbered = 0
    visit = []
    for _ in range(n):
        best, best_w = -1, -1
        for v in range(n):
            if not numbered >> v & 1 and weight[v] > best_w:
                best, best_w = v, weight[v]
        visit.append(best)
        numbered |= 1 << best
        for w in iter_bits(adj[best] & ~numbered):
            weight[w] += 1
    visit.reverse()
    return visit


def _peo_violation(adj: Sequence[int], order: Sequence[int]):
    """First ``(v, a, b)`` with a, b later non-adjacent neighbours of v."""
    n = len(adj)
    pos = [0] * n
    for k, v in enumerate(order):
        pos[v] = k
    for v in order:
        later = [u for u in iter_bits(adj[v]) if pos[u] > pos[v]]
        if len(later) < 2:
            continue
        parent = min(later, key=pos.__getitem__)
        for u in later:
            if u != parent and not adj[parent] >> u & 1:
                return v, parent, u
    return None


def is_chordal_adj(adj: Sequence[int]) -> bool:
    return _peo_violation(adj, _mcs_elimination(adj)) is None


def _hole_through(adj: Sequence[int], v: int, a: int, b: int):
    """Hole v-a-...-b-v via a shortest a-b path avoiding N[v] - {a, b}."""
    blocked = (adj[v] | 1 << v) & ~(1 << a | 1 << b)
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            path = []
            while x is not None:
                path.append(x)
                x = prev[x]
            return [v] + path[::-1]
        for y in iter_bits(adj[x] & ~blocked):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    return None


def _find_hole(adj: Sequence[int], hint=None) -> list:
    if hint is not None:
        cycle = _hole_through(adj, *hint)
        if cycle is not None:
            return cycle
    for v in range(len(adj)):
        for a, b in combinations(iter_bits(adj[v]), 2):
            if not adj[a] >> b & 1:
                cycle = _hole_through(adj, v, a, b)
                if cycle is not None:
                    return cycle
    raise AssertionError("elimination check failed but no hole exists")


def is_chordal(G: SimpleGraph) -> ChordalityCertificate:
    """Decide chordality and return an ordering or a hole as evidence."""
    order = _mcs_elimination(G.adj)
    bad = _peo_violation(G.adj, order)
    if bad is None:
        return ChordalityCertificate(ordering=tuple(order))
    return ChordalityCertificate(hole=Hole.from_cycle(_find_hole(G.adj, bad)))


def holes_from_adj(adj: Sequence[int]) -> list:
    """All holes of the graph given by adjacency masks, sorted canonically.

    Each hole is grown from its least vertex ``s`` as an induced path whose
    second vertex is the smaller of the two cycle-neighbours of ``s``.
    """
    n = len(adj)
    found = []
    for s in range(n):
        above = ~((1 << (s + 1)) - 1)
        for p1 in iter_bits(adj[s] & above):
            # path s, p1, ...; `forbidden` = closed nbhd of all but the last vertex
            stack = [([s, p1], adj[s] | 1 << s | 1 << p1)]
            while stack:
                path, forbidden = stack.pop()
                last = path[-1]
                for v in iter_bits(adj[last] & above & ~(1 << p1)):
                    if v in path:
                        continue
                    if adj[v] >> s & 1:
                        # closes the cycle; every non-neighbour condition except s was enforced
                        if len(path) >= 3 and v > p1 and not _touches_inner(adj[v], path):
                            found.append(tuple(path) + (v,))
                        continue
                    if forbidden >> v & 1:
                        continue
                    stack.append((path + [v], forbidden | adj[last] | 1 << last))
    found.sort()
    return [Hole(h) for h in found]


def _touches_inner(vmask: int, path: list) -> bool:
    for u in path[1:-1]:
        if vmask >> u & 1:
            return True
    return False


def enumerate_holes(G: SimpleGraph, cap: int = HOLE_ENUMERATION_CAP) -> list:
    if G.n > cap:
        raise GraphError(f"hole enumeration capped at {cap} vertices, graph has {G.n}")
    return holes_from_adj(G.adj)


def simplicial_vertices(G: SimpleGraph) -> set:
    out = set()
    for v in range(G.n):
        nbrs = G.adj[v]
        if all(not (nbrs & ~G.adj[u] & ~(1 << u)) for u in iter_bits(nbrs)):
            out.add(v)
    return out


def validate_cycle(G: SimpleGraph, C: Sequence[int], min_length: int = 3) -> list:
    """Return ``C`` as an open vertex list after checking it is a cycle of G."""
    C = list(C)
    if len(C) > 1 and C[0] == C[-1]:
        C = C[:-1]
    if len(C) < min_length:
        raise GraphError(f"cycle {C} shorter than {min_length}")
    if len(set(C)) != len(C):
        raise GraphError(f"cycle {C} repeats a vertex")
    for k, v in enumerate(C):
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} out of range")
        w = C[(k + 1) % len(C)]
        if not G.has_edge(v, w):
            raise GraphError(f"{v}{w} is not an edge, so {C} is not a cycle")
    return C


def opposite_to_chord_vertices(G: SimpleGraph, C: Sequence[int]) -> set:
    """Cycle vertices whose predecessor and successor on C are adjacent."""
    C = validate_cycle(G, C, min_length=4)
    k = len(C)
    return {C[t] for t in range(k) if G.has_edge(C[t - 1], C[(t + 1) % k])}


def common_neighbor_on_cycle(G: SimpleGraph, C: Sequence[int], e: Sequence[int]):
    """Least vertex of C adjacent to both ends of the cycle edge ``e``."""
    C = validate_cycle(G, C)
    x, y = e
    k = len(C)
    if not any({C[t], C[(t + 1) % k]} == {x, y} for t in range(k)):
        raise GraphError(f"{x}{y} is not an edge of cycle {C}")
    common = G.adj[x] & G.adj[y]
    hits = [z for z in C if common >> z & 1]
    return min(hits) if hits else None


W_CONFIGURATION = SimpleGraph(7, frozenset((a, b) for a in range(7) for b in range(a + 1, min(a + 3, 7))))


def contains_w_configuration(G: SimpleGraph):
    """Embedding of the W-configuration into G as a (not necessarily induced) subgraph.

    Returns a tuple ``phi`` with ``phi[k]`` the image of pattern vertex k, or
    ``None``.  Pattern vertices are matched in order 0..6, so each new vertex
    has to be adjacent to the images of its (at most two) predecessors.
    """
    pattern_deg = [W_CONFIGURATION.degree(k) for k in range(7)]
    degs = [G.degree(v) for v in range(G.n)]
    image = []
    used = 0

    def extend() -> bool:
        nonlocal used
        k = len(image)
        if k == 7:
            return True
        cand = (1 << G.n) - 1
        for back in (1, 2):
            if k - back >= 0:
                cand &= G.adj[image[k - back]]
        for v in iter_bits(cand & ~used):
            if degs[v] < pattern_deg[k]:
                continue
            image.append(v)
            used |= 1 << v
            if extend():
                return True
            image.pop()
            used &= ~(1 << v)
        return False

    return tuple(image) if extend() else None


def clique_number_adj(adj: Sequence[int]) -> int:
    best = 0

    def grow(size: int, cand: int):
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            grow(size + 1, cand & adj[v])

    grow(0, (1 << len(adj)) - 1)
    return best


def clique_number(G: SimpleGraph) -> int:
    return clique_number_adj(G.adj)
