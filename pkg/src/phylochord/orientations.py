"""Acyclic orientations of cycles: census, witness search, forbidden patterns.

An orientation of the k-cycle is kept as a digraph on ``0..k-1`` whose
underlying graph is the cycle ``0-1-...-(k-1)-0``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from importlib import resources
from itertools import combinations, product
from typing import Iterator, Optional

from .chordal import enumerate_holes, is_chordal
from .graph_core import (
    DegreeBounds,
    Digraph,
    GraphError,
    canonical_form,
    check_degree_bounds,
    induced_subdigraph,
    iter_bits,
    require_acyclic,
    underlying_graph,
)
from .phylogeny import phylogeny_adj, phylogeny_graph

__all__ = [
    "PERMITTED",
    "NO_WITNESS",
    "FORBIDDEN_BY_LENGTH",
    "FORBIDDEN",
    "LONG_CYCLE_MIN",
    "DEFAULT_EXTRA_VERTICES",
    "OrientationClass",
    "orientation_from_signs",
    "orientation_along",
    "run_lengths",
    "burnside_count",
    "enumerate_cycle_orientations",
    "find_witness",
    "classify_orientation",
    "classify_all",
    "forbidden_catalog",
    "parse_catalog",
    "check_catalog",
    "CatalogMismatch",
    "scan_forbidden_induced",
    "iter_extensions",
    "is_acyclic_masks",
]

PERMITTED = "permitted"
NO_WITNESS = "no_witness_up_to"
FORBIDDEN_BY_LENGTH = "forbidden_by_length"
FORBIDDEN = "forbidden"  # catalog entries

LONG_CYCLE_MIN = 7
DEFAULT_EXTRA_VERTICES = 4
MAX_EXTRA_VERTICES = 8
MAX_CENSUS_K = 12
MAX_SEARCH_K = 8


class CatalogMismatch(AssertionError):
    """The shipped catalog disagrees with the witness-search classification."""


@dataclass(frozen=True)
class OrientationClass:
    length: int
    representative: Digraph
    canonical: bytes
    status: Optional[str] = None
    witness: Optional[Digraph] = None
    bound: Optional[int] = None
    name: str = ""

    @property
    def runs(self) -> tuple:
        return run_lengths(self.representative)

    def __str__(self):
        tag = self.status or "unclassified"
        if self.status == NO_WITNESS:
            tag = f"{NO_WITNESS}({self.bound})"
        return f"C{self.length} runs {','.join(map(str, self.runs))}: {tag}"


def orientation_from_signs(signs) -> Digraph:
    """Orientation of the cycle where ``signs[t]`` true means t -> t+1."""
    k = len(signs)
    arcs = frozenset((t, (t + 1) % k) if s else ((t + 1) % k, t) for t, s in enumerate(signs))
    return Digraph(k, arcs)


def _signs(rep: Digraph) -> list:
    k = rep.n
    return [rep.has_arc(t, (t + 1) % k) for t in range(k)]


def orientation_along(D: Digraph, cycle) -> Digraph:
    """Orientation of ``cycle`` (a vertex sequence) induced by the arcs of D."""
    cycle = list(cycle)
    return orientation_from_signs([D.has_arc(cycle[t], cycle[(t + 1) % len(cycle)]) for t in range(len(cycle))])


def run_lengths(rep: Digraph) -> tuple:
    """Largest run-length sequence read from a source, over sources and directions."""
    s = _signs(rep)
    k = len(s)
    best = ()
    for walk in (s, [not x for x in reversed(s)]):
        for v in range(k):
            if not (walk[v] and not walk[v - 1]):
                continue
            runs = []
            t = 0
            while t < k:
                cur = walk[(v + t) % k]
                length = 0
                while t < k and walk[(v + t) % k] == cur:
                    length += 1
                    t += 1
                runs.append(length)
            best = max(best, tuple(runs))
    return best


def burnside_count(k: int) -> int:
    """Orientation classes of the k-cycle, counted with Burnside's lemma.

    Orientations are sign strings over the edges.  A rotation shifts the
    string; a reflection reverses it and flips every sign.  Constant strings
    are the two directed cycles and are excluded.
    """
    strings = [s for s in product((0, 1), repeat=k) if 0 < sum(s) < k]
    fixed = 0
    for t in range(k):
        fixed += sum(1 for s in strings if all(s[i] == s[(i + t) % k] for i in range(k)))
    for c in range(k):
        fixed += sum(1 for s in strings if all(s[i] == 1 - s[(c - i) % k] for i in range(k)))
    assert fixed % (2 * k) == 0
    return fixed // (2 * k)


def enumerate_cycle_orientations(k: int) -> list:
    """One representative per isomorphism class of acyclic orientations of C_k.

    Sign strings are scanned in lexicographic order and the first string of
    each class becomes its representative.
    """
    if not 3 <= k <= MAX_CENSUS_K:
        raise GraphError(f"cycle length must lie in 3..{MAX_CENSUS_K}, got {k}")
    seen = {}
    for signs in product((0, 1), repeat=k):
        if sum(signs) in (0, k):
            continue
        rep = orientation_from_signs(signs)
        form = canonical_form(rep)
        if form not in seen:
            seen[form] = OrientationClass(k, rep, form)
    return list(seen.values())


def _pair_candidates(rep: Digraph, bounds: DegreeBounds) -> tuple:
    adj = phylogeny_adj(rep)
    k = rep.n
    pairs = [(x, y) for x, y in combinations(range(k), 2) if not adj[x] >> y & 1]
    slots = [bounds.j - rep.outdegree(v) for v in range(k)]
    return pairs, slots


def find_witness(rep: Digraph, extra_vertices: int = DEFAULT_EXTRA_VERTICES,
                 bounds: DegreeBounds = DegreeBounds()) -> Optional[Digraph]:
    """Smallest (i, j) digraph with chordal P(D) containing ``rep`` induced on 0..k-1.

    Only extensions by sink vertices, each with two in-neighbours on the
    cycle, are tried.  This loses nothing: in any witness the chords of the
    cycle in P(D) come from carers, and the carers off the cycle are distinct
    and at most ``extra_vertices`` in number.  Replacing all extra vertices
    by one fresh sink per such chord reproduces P(D)[cycle] exactly and adds
    only simplicial vertices, so the result is again a witness.

    Search runs over the number of sinks, then over pair sets in
    lexicographic order.  Returns ``None`` if nothing is found.
    """
    k = rep.n
    pairs, slots = _pair_candidates(rep, bounds)
    for m in range(extra_vertices + 1):
        if m and bounds.i < 2:
            break
        for chosen in combinations(pairs, m):
            used = [0] * k
            for x, y in chosen:
                used[x] += 1
                used[y] += 1
            if any(used[v] > slots[v] for v in range(k)):
                continue
            arcs = set(rep.arcs)
            for t, (x, y) in enumerate(chosen):
                arcs.add((x, k + t))
                arcs.add((y, k + t))
            D = Digraph(k + m, frozenset(arcs))
            if is_chordal(phylogeny_graph(D)).chordal:
                return D
    return None


def classify_orientation(O: OrientationClass, extra_vertices: int = DEFAULT_EXTRA_VERTICES,
                         bounds: DegreeBounds = DegreeBounds()) -> OrientationClass:
    if O.length >= LONG_CYCLE_MIN:
        return replace(O, status=FORBIDDEN_BY_LENGTH, witness=None, bound=None)
    if O.length > MAX_SEARCH_K or extra_vertices > MAX_EXTRA_VERTICES:
        raise GraphError(
            f"witness search limited to k <= {MAX_SEARCH_K} and at most "
            f"{MAX_EXTRA_VERTICES} extra vertices"
        )
    witness = find_witness(O.representative, extra_vertices, bounds)
    if witness is not None:
        return replace(O, status=PERMITTED, witness=witness, bound=None)
    return replace(O, status=NO_WITNESS, witness=None, bound=extra_vertices)


def classify_all(k: int, extra_vertices: int = DEFAULT_EXTRA_VERTICES) -> list:
    return [classify_orientation(O, extra_vertices) for O in enumerate_cycle_orientations(k)]


def parse_catalog(text: str) -> list:
    """Parse the block format of the shipped catalog into orientation classes."""
    classes = []
    for block in text.split("\n\n"):
        lines = [ln.strip() for ln in block.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if not lines:
            continue
        name = ""
        if lines[0].startswith("name"):
            name = lines[0][4:].strip()
            lines = lines[1:]
        head = lines[0].split()
        if head[0] != "k" or len(head) != 2:
            raise GraphError(f"catalog block must start with 'k <length>', got {lines[0]!r}")
        k = int(head[1])
        arcs = frozenset(tuple(int(x) for x in ln.split()) for ln in lines[1:])
        rep = Digraph(k, arcs)
        if underlying_graph(rep).edges != frozenset((t, t + 1) if t + 1 < k else (0, k - 1) for t in range(k)):
            raise GraphError(f"catalog pattern {name or arcs} is not an orientation of the {k}-cycle 0..{k - 1}")
        require_acyclic(rep)
        classes.append(OrientationClass(k, rep, canonical_form(rep), status=FORBIDDEN, name=name))
    return classes


def forbidden_catalog() -> list:
    text = resources.files("phylochord").joinpath("data/forbidden_six_cycles.txt").read_text()
    return parse_catalog(text)


def check_catalog(extra_vertices: int = DEFAULT_EXTRA_VERTICES) -> list:
    """Classify all 6-cycle orientations and demand agreement with the catalog."""
    classified = classify_all(6, extra_vertices)
    no_witness = {O.canonical for O in classified if O.status == NO_WITNESS}
    catalog = {O.canonical for O in forbidden_catalog()}
    if no_witness != catalog:
        raise CatalogMismatch(
            f"catalog has {len(catalog)} patterns, search leaves {len(no_witness)} without witness; "
            f"{len(catalog ^ no_witness)} disagree"
        )
    return classified


def scan_forbidden_induced(D: Digraph, catalog=None) -> list:
    """Vertex sets of D inducing a catalogued or long (>= 7) cycle orientation.

    Every such set induces a hole of U(D), so the scan walks the holes of the
    underlying graph.  Results are ``(cycle, OrientationClass)`` with the
    cycle in canonical hole order.
    """
    require_acyclic(D)
    if catalog is None:
        catalog = forbidden_catalog()
    by_form = {O.canonical: O for O in catalog}
    found = []
    for hole in enumerate_holes(underlying_graph(D), cap=max(D.n, 1)):
        k = len(hole)
        rep = orientation_along(D, hole.vertices)
        if k >= LONG_CYCLE_MIN:
            found.append((hole.vertices, OrientationClass(k, rep, canonical_form(rep) if k <= 16 else b"",
                                                          status=FORBIDDEN_BY_LENGTH)))
            continue
        sub, _ = induced_subdigraph(D, hole.vertices)
        form = canonical_form(sub)
        if form in by_form:
            found.append((hole.vertices, by_form[form]))
    return found


# ---------------------------------------------------------------------------
# exhaustive extensions of a fixed digraph by extra vertices


def is_acyclic_masks(out_masks) -> bool:
    n = len(out_masks)
    indeg = [0] * n
    for m in out_masks:
        for h in iter_bits(m):
            indeg[h] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for h in iter_bits(out_masks[v]):
            indeg[h] -= 1
            if indeg[h] == 0:
                stack.append(h)
    return seen == n


def _small_subsets(items: list, limit: int):
    for r in range(min(limit, len(items)) + 1):
        yield from combinations(items, r)


def iter_extensions(base: Digraph, extra: int, bounds: DegreeBounds = DegreeBounds()) -> Iterator[list]:
    """All acyclic (i, j) digraphs on ``base.n + extra`` vertices keeping ``base`` induced.

    New arcs always touch at least one extra vertex.  Extra vertices are
    labelled, so an extension appears once per labelling of the extras.
    Yields out-neighbour mask lists (fresh list each time).
    """
    k = base.n
    n = k + extra
    if check_degree_bounds(base, bounds) is not None:
        raise GraphError("base digraph violates the degree bounds")
    out = list(base.out_adj) + [0] * extra
    indeg = [base.indegree(v) for v in range(k)] + [0] * extra
    outdeg = [base.outdegree(v) for v in range(k)] + [0] * extra
    bi, bj = bounds.i, bounds.j

    def link(e: int, f: int):
        # arcs between extra e and earlier extras f, f+1, ..., e-1
        if f == e:
            if e + 1 == n:
                if is_acyclic_masks(out):
                    yield list(out)
            else:
                yield from place(e + 1)
            return
        yield from link(e, f + 1)
        if outdeg[f] < bj and indeg[e] < bi:
            out[f] |= 1 << e
            outdeg[f] += 1
            indeg[e] += 1
            yield from link(e, f + 1)
            out[f] &= ~(1 << e)
            outdeg[f] -= 1
            indeg[e] -= 1
        if outdeg[e] < bj and indeg[f] < bi:
            out[e] |= 1 << f
            outdeg[e] += 1
            indeg[f] += 1
            yield from link(e, f + 1)
            out[e] &= ~(1 << f)
            outdeg[e] -= 1
            indeg[f] -= 1

    def place(e: int):
        tails = [v for v in range(k) if outdeg[v] < bj]
        for ins in _small_subsets(tails, bi):
            for v in ins:
                out[v] |= 1 << e
                outdeg[v] += 1
            indeg[e] = len(ins)
            heads = [v for v in range(k) if indeg[v] < bi and v not in ins]
            for outs in _small_subsets(heads, bj):
                for v in outs:
                    out[e] |= 1 << v
                    indeg[v] += 1
                outdeg[e] = len(outs)
                yield from link(e, k)
                for v in outs:
                    indeg[v] -= 1
                out[e] = 0
                outdeg[e] = 0
            for v in ins:
                out[v] &= ~(1 << e)
                outdeg[v] -= 1
            indeg[e] = 0

    if extra == 0:
        if is_acyclic_masks(out):
            yield list(out)
        return
    yield from place(k)
