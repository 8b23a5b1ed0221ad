"""Exhaustive and random sweeps over (i, j) digraphs with the theorem checks."""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, islice
from typing import Iterable, Iterator, Optional

import numpy as np

from .chordal import clique_number_adj, holes_from_adj, is_chordal_adj
from .graph_core import DegreeBounds, Digraph, GraphError, canonical_form, induced_subdigraph, iter_bits
from .hole_map import HOLE_MAP_CAP, TheoremViolation, verify_hole_correspondence
from .orientations import LONG_CYCLE_MIN, forbidden_catalog
from .phylogeny import phylogeny_adj

__all__ = [
    "SweepScope",
    "SuiteReport",
    "Failure",
    "ALL_CHECKS",
    "enumerate_digraphs",
    "random_digraph",
    "iter_scope",
    "run_checks",
    "run_suite",
    "replay",
    "RemarkFinding",
    "find_remark_counterexamples",
    "is_remark_a",
    "is_remark_b",
    "default_jobs",
    "JOBS_ENV",
]

EXHAUSTIVE_MAX_N = 7
RANDOM_MAX_N = 32
JOBS_ENV = "PHYLOCHORD_JOBS"
ALL_CHECKS = ("k5", "long_hole", "chordal_suff", "care_bounds", "hole_corr", "forbidden_scan")


def default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SweepScope:
    mode: str = "exhaustive"
    n: int = 5
    bounds: DegreeBounds = DegreeBounds(2, 2)
    dedup: bool = False
    sample_count: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise GraphError(f"unknown sweep mode {self.mode!r}")
        if self.n < 0:
            raise GraphError("negative vertex count")
        if self.mode == "exhaustive" and self.n > EXHAUSTIVE_MAX_N:
            raise GraphError(f"exhaustive sweeps are limited to n <= {EXHAUSTIVE_MAX_N}")
        if self.mode == "random":
            if self.n > RANDOM_MAX_N:
                raise GraphError(f"random sweeps are limited to n <= {RANDOM_MAX_N}")
            if self.sample_count < 0:
                raise GraphError("negative sample count")


def _forward_masks(n: int, bounds: DegreeBounds) -> Iterator[tuple]:
    """Out-mask tuples of every digraph with arcs u -> v only for u < v."""
    out = [0] * n
    outdeg = [0] * n

    def grow(v: int):
        if v == n:
            yield tuple(out)
            return
        tails = [u for u in range(v) if outdeg[u] < bounds.j]
        for r in range(min(bounds.i, len(tails)) + 1):
            for ins in combinations(tails, r):
                for u in ins:
                    out[u] |= 1 << v
                    outdeg[u] += 1
                yield from grow(v + 1)
                for u in ins:
                    out[u] &= ~(1 << v)
                    outdeg[u] -= 1

    yield from grow(0)


def enumerate_digraphs(scope: SweepScope) -> Iterator[Digraph]:
    """Every (i, j) digraph on n vertices whose arcs point from lower to higher index.

    Each acyclic digraph is isomorphic to at least one of these.  With
    ``dedup`` only the first digraph of every isomorphism class is kept.
    """
    if scope.mode != "exhaustive":
        raise GraphError("enumerate_digraphs needs an exhaustive scope")
    seen = set()
    for masks in _forward_masks(scope.n, scope.bounds):
        D = Digraph.from_out_masks(masks)
        if scope.dedup:
            form = canonical_form(D)
            if form in seen:
                continue
            seen.add(form)
        yield D


def random_digraph(n: int, bounds: DegreeBounds, seed) -> Digraph:
    """Random acyclic digraph respecting ``bounds``; same seed, same digraph.

    A random vertex order fixes the direction of every arc.  Pairs are
    visited in random order and accepted with a probability scaled to the
    degree bounds (itself drawn per sample for variety); arcs that would
    break a bound are skipped.  Not uniform over anything.
    """
    if n > RANDOM_MAX_N:
        raise GraphError(f"random digraphs are limited to n <= {RANDOM_MAX_N}")
    rng = np.random.default_rng(seed)
    if n < 2:
        return Digraph(n, frozenset())
    order = rng.permutation(n)
    p = min(1.0, rng.uniform(0.5, 1.6) * max(bounds.i, bounds.j) / (n - 1))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    visit = rng.permutation(len(pairs))
    accept = rng.random(len(pairs)) < p
    indeg = [0] * n
    outdeg = [0] * n
    arcs = set()
    for k in visit:
        if not accept[k]:
            continue
        a, b = pairs[k]
        t, h = int(order[a]), int(order[b])
        if outdeg[t] < bounds.j and indeg[h] < bounds.i:
            arcs.add((t, h))
            outdeg[t] += 1
            indeg[h] += 1
    return Digraph(n, frozenset(arcs))


def iter_scope(scope: SweepScope) -> Iterator[Digraph]:
    if scope.mode == "exhaustive":
        yield from enumerate_digraphs(scope)
    else:
        for t in range(scope.sample_count):
            yield random_digraph(scope.n, scope.bounds, [scope.seed, t])


# ---------------------------------------------------------------------------
# checks


class _Facts:
    """Lazily computed graphs and holes for one digraph."""

    def __init__(self, D: Digraph, bounds: DegreeBounds):
        self.D = D
        self.bounds = bounds

    @cached_property
    def u_adj(self) -> list:
        D = self.D
        return [D.out_adj[v] | D.in_adj[v] for v in range(D.n)]

    @cached_property
    def p_adj(self) -> list:
        return phylogeny_adj(self.D)

    @cached_property
    def u_holes(self) -> list:
        return holes_from_adj(self.u_adj)

    @cached_property
    def u_chordal(self) -> bool:
        return is_chordal_adj(self.u_adj)

    @cached_property
    def p_chordal(self) -> bool:
        return is_chordal_adj(self.p_adj)


def _check_k5(f: _Facts):
    omega = clique_number_adj(f.p_adj)
    return omega <= 4, True, f"clique number of P(D) is {omega}"


def _restrict(adj: list, mask: int) -> list:
    verts = list(iter_bits(mask))
    index = {v: k for k, v in enumerate(verts)}
    return [sum(1 << index[w] for w in iter_bits(adj[v] & mask)) for v in verts]


def _check_long_hole(f: _Facts):
    long_holes = [h for h in f.u_holes if len(h) >= LONG_CYCLE_MIN] if not f.u_chordal else []
    if not long_holes:
        return True, False, "no hole of length >= 7 in U(D)"
    if f.p_chordal:
        return False, True, f"U(D) has hole {long_holes[0]} but P(D) is chordal"
    for h in long_holes:
        if is_chordal_adj(_restrict(f.p_adj, h.mask)):
            return False, True, f"P(D) restricted to U-hole {h} is chordal"
    return True, True, f"{len(long_holes)} long U-holes, all non-chordal in P(D)"


def _check_chordal_suff(f: _Facts):
    if not f.u_chordal:
        return True, False, "U(D) not chordal"
    if not f.p_chordal:
        return False, True, "U(D) chordal but P(D) is not"
    return True, True, "U(D) and P(D) chordal"


def _check_care_bounds(f: _Facts):
    D = f.D
    care_limit = f.bounds.i * (f.bounds.i - 1) // 2
    incidence_limit = care_limit * f.bounds.j
    incidence = [0] * D.n
    cared = 0
    for w in range(D.n):
        preds = D.in_adj[w]
        count = 0
        for x, y in combinations(iter_bits(preds), 2):
            if not f.u_adj[x] >> y & 1:
                count += 1
        if count > care_limit:
            return False, True, f"vertex {w} takes care of {count} edges"
    # incidence counts distinct cared edges, not (edge, carer) pairs
    for x in range(D.n):
        for y in iter_bits(f.p_adj[x] & ~f.u_adj[x]):
            if y > x:
                incidence[x] += 1
                incidence[y] += 1
                cared += 1
    for x in range(D.n):
        if incidence[x] > incidence_limit:
            return False, True, f"vertex {x} is incident to {incidence[x]} cared edges"
    return True, cared > 0, f"{cared} cared edges"


def _check_hole_corr(f: _Facts):
    D = f.D
    if D.n > HOLE_MAP_CAP or f.bounds != DegreeBounds(2, 2):
        return True, False, "outside hole-map scope"
    if f.p_chordal:
        return True, False, "P(D) chordal"
    try:
        rep = verify_hole_correspondence(D)
    except TheoremViolation as exc:
        return False, True, str(exc)
    if not rep.hypotheses_met:
        return True, False, "hypotheses not met"
    if not rep.injective:
        return False, True, f"no injective assignment for {len(rep.holes_P)} P-holes"
    if not rep.count_ok:
        return False, True, f"{len(rep.holes_U)} U-holes < {len(rep.holes_P)} P-holes"
    return True, True, f"{len(rep.holes_P)} P-holes mapped injectively"


_CATALOG = None


def _check_forbidden_scan(f: _Facts):
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = {O.canonical for O in forbidden_catalog()}
    hits = []
    for h in f.u_holes:
        if len(h) >= LONG_CYCLE_MIN:
            hits.append(h)
        elif len(h) == 6 and canonical_form(induced_subdigraph(f.D, h.vertices)[0]) in _CATALOG:
            hits.append(h)
    if not hits:
        return True, False, "no forbidden induced pattern"
    if f.bounds == DegreeBounds(2, 2) and f.p_chordal:
        return False, True, f"forbidden pattern on {hits[0]} but P(D) chordal"
    return True, True, f"{len(hits)} forbidden patterns, P(D) not chordal"


_CHECKS = {
    "k5": _check_k5,
    "long_hole": _check_long_hole,
    "chordal_suff": _check_chordal_suff,
    "care_bounds": _check_care_bounds,
    "hole_corr": _check_hole_corr,
    "forbidden_scan": _check_forbidden_scan,
}


def run_checks(D: Digraph, checks: Iterable[str] = ALL_CHECKS,
               bounds: DegreeBounds = DegreeBounds(2, 2)) -> dict:
    """``{check: (passed, applicable, detail)}`` for one digraph."""
    f = _Facts(D, bounds)
    out = {}
    for name in checks:
        if name not in _CHECKS:
            raise GraphError(f"unknown check {name!r}; choose from {', '.join(ALL_CHECKS)}")
        out[name] = _CHECKS[name](f)
    return out


@dataclass
class Failure:
    check: str
    digraph: Digraph
    detail: str


@dataclass
class SuiteReport:
    checks: tuple
    digraphs_checked: int = 0
    passed: dict = field(default_factory=dict)
    failed: dict = field(default_factory=dict)
    applicable: dict = field(default_factory=dict)
    first_failure: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not any(self.failed.values())

    def merge(self, other: "SuiteReport") -> None:
        """Fold ``other`` (a later part of the same stream) into self."""
        self.digraphs_checked += other.digraphs_checked
        for name in self.checks:
            self.passed[name] = self.passed.get(name, 0) + other.passed.get(name, 0)
            self.failed[name] = self.failed.get(name, 0) + other.failed.get(name, 0)
            self.applicable[name] = self.applicable.get(name, 0) + other.applicable.get(name, 0)
            if name not in self.first_failure and name in other.first_failure:
                self.first_failure[name] = other.first_failure[name]

    def summary(self) -> dict:
        return {
            "digraphs_checked": self.digraphs_checked,
            "ok": self.ok,
            "checks": {
                name: {
                    "passed": self.passed.get(name, 0),
                    "failed": self.failed.get(name, 0),
                    "applicable": self.applicable.get(name, 0),
                }
                for name in self.checks
            },
            "wall_time": round(self.wall_time, 3),
        }


def _check_chunk(args) -> SuiteReport:
    masks_list, checks, bounds = args
    rep = SuiteReport(tuple(checks))
    for masks in masks_list:
        D = Digraph.from_out_masks(masks)
        rep.digraphs_checked += 1
        for name, (ok, applicable, detail) in run_checks(D, checks, bounds).items():
            if ok:
                rep.passed[name] = rep.passed.get(name, 0) + 1
            else:
                rep.failed[name] = rep.failed.get(name, 0) + 1
                rep.first_failure.setdefault(name, Failure(name, D, detail))
            if applicable:
                rep.applicable[name] = rep.applicable.get(name, 0) + 1
    return rep


def _chunks(stream: Iterable, size: int) -> Iterator[list]:
    it = iter(stream)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def check_stream(digraphs: Iterable[Digraph], checks: Iterable[str] = ALL_CHECKS,
                 bounds: DegreeBounds = DegreeBounds(2, 2), jobs: Optional[int] = 1,
                 chunk_size: int = 2000) -> SuiteReport:
    """Run checks over any digraph stream; results do not depend on ``jobs``."""
    checks = tuple(checks)
    for name in checks:
        if name not in _CHECKS:
            raise GraphError(f"unknown check {name!r}; choose from {', '.join(ALL_CHECKS)}")
    jobs = default_jobs() if jobs is None else jobs
    start = time.perf_counter()
    report = SuiteReport(checks)
    payload = (([tuple(D.out_adj) for D in chunk], checks, bounds) for chunk in _chunks(digraphs, chunk_size))
    if jobs <= 1:
        for args in payload:
            report.merge(_check_chunk(args))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_check_chunk, payload):
                report.merge(part)
    report.wall_time = time.perf_counter() - start
    return report


def run_suite(scope: SweepScope, checks: Iterable[str] = ALL_CHECKS, jobs: Optional[int] = 1) -> SuiteReport:
    return check_stream(iter_scope(scope), checks, scope.bounds, jobs)


def replay(failure: Failure, bounds: DegreeBounds = DegreeBounds(2, 2)) -> tuple:
    return run_checks(failure.digraph, [failure.check], bounds)[failure.check]


# ---------------------------------------------------------------------------
# remark phenomena


@dataclass
class RemarkFinding:
    kind: str  # "A" or "B"
    digraph: Digraph
    holes_P: list
    holes_U: list
    detail: str = ""


def is_remark_a(D: Digraph) -> Optional[RemarkFinding]:
    """Every U-hole has length 4 while P(D) has a hole of length 6."""
    u_adj = [D.out_adj[v] | D.in_adj[v] for v in range(D.n)]
    p_adj = phylogeny_adj(D)
    if is_chordal_adj(p_adj):
        return None
    holes_U = holes_from_adj(u_adj)
    if not holes_U or any(len(h) != 4 for h in holes_U):
        return None
    holes_P = holes_from_adj(p_adj)
    six = [h for h in holes_P if len(h) == 6]
    if not six:
        return None
    return RemarkFinding("A", D, holes_P, holes_U, f"P-hole {six[0]} of length 6; all U-holes have length 4")


def is_remark_b(D: Digraph) -> Optional[RemarkFinding]:
    """Two P-holes sharing a vertex share their hole image and no injective map exists."""
    p_adj = phylogeny_adj(D)
    if is_chordal_adj(p_adj) or D.n > HOLE_MAP_CAP:
        return None
    rep = verify_hole_correspondence(D)
    if rep.injective:
        return None
    for a, b in combinations(rep.holes_P, 2):
        if a.mask & b.mask and rep.phi[a] == rep.phi[b]:
            return RemarkFinding(
                "B", D, rep.holes_P, rep.holes_U,
                f"P-holes {a} and {b} overlap and both map to U-hole {rep.phi[a]}",
            )
    return None


def _remark_stream(max_n: int, seed: int) -> Iterator[Digraph]:
    """Exhaustive forward digraphs for n <= 6, then random (2,2) digraphs up to max_n."""
    bounds = DegreeBounds(2, 2)
    for n in range(min(max_n, 6) + 1):
        for masks in _forward_masks(n, bounds):
            yield Digraph.from_out_masks(masks)
    if max_n <= 6:
        return
    t = 0
    sizes = list(range(7, max_n + 1))
    while True:
        n = sizes[t % len(sizes)]
        yield random_digraph(n, bounds, [seed, n, t])
        t += 1


def find_remark_counterexamples(max_n: int = 10, budget: int = 200_000, seed: int = 0,
                                kinds: str = "AB") -> list:
    """Search (2,2) digraphs for the two remark phenomena; at most one finding per kind.

    ``budget`` caps the number of digraphs examined.
    """
    if max_n > 12:
        raise GraphError("remark search limited to max_n <= 12")
    wanted = set(kinds)
    found = {}
    for D in islice(_remark_stream(max_n, seed), budget):
        if "A" in wanted and "A" not in found:
            hit = is_remark_a(D)
            if hit:
                found["A"] = hit
        if "B" in wanted and "B" not in found:
            hit = is_remark_b(D)
            if hit:
                found["B"] = hit
        if wanted <= set(found):
            break
    return [found[k] for k in sorted(found)]
