"""JSON digraph documents, replay records and DOT export."""
from __future__ import annotations

import json

from .graph_core import Digraph, GraphError, SimpleGraph, make_digraph, make_graph
from .phylogeny import cared_edges, phylogeny_graph

__all__ = [
    "DocumentError",
    "digraph_to_document",
    "digraph_from_document",
    "graph_from_document",
    "graph_to_document",
    "load_document",
    "failure_record",
    "digraph_to_dot",
]


class DocumentError(ValueError):
    pass


def digraph_to_document(D: Digraph, labels=None) -> dict:
    doc = {"n": D.n, "arcs": [list(a) for a in D.sorted_arcs()]}
    if labels is not None:
        doc["labels"] = list(labels)
    return doc


def _pairs(doc: dict, key: str) -> list:
    raw = doc.get(key)
    if not isinstance(raw, list):
        raise DocumentError(f"field {key!r} must be a list of [tail, head] pairs")
    pairs = []
    for k, rec in enumerate(raw):
        if (not isinstance(rec, list) or len(rec) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in rec)):
            raise DocumentError(f"{key}[{k}] = {rec!r} is not a pair of integers")
        pairs.append((rec[0], rec[1]))
    return pairs


def _count(doc) -> int:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DocumentError(f"field 'n' must be a non-negative integer, got {n!r}")
    return n


def digraph_from_document(doc) -> tuple:
    """``(Digraph, labels or None)`` from a parsed document."""
    n = _count(doc)
    arcs = _pairs(doc, "arcs")
    try:
        D = make_digraph(n, arcs)
    except GraphError as exc:
        idx = _offending(arcs, n)
        where = f"arcs[{idx}]: " if idx is not None else ""
        raise DocumentError(f"{where}{exc}") from None
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or not all(isinstance(x, str) for x in labels):
            raise DocumentError(f"field 'labels' must be a list of {n} strings")
    return D, labels


def _offending(pairs: list, n: int):
    seen = set()
    for k, (a, b) in enumerate(pairs):
        if not (0 <= a < n and 0 <= b < n) or a == b or (a, b) in seen:
            return k
        seen.add((a, b))
    return None


def graph_from_document(doc) -> SimpleGraph:
    """Undirected graph from ``{"n", "edges"}``; ``"arcs"`` is accepted as a synonym."""
    n = _count(doc)
    key = "edges" if "edges" in doc else "arcs"
    pairs = _pairs(doc, key)
    try:
        return make_graph(n, pairs)
    except GraphError as exc:
        raise DocumentError(f"{key}: {exc}") from None


def graph_to_document(G: SimpleGraph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.sorted_edges()]}


def load_document(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None


def failure_record(check: str, D: Digraph, detail: str) -> dict:
    return {"check": check, "digraph": digraph_to_document(D), "detail": detail}


def digraph_to_dot(D: Digraph, labels=None) -> str:
    """P(D) in DOT; cared edges are dashed grey, underlying edges solid."""
    cared = {ce.endpoints: ce.carers for ce in cared_edges(D)}
    P = phylogeny_graph(D)
    name = labels or [str(v) for v in range(D.n)]
    lines = ["graph phylogeny {"]
    for v in range(D.n):
        lines.append(f'  {v} [label="{name[v]}"];')
    for u, v in P.sorted_edges():
        if (u, v) in cared:
            carers = ",".join(name[w] for w in cared[(u, v)])
            lines.append(f'  {u} -- {v} [style=dashed, color=grey, kind=cared, carers="{carers}"];')
        else:
            arrow = f"{u}->{v}" if D.has_arc(u, v) else f"{v}->{u}"
            lines.append(f'  {u} -- {v} [style=solid, kind=underlying, arc="{arrow}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
