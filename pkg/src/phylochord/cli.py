"""Command-line front end.

Exit codes: 0 success / property holds, 1 property fails or counterexample
found (certificate printed), 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from .chordal import enumerate_holes, is_chordal
from .formats import (
    DocumentError,
    digraph_from_document,
    digraph_to_document,
    digraph_to_dot,
    failure_record,
    graph_from_document,
    load_document,
)
from .graph_core import DegreeBounds, GraphError, underlying_graph
from .hole_map import TheoremViolation, verify_hole_correspondence
from .orientations import (
    DEFAULT_EXTRA_VERTICES,
    NO_WITNESS,
    burnside_count,
    classify_orientation,
    enumerate_cycle_orientations,
    scan_forbidden_induced,
)
from .phylogeny import cared_edges, competition_graph, phylogeny_graph
from .verifier import ALL_CHECKS, SweepScope, default_jobs, run_suite

GRAPH_KINDS = ("underlying", "competition", "phylogeny")


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]")


def _emit(obj) -> None:
    # one line per innermost list keeps arcs and holes readable
    text = json.dumps(obj, indent=2)
    text = _FLAT_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
    sys.stdout.write(text + "\n")


def _digraph(path: str):
    return digraph_from_document(load_document(path))


def _graph_of(D, kind: str):
    if kind == "underlying":
        return underlying_graph(D)
    if kind == "competition":
        return competition_graph(D)
    return phylogeny_graph(D)


def _target_graph(args):
    if args.graph:
        return graph_from_document(load_document(args.graph))
    if not args.digraph:
        raise DocumentError("give a digraph file or --graph FILE")
    D, _ = _digraph(args.digraph)
    return _graph_of(D, args.of)


def _pairs(G):
    return [list(e) for e in G.sorted_edges()]


def cmd_moralize(args) -> int:
    D, labels = _digraph(args.digraph)
    if args.dot:
        sys.stdout.write(digraph_to_dot(D, labels))
        return 0
    _emit({
        "n": D.n,
        "underlying": _pairs(underlying_graph(D)),
        "competition": _pairs(competition_graph(D)),
        "phylogeny": _pairs(phylogeny_graph(D)),
        "cared_edges": [{"edge": list(ce.endpoints), "carers": list(ce.carers)} for ce in cared_edges(D)],
    })
    return 0


def cmd_chordal(args) -> int:
    G = _target_graph(args)
    cert = is_chordal(G)
    if cert.chordal:
        _emit({"chordal": True, "elimination_ordering": list(cert.ordering)})
        return 0
    _emit({"chordal": False, "hole": list(cert.hole.closed()), "certificate": str(cert.hole)})
    return 1


def cmd_holes(args) -> int:
    G = _target_graph(args)
    holes = enumerate_holes(G, cap=args.cap)
    _emit({"count": len(holes), "holes": [list(h.closed()) for h in holes]})
    return 0


def _class_json(O) -> dict:
    out = {
        "k": O.length,
        "runs": list(O.runs),
        "arcs": [list(a) for a in O.representative.sorted_arcs()],
        "status": O.status,
    }
    if O.status == NO_WITNESS:
        out["bound"] = O.bound
    if O.witness is not None:
        out["witness"] = digraph_to_document(O.witness)
    return out


def cmd_classify_cycle(args) -> int:
    classes = [classify_orientation(O, args.extra) for O in enumerate_cycle_orientations(args.k)]
    _emit({"k": args.k, "extra_vertices": args.extra, "classes": [_class_json(O) for O in classes]})
    return 0


def cmd_census(args) -> int:
    classes = enumerate_cycle_orientations(args.k)
    expected = burnside_count(args.k)
    _emit({
        "k": args.k,
        "classes": len(classes),
        "burnside": expected,
        "runs": [list(O.runs) for O in classes],
    })
    return 0 if expected == len(classes) else 1


def cmd_scan(args) -> int:
    D, _ = _digraph(args.digraph)
    found = scan_forbidden_induced(D)
    _emit({
        "forbidden": [
            {"vertices": list(vs), "k": O.length, "runs": list(O.runs), "status": O.status}
            for vs, O in found
        ]
    })
    return 1 if found else 0


def cmd_phi(args) -> int:
    D, _ = _digraph(args.digraph)
    try:
        rep = verify_hole_correspondence(D, cap=args.cap)
    except TheoremViolation as exc:
        _emit({"error": str(exc), "digraph": digraph_to_document(D)})
        return 1
    _emit({
        "holes_P": [list(h.closed()) for h in rep.holes_P],
        "holes_U": [list(h.closed()) for h in rep.holes_U],
        "phi": [{"hole": list(h.closed()), "image": list(img.closed())} for h, img in rep.phi.items()],
        "hypotheses": {"disjoint_P_holes": rep.disjoint, "no_U_hole_of_length_4_or_6": rep.no_short_even_holes},
        "injective": rep.injective,
        "count_ok": rep.count_ok,
        "passed": rep.passed,
    })
    return 0 if rep.passed else 1


def cmd_verify(args) -> int:
    checks = ALL_CHECKS if args.checks == "all" else tuple(c.strip() for c in args.checks.split(","))
    if args.random:
        scope = SweepScope("random", args.n, DegreeBounds(args.i, args.j),
                           sample_count=args.samples, seed=args.seed)
    else:
        scope = SweepScope("exhaustive", args.n, DegreeBounds(args.i, args.j), dedup=args.dedup)
    report = run_suite(scope, checks, jobs=args.jobs)
    out = report.summary()
    if not args.timing:
        out.pop("wall_time")
    failures = [failure_record(f.check, f.digraph, f.detail) for _, f in sorted(report.first_failure.items())]
    if failures:
        out["counterexamples"] = failures
        if args.replay:
            with open(args.replay, "w") as fh:
                for rec in failures:
                    fh.write(json.dumps(rec) + "\n")
    _emit(out)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phylochord", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("moralize", help="underlying, competition and phylogeny graphs with cared edges")
    s.add_argument("digraph")
    s.add_argument("--dot", action="store_true", help="emit P(D) as DOT instead of JSON")
    s.set_defaults(func=cmd_moralize)

    for name, func, helptext in (("chordal", cmd_chordal, "chordality with certificate"),
                                 ("holes", cmd_holes, "enumerate holes")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("digraph", nargs="?")
        s.add_argument("--graph", help="undirected graph document {n, edges}")
        s.add_argument("--of", choices=GRAPH_KINDS, default="phylogeny")
        if name == "holes":
            s.add_argument("--cap", type=int, default=14)
        s.set_defaults(func=func)

    s = sub.add_parser("classify-cycle", help="classify the acyclic orientations of the k-cycle")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--extra", type=int, default=DEFAULT_EXTRA_VERTICES)
    s.set_defaults(func=cmd_classify_cycle)

    s = sub.add_parser("census", help="count orientation classes of the k-cycle")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("scan", help="forbidden induced cycle orientations")
    s.add_argument("digraph")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("phi", help="hole map from P(D) to U(D)")
    s.add_argument("digraph")
    s.add_argument("--cap", type=int, default=10)
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("verify", help="run the theorem checks over a sweep")
    s.add_argument("--n", type=int, required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", default=True)
    mode.add_argument("--random", action="store_true")
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--dedup", action="store_true")
    s.add_argument("--checks", default="all", help=f"'all' or comma list of {', '.join(ALL_CHECKS)}")
    s.add_argument("--jobs", type=int, default=None, help="worker processes (default: $PHYLOCHORD_JOBS or CPU count)")
    s.add_argument("--i", type=int, default=2, help="max indegree")
    s.add_argument("--j", type=int, default=2, help="max outdegree")
    s.add_argument("--replay", help="write failing digraphs as JSON lines")
    s.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 0) is None:
        args.jobs = default_jobs()
    try:
        return args.func(args)
    except (DocumentError, GraphError) as exc:
        sys.stderr.write(f"phylochord {args.command}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
