"""Phylogeny graphs of degree-bounded acyclic digraphs and their chordality."""
from .chordal import (
    ChordalityCertificate,
    Hole,
    W_CONFIGURATION,
    clique_number,
    common_neighbor_on_cycle,
    contains_w_configuration,
    enumerate_holes,
    is_chordal,
    is_hole,
    opposite_to_chord_vertices,
    simplicial_vertices,
    validate_cycle,
    verify_certificate,
    verify_elimination_ordering,
)
from .graph_core import (
    DegreeBounds,
    Digraph,
    GraphError,
    SimpleGraph,
    canonical_form,
    check_degree_bounds,
    induced_subdigraph,
    induced_subgraph,
    is_acyclic,
    make_digraph,
    make_graph,
    topological_order,
    underlying_graph,
)
from .hole_map import (
    TheoremViolation,
    extending_sets,
    obtained_subgraph,
    phi,
    phi_details,
    verify_hole_correspondence,
)
from .orientations import (
    burnside_count,
    check_catalog,
    classify_all,
    classify_orientation,
    enumerate_cycle_orientations,
    find_witness,
    forbidden_catalog,
    scan_forbidden_induced,
)
from .phylogeny import care_bound_check, cared_edges, competition_graph, phylogeny_graph
from .verifier import (
    ALL_CHECKS,
    SweepScope,
    check_stream,
    enumerate_digraphs,
    find_remark_counterexamples,
    random_digraph,
    run_checks,
    run_suite,
)

__version__ = "0.1.0"
