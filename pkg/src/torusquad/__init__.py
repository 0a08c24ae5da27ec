"""Toroidal quadrangulations Q_{n,k}, their automorphism groups, and
certificates that the duoprism realization in R^4 has no hidden symmetries."""

from .autgroup import (
    PermGroup,
    SizeLimitError,
    TransitivityReport,
    cellular_automorphisms,
    graph_automorphisms,
    group_closure,
    structured_generators,
    transitivity_report,
    vertex_stabilizer,
)
from .complex_core import (
    CellComplex,
    Flag,
    Graph,
    build_cycle_product_graph,
    build_duoprism_boundary,
    build_torus_quadrangulation,
    canonical_face,
    flags,
)
from .geometry import (
    IsometryWitness,
    MetricReport,
    Realization,
    clifford_check,
    duoprism_vertices,
    extend_to_isometry,
    metric_report,
    symmetry_generator_matrices,
)
from .verify import (
    Certificate,
    Lemma2Report,
    check_lemma2,
    count_Q44_in_hypercube,
    verify_no_hidden_symmetries,
)

__all__ = [
    "CellComplex", "Flag", "Graph", "build_cycle_product_graph", "build_duoprism_boundary",
    "build_torus_quadrangulation", "canonical_face", "flags",
    "PermGroup", "SizeLimitError", "TransitivityReport", "cellular_automorphisms",
    "graph_automorphisms", "group_closure", "structured_generators", "transitivity_report",
    "vertex_stabilizer",
    "IsometryWitness", "MetricReport", "Realization", "clifford_check", "duoprism_vertices",
    "extend_to_isometry", "metric_report", "symmetry_generator_matrices",
    "Certificate", "Lemma2Report", "check_lemma2", "count_Q44_in_hypercube",
    "verify_no_hidden_symmetries",
]

__version__ = "0.1.0"
