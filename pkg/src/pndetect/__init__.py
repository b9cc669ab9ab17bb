"""Detectability analysis for bounded labeled Petri nets.

Builds the reachability graph and the basis reachability graph of a labeled
Petri net, derives their pair-splitting detectors, and decides strong and
periodically strong detectability by strongly-connected-component analysis,
returning violation witnesses. An exponential subset-construction observer
is included as an independent cross-check.
"""

from .basis import (
    BasisState,
    Explanation,
    build_brg,
    consistent_basis_markings,
    has_silent_continuation,
    markings_from_basis,
    minimal_e_vectors,
    minimal_explanations,
)
from .detector import NodeSet, brg_detector, build_detector, detector_step, rg_detector
from .errors import (
    AssumptionError,
    BoundednessError,
    FiringError,
    GenerationError,
    NetFormatError,
    NetInputError,
    ToolError,
)
from .graph import Edge, LabeledGraph, epsilon_closure
from .net import (
    LabeledPetriNet,
    Marking,
    Subnet,
    enabled,
    fire,
    format_marking,
    is_acyclic,
    parikh,
    unobservable_subnet,
)
from .netio import emit_net, format_state, graph_to_dot, parse_net
from .oracle import (
    GenLimits,
    build_observer,
    cross_check,
    oracle_periodic_strong,
    oracle_strong,
    random_lpn,
    run_fuzz,
)
from .reachability import (
    DEFAULT_CAP,
    AssumptionReport,
    build_rg,
    check_assumptions,
    consistent_markings,
    unobservable_reach,
)
from .verifier import (
    Analysis,
    PropertyCheck,
    SccDecomposition,
    Verdict,
    WitnessStep,
    all_confusable,
    analyze,
    bad_state,
    sccs,
    verify_periodic_strong,
    verify_strong,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionError",
    "AssumptionReport",
    "Analysis",
    "BasisState",
    "BoundednessError",
    "DEFAULT_CAP",
    "Edge",
    "Explanation",
    "FiringError",
    "GenLimits",
    "GenerationError",
    "LabeledGraph",
    "LabeledPetriNet",
    "Marking",
    "NetFormatError",
    "NetInputError",
    "NodeSet",
    "PropertyCheck",
    "SccDecomposition",
    "Subnet",
    "ToolError",
    "Verdict",
    "WitnessStep",
    "all_confusable",
    "analyze",
    "bad_state",
    "brg_detector",
    "build_brg",
    "build_detector",
    "build_observer",
    "build_rg",
    "check_assumptions",
    "consistent_basis_markings",
    "consistent_markings",
    "cross_check",
    "detector_step",
    "emit_net",
    "enabled",
    "epsilon_closure",
    "fire",
    "format_marking",
    "format_state",
    "graph_to_dot",
    "has_silent_continuation",
    "is_acyclic",
    "markings_from_basis",
    "minimal_e_vectors",
    "minimal_explanations",
    "oracle_periodic_strong",
    "oracle_strong",
    "parikh",
    "parse_net",
    "random_lpn",
    "rg_detector",
    "run_fuzz",
    "sccs",
    "unobservable_reach",
    "unobservable_subnet",
    "verify_periodic_strong",
    "verify_strong",
]
