"""Qubit mapping and routing with adaptive divide-and-conquer.

Public surface re-exported here; see the README for the CLI and the
benchmark harness.
"""

from ._kernels import ACTIVE_IMPL
from .arch import ArchGraph, build_arch, grid, line, swap_distance_lower_bound
from .bench import GenSpec, generate_pseudo_realistic, improvement, run_suite
from .circuit import (
    Circuit,
    DependencyGraph,
    Gate,
    InteractionGraph,
    build_dependency_graph,
    front_layer,
    interaction_graph,
    reverse,
)
from .divide import Division, check_division, max_subgraph_division
from .embed import best_embedding, enumerate_embeddings, is_embeddable
from .mapping import Mapping
from .qasm import QasmError, emit_qasm, parse_qasm
from .route import (
    AdacParams,
    RoutedCircuit,
    RoutedHalf,
    RoutingError,
    adac,
    adaptive_routing,
    apply_swap,
    cost,
    heuristic_dac,
    heuristic_swaps,
)
from .sabre import SabreParams, reverse_traversal_mapping, sabre_map, sabre_route
from .verify import (
    check_equivalence,
    check_executability,
    exact_mapping_to_graph_distance,
    exact_token_swap_distance,
)

__version__ = "0.1.0"

__all__ = [
    "ACTIVE_IMPL",
    "AdacParams",
    "ArchGraph",
    "Circuit",
    "DependencyGraph",
    "Division",
    "Gate",
    "GenSpec",
    "InteractionGraph",
    "Mapping",
    "QasmError",
    "RoutedCircuit",
    "RoutedHalf",
    "RoutingError",
    "SabreParams",
    "adac",
    "adaptive_routing",
    "apply_swap",
    "best_embedding",
    "build_arch",
    "build_dependency_graph",
    "check_division",
    "check_equivalence",
    "check_executability",
    "cost",
    "emit_qasm",
    "enumerate_embeddings",
    "exact_mapping_to_graph_distance",
    "exact_token_swap_distance",
    "front_layer",
    "generate_pseudo_realistic",
    "grid",
    "heuristic_dac",
    "heuristic_swaps",
    "improvement",
    "interaction_graph",
    "is_embeddable",
    "line",
    "max_subgraph_division",
    "parse_qasm",
    "reverse",
    "reverse_traversal_mapping",
    "run_suite",
    "sabre_map",
    "sabre_route",
    "swap_distance_lower_bound",
]
