"""netcompress - topological compression of networks by degree-preserving rewiring."""

from ._version import __version__

from .bounds import (
    DeltaReport,
    addition_lower_bound,
    delta_on_addition,
    delta_on_removal,
    published_addition_bound,
    removal_upper_bound,
)
from .errors import NetCompressError
from .evolution import (
    EvolutionConfig,
    EvolutionStep,
    EvolutionTrajectory,
    NodeConstraint,
    compress,
    compression_profile,
    random_rewire,
)
from .generators import GeneratorSpec, ba_network, er_network, multi_population, ws_network
from .graph import (
    Graph,
    average_distance,
    clustering_coefficient,
    connected_components,
    degree_sequence,
    distance_matrix,
    from_edge_list,
    is_connected,
    largest_component,
)
from .io import read_edge_list, write_edge_list
from .paths import GeodesicTable, edge_betweenness_all, edge_betweenness_single, psi_addition, psi_removal
from .spectral import FitResult, fiedler_value, fit_log, fit_loglog, ultra_small_world_gap
from .types import EdgeKey, GeneratorKind, Method, Metric, StepKind

__all__ = [
    "__version__",
    "DeltaReport",
    "addition_lower_bound",
    "delta_on_addition",
    "delta_on_removal",
    "published_addition_bound",
    "removal_upper_bound",
    "NetCompressError",
    "EvolutionConfig",
    "EvolutionStep",
    "EvolutionTrajectory",
    "NodeConstraint",
    "compress",
    "compression_profile",
    "random_rewire",
    "GeneratorSpec",
    "ba_network",
    "er_network",
    "multi_population",
    "ws_network",
    "Graph",
    "average_distance",
    "clustering_coefficient",
    "connected_components",
    "degree_sequence",
    "distance_matrix",
    "from_edge_list",
    "is_connected",
    "largest_component",
    "read_edge_list",
    "write_edge_list",
    "GeodesicTable",
    "edge_betweenness_all",
    "edge_betweenness_single",
    "psi_addition",
    "psi_removal",
    "FitResult",
    "fiedler_value",
    "fit_log",
    "fit_loglog",
    "ultra_small_world_gap",
    "EdgeKey",
    "GeneratorKind",
    "Method",
    "Metric",
    "StepKind",
]
