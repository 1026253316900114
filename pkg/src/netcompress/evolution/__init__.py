"""Degree-preserving rewiring evolutions and their profiles."""

from .base import ChainContext, RewiringStrategy, get_strategy, graph_metrics, register_strategy, run_chain
from .baseline import RandomStrategy, random_rewire
from .effective import EffectiveStrategy, compress
from .models import (
    ConservationReport,
    EvolutionConfig,
    EvolutionStep,
    EvolutionTrajectory,
    NodeConstraint,
)
from .profile import compression_profile
from .search import (
    admissible_addition_set,
    apply_node_constraint,
    pick_best,
    select_addition_node,
    select_initial_edge,
    select_removal_edge,
)

__all__ = [
    "ChainContext",
    "RewiringStrategy",
    "get_strategy",
    "graph_metrics",
    "register_strategy",
    "run_chain",
    "RandomStrategy",
    "random_rewire",
    "EffectiveStrategy",
    "compress",
    "ConservationReport",
    "EvolutionConfig",
    "EvolutionStep",
    "EvolutionTrajectory",
    "NodeConstraint",
    "compression_profile",
    "admissible_addition_set",
    "apply_node_constraint",
    "pick_best",
    "select_addition_node",
    "select_initial_edge",
    "select_removal_edge",
]
