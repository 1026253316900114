"""Candidate scoring and greedy selection for the rewiring chain."""

from __future__ import annotations

import logging
import math
from typing import Dict, Hashable, Optional, Set, Tuple, TypeVar

import numpy as np

from ..errors import (
    EmptyAdmissibleSetError,
    EmptyCandidatesError,
    GraphTooSmallError,
    NoRemovalCandidateError,
)
from ..graph import Graph, connected_components
from ..paths import GeodesicTable, psi_addition, psi_removal
from ..types import EdgeKey, NodeId
from .models import NodeConstraint

__all__ = [
    "TIE_TOLERANCE",
    "pick_best",
    "select_initial_edge",
    "score_removal_candidates",
    "select_removal_edge",
    "admissible_addition_set",
    "apply_node_constraint",
    "score_addition_candidates",
    "select_addition_node",
]

logger = logging.getLogger(__name__)

TIE_TOLERANCE = 1e-9

K = TypeVar("K", bound=Hashable)


def pick_best(
    scores: Dict[K, float],
    *,
    maximize: bool,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[K, float]:
    """Best-scoring key; ties within ``TIE_TOLERANCE`` go to the smallest key.

    With ``rng`` the tie is broken uniformly at random instead.
    """
    if not scores:
        raise EmptyCandidatesError("no candidates to choose from")
    best = max(scores.values()) if maximize else min(scores.values())
    if math.isinf(best):
        tied = sorted(key for key, value in scores.items() if value == best)  # type: ignore[type-var]
    else:
        tied = sorted(  # type: ignore[type-var]
            key for key, value in scores.items() if abs(value - best) <= TIE_TOLERANCE
        )
    choice = tied[int(rng.integers(len(tied)))] if rng is not None and len(tied) > 1 else tied[0]
    return choice, scores[choice]


def select_initial_edge(
    g: Graph, table: Optional[GeodesicTable] = None
) -> Tuple[EdgeKey, NodeId]:
    """Edge of least betweenness and its lower-degree endpoint."""

    if g.edge_count < 2:
        raise GraphTooSmallError(f"need at least 2 edges, graph has {g.edge_count}")
    geo = table or GeodesicTable(g)
    scores = {e: geo.existing_edge_betweenness(e.u, e.v) for e in g.edges()}
    edge, _ = pick_best(scores, maximize=False)
    return edge, lower_degree_endpoint(g, edge)


def lower_degree_endpoint(g: Graph, edge: EdgeKey) -> NodeId:
    # ties go to the smaller id, which is edge.u
    return edge.v if g.degree(edge.v) < g.degree(edge.u) else edge.u


def score_removal_candidates(
    g: Graph,
    pivot: NodeId,
    forbidden: Optional[EdgeKey],
    table: Optional[GeodesicTable] = None,
) -> Dict[EdgeKey, float]:
    """ψ of every edge at ``pivot`` except ``forbidden``."""

    geo = table or GeodesicTable(g)
    candidates = [v for v in g.neighbors(pivot) if forbidden is None or EdgeKey.of(pivot, v) != forbidden]
    if not candidates:
        raise NoRemovalCandidateError(f"node {pivot} has no removable edge besides {forbidden}")
    return {EdgeKey.of(pivot, v): psi_removal(g, (pivot, v), geo) for v in candidates}


def select_removal_edge(
    g: Graph,
    pivot: NodeId,
    forbidden: Optional[EdgeKey],
    table: Optional[GeodesicTable] = None,
    rng: Optional[np.random.Generator] = None,
) -> EdgeKey:
    """Edge at ``pivot`` with the smallest ψ; bridges only when nothing else is left."""

    edge, _ = pick_best(score_removal_candidates(g, pivot, forbidden, table), maximize=False, rng=rng)
    return edge


def admissible_addition_set(
    g_cut: Graph,
    a: NodeId,
    prev_cut_far_end: NodeId,
    anchor_b: Optional[NodeId] = None,
) -> Set[NodeId]:
    """Nodes that may receive the next edge from ``a``.

    ``prev_cut_far_end`` is the other endpoint of the edge just cut from
    ``a``. When that cut kept the graph connected, every node except ``a``
    and its pre-cut neighbours qualifies; otherwise only the component holding
    ``prev_cut_far_end`` does (without that node itself).
    """
    components = connected_components(g_cut)
    if len(components) == 1:
        excluded = set(g_cut.neighbor_set(a)) | {a, prev_cut_far_end}
        admissible = set(g_cut.nodes()) - excluded
    else:
        home = next(c for c in components if prev_cut_far_end in c)
        admissible = set(home) - {prev_cut_far_end}
    if anchor_b is not None:
        admissible.discard(anchor_b)
    if not admissible:
        raise EmptyAdmissibleSetError(f"no node can receive an edge from {a}")
    return admissible


def apply_node_constraint(
    candidates: Set[NodeId],
    a: NodeId,
    constraint: NodeConstraint,
) -> Tuple[Set[NodeId], bool]:
    """Candidates allowed by ``constraint``.

    Returns:
        (allowed nodes, whether the unconstrained set had to be used instead)
    """
    constraint.require_nodes(max(candidates | {a}) + 1)
    allowed = {v for v in candidates if constraint.allows(a, v)}
    if allowed:
        return allowed, False
    logger.warning(f"No candidate satisfies the constraint of node {a}; using all {len(candidates)}")
    return set(candidates), True


def score_addition_candidates(
    g_cut: Graph,
    a: NodeId,
    candidates: Set[NodeId],
    table: Optional[GeodesicTable] = None,
) -> Dict[NodeId, float]:
    """ψ of the edge ``(a, v)`` for each candidate ``v``."""

    if not candidates:
        raise EmptyCandidatesError(f"no addition candidates for node {a}")
    geo = table or GeodesicTable(g_cut)
    return {v: psi_addition(g_cut, (a, v), geo) for v in sorted(candidates)}


def select_addition_node(
    g_cut: Graph,
    a: NodeId,
    candidates: Set[NodeId],
    table: Optional[GeodesicTable] = None,
    rng: Optional[np.random.Generator] = None,
) -> NodeId:
    """Candidate whose new edge from ``a`` has the largest ψ."""

    node, _ = pick_best(score_addition_candidates(g_cut, a, candidates, table), maximize=True, rng=rng)
    return node

