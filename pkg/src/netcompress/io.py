"""Edge-list, node-attribute, trajectory and summary files."""

from __future__ import annotations

import logging
import os
import re
import tempfile
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
import pandas as pd
import xarray as xr
from pydantic import BaseModel, Field

from .errors import (
    DuplicateEdgeError,
    MissingAttributesError,
    ParseError,
    SelfLoopError,
)
from .evolution.models import EvolutionTrajectory, NodeConstraint
from .graph import Graph

__all__ = [
    "PathLike",
    "load_edge_list",
    "read_edge_list",
    "write_edge_list",
    "read_node_attributes",
    "trajectory_frame",
    "write_trajectory_csv",
    "RunSummary",
    "write_summary_json",
    "profile_frame",
    "write_table_csv",
    "atomic_write_text",
    "TRAJECTORY_COLUMNS",
]

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

TRAJECTORY_COLUMNS = [
    "step",
    "cut_u",
    "cut_v",
    "add_u",
    "add_v",
    "psi_cut",
    "psi_add",
    "disconnected_after_cut",
    "avg_distance",
]
FLOAT_FORMAT = "%.10g"

_SEPARATORS = re.compile(r"[,\s]+")


def atomic_write_text(path: PathLike, text: str) -> Path:
    """Write ``text`` through a temporary sibling file, then move it into place."""

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        Path(tmp_name).replace(target)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    return target


# ----------------------------------------------------------------------
# Edge lists
# ----------------------------------------------------------------------


def load_edge_list(path: PathLike, *, strict: bool = True) -> Tuple[Graph, List[str]]:
    """Parse an edge-list file.

    One ``u v`` pair per line, ``#`` starts a comment line. Labels become
    dense node ids in order of first appearance.

    Returns:
        (graph, label of each node id)
    """
    labels: Dict[str, int] = {}
    edges: List[Tuple[int, int]] = []
    seen: Dict[Tuple[int, int], int] = {}
    warned_extra = False
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise ParseError(f"expected two node labels, got {line!r}", line=lineno)
        if len(tokens) > 2 and not warned_extra:
            logger.warning(f"{path}: ignoring extra columns from line {lineno} on")
            warned_extra = True
        u = labels.setdefault(tokens[0], len(labels))
        v = labels.setdefault(tokens[1], len(labels))
        if u == v:
            raise SelfLoopError(u, line=lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            if strict:
                raise DuplicateEdgeError(*key, line=lineno)
            continue
        seen[key] = lineno
        edges.append(key)
    if not labels:
        raise ParseError(f"{path} contains no edges")
    graph = Graph.from_edge_list(len(labels), edges)
    logger.info(f"Read {graph!r} from {path}")
    return graph, list(labels)


def read_edge_list(path: PathLike, *, strict: bool = True) -> Graph:
    return load_edge_list(path, strict=strict)[0]


def write_edge_list(g: Graph, path: PathLike, labels: Optional[List[str]] = None) -> Path:
    """Write one ``u v`` line per edge in canonical order."""

    names = labels if labels is not None else [str(v) for v in g.nodes()]
    body = "".join(f"{names[u]} {names[v]}\n" for u, v in g.edges())
    return atomic_write_text(path, body)


def read_node_attributes(
    path: PathLike,
    node_count: int,
    labels: Optional[Mapping[str, int]] = None,
) -> NodeConstraint:
    """Load ``label threshold attr...`` lines into a :class:`NodeConstraint`.

    Labels resolve through ``labels`` when given, otherwise they must be
    integer node ids. Every node needs exactly one line.
    """
    thresholds: Dict[int, float] = {}
    vectors: Dict[int, List[float]] = {}
    width: Optional[int] = None
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = [tok for tok in _SEPARATORS.split(line) if tok]
        if len(tokens) < 3:
            raise ParseError("expected a label, a threshold and at least one attribute", line=lineno)
        node = _resolve_label(tokens[0], labels, node_count, lineno)
        try:
            values = [float(tok) for tok in tokens[1:]]
        except ValueError as exc:
            raise ParseError(f"non-numeric value in {line!r}", line=lineno, cause=exc) from exc
        if width is None:
            width = len(values) - 1
        elif len(values) - 1 != width:
            raise ParseError(f"expected {width} attributes, got {len(values) - 1}", line=lineno)
        if node in thresholds:
            raise ParseError(f"node {tokens[0]} listed twice", line=lineno)
        thresholds[node] = values[0]
        vectors[node] = values[1:]
    missing = [v for v in range(node_count) if v not in thresholds]
    if missing:
        raise MissingAttributesError(f"{len(missing)} nodes have no attributes, first is node {missing[0]}")
    return NodeConstraint(
        attributes=np.array([vectors[v] for v in range(node_count)]),
        thresholds=np.array([thresholds[v] for v in range(node_count)]),
    )


def _resolve_label(token: str, labels: Optional[Mapping[str, int]], node_count: int, lineno: int) -> int:
    if labels is not None:
        if token not in labels:
            raise ParseError(f"unknown node label {token!r}", line=lineno)
        return labels[token]
    try:
        node = int(token)
    except ValueError as exc:
        raise ParseError(f"node label {token!r} is not an integer id", line=lineno, cause=exc) from exc
    if not 0 <= node < node_count:
        raise ParseError(f"node {node} outside [0, {node_count})", line=lineno)
    return node


# ----------------------------------------------------------------------
# Evolution outputs
# ----------------------------------------------------------------------


def trajectory_frame(trajectory: EvolutionTrajectory) -> pd.DataFrame:
    rows = [
        {
            "step": step.index,
            "cut_u": step.cut_pivot,
            "cut_v": step.cut_far,
            "add_u": step.add_from,
            "add_v": step.add_to,
            "psi_cut": step.psi_cut,
            "psi_add": step.psi_add,
            "disconnected_after_cut": step.disconnected_after_cut,
            "avg_distance": step.avg_distance if step.avg_distance is not None else np.nan,
        }
        for step in trajectory.steps
    ]
    return pd.DataFrame(rows, columns=TRAJECTORY_COLUMNS)


def write_table_csv(frame: pd.DataFrame, path: PathLike) -> Path:
    """CSV with a fixed float format, so equal inputs give equal bytes."""

    text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n")
    return atomic_write_text(path, text)


def write_trajectory_csv(trajectory: EvolutionTrajectory, path: PathLike) -> Path:
    return write_table_csv(trajectory_frame(trajectory), path)


class RunSummary(BaseModel):
    """Run-level results written next to a trajectory."""

    method: str
    seed: int
    rewiring_fraction: float
    n_max: int
    steps: int
    node_count: int
    edge_count: int
    initial_fingerprint: str
    initial_avg_distance: Optional[float] = None
    final_avg_distance: Optional[float] = None
    initial_clustering: Optional[float] = None
    final_clustering: Optional[float] = None
    initial_fiedler: Optional[float] = None
    final_fiedler: Optional[float] = None
    nodes_preserved: bool
    edges_preserved: bool
    connected: bool
    degree_sequence_preserved: bool
    constraint_fallbacks: int = Field(default=0, ge=0)

    @classmethod
    def from_trajectory(cls, trajectory: EvolutionTrajectory) -> "RunSummary":
        report = trajectory.conservation()
        before, after = trajectory.initial_metrics, trajectory.final_metrics
        return cls(
            method=trajectory.method.value,
            seed=trajectory.config.seed,
            rewiring_fraction=trajectory.config.rewiring_fraction,
            n_max=trajectory.n_max,
            steps=len(trajectory.steps),
            node_count=trajectory.initial_node_count,
            edge_count=trajectory.initial_edge_count,
            initial_fingerprint=trajectory.initial_fingerprint,
            initial_avg_distance=before.get("avg_distance"),
            final_avg_distance=after.get("avg_distance"),
            initial_clustering=before.get("clustering"),
            final_clustering=after.get("clustering"),
            initial_fiedler=before.get("fiedler"),
            final_fiedler=after.get("fiedler"),
            constraint_fallbacks=trajectory.constraint_fallbacks,
            **report.model_dump(),
        )


def write_summary_json(summary: RunSummary, path: PathLike) -> Path:
    return atomic_write_text(path, summary.model_dump_json(indent=2) + "\n")


def profile_frame(profile: xr.Dataset) -> pd.DataFrame:
    """Per-run rows ``P_rew, seed, <metrics>`` of a compression profile."""

    per_run = [name for name, var in profile.data_vars.items() if var.dims == ("fraction", "seed")]
    frame = profile[per_run].to_dataframe().reset_index()
    frame = frame.rename(columns={"fraction": "P_rew"})
    return frame[["P_rew", "seed", *per_run]]
