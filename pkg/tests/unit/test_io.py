import json
from pathlib import Path
from typing import Callable

import numpy as np
import pandas as pd
import pytest

from netcompress.errors import DuplicateEdgeError, MissingAttributesError, ParseError, SelfLoopError
from netcompress.evolution import EvolutionConfig, compress, compression_profile
from netcompress.graph import Graph
from netcompress.io import (
    TRAJECTORY_COLUMNS,
    RunSummary,
    atomic_write_text,
    load_edge_list,
    profile_frame,
    read_edge_list,
    read_node_attributes,
    trajectory_frame,
    write_edge_list,
    write_summary_json,
    write_trajectory_csv,
)
from netcompress.types import EdgeKey, Metric

pytestmark = pytest.mark.unit

WriteText = Callable[[str, str], Path]


def test_read_simple_path(write_text: WriteText) -> None:
    g = read_edge_list(write_text("p3.txt", "0 1\n1 2\n"))

    assert g.node_count == 3
    assert g.edges() == [EdgeKey(0, 1), EdgeKey(1, 2)]


def test_comments_and_blank_lines_are_ignored(write_text: WriteText) -> None:
    g = read_edge_list(write_text("c.txt", "# header\n\n0 1\n  # indented\n1 2\n"))

    assert g.edge_count == 2


def test_labels_follow_first_appearance(write_text: WriteText) -> None:
    g, labels = load_edge_list(write_text("l.txt", "b a\na c\n"))

    assert labels == ["b", "a", "c"]
    assert g.has_edge(0, 1) and g.has_edge(1, 2)


def test_self_loop_reports_line(write_text: WriteText) -> None:
    with pytest.raises(SelfLoopError) as info:
        read_edge_list(write_text("loop.txt", "3 3\n"))

    assert info.value.line == 1


def test_duplicates_strict_and_lenient(write_text: WriteText) -> None:
    path = write_text("dup.txt", "0 1\n1 2\n1 0\n")

    with pytest.raises(DuplicateEdgeError) as info:
        read_edge_list(path)
    assert info.value.line == 3
    assert read_edge_list(path, strict=False).edge_count == 2


def test_malformed_lines(write_text: WriteText) -> None:
    with pytest.raises(ParseError, match="line 2"):
        read_edge_list(write_text("bad.txt", "0 1\n7\n"))
    with pytest.raises(ParseError):
        read_edge_list(write_text("empty.txt", "# nothing here\n"))


def test_extra_columns_warn_once(write_text: WriteText, caplog: pytest.LogCaptureFixture) -> None:
    with caplog.at_level("WARNING", logger="netcompress.io"):
        g = read_edge_list(write_text("w.txt", "0 1 0.5\n1 2 0.7\n"))

    assert g.edge_count == 2
    assert sum("extra columns" in r.getMessage() for r in caplog.records) == 1


def test_edge_list_round_trip(tmp_path: Path, write_text: WriteText) -> None:
    g, labels = load_edge_list(write_text("in.txt", "x y\ny z\nz x\nz w\n"))

    out = write_edge_list(g, tmp_path / "out.txt", labels)
    again, again_labels = load_edge_list(out)

    named = {frozenset((labels[u], labels[v])) for u, v in g.edges()}
    renamed = {frozenset((again_labels[u], again_labels[v])) for u, v in again.edges()}
    assert named == renamed
    assert out.read_text().splitlines()[0] == "x y"


def test_atomic_write_replaces_content(tmp_path: Path) -> None:
    target = tmp_path / "nested" / "file.txt"

    atomic_write_text(target, "first\n")
    atomic_write_text(target, "second\n")

    assert target.read_text() == "second\n"
    assert [p.name for p in target.parent.iterdir()] == ["file.txt"]


def test_node_attributes_by_label(write_text: WriteText) -> None:
    path = write_text("attrs.txt", "# label c x y\nb 1.5 0 0\na, 2.0, 1, 1\nc 0.5 3 4\n")

    constraint = read_node_attributes(path, 3, {"b": 0, "a": 1, "c": 2})

    assert constraint.thresholds.tolist() == [1.5, 2.0, 0.5]
    assert constraint.attributes.shape == (3, 2)
    assert constraint.allows(1, 0) and not constraint.allows(0, 2)


def test_node_attributes_need_every_node(write_text: WriteText) -> None:
    with pytest.raises(MissingAttributesError):
        read_node_attributes(write_text("a.txt", "0 1.0 0.0\n1 1.0 0.0\n"), 3)


@pytest.mark.parametrize(
    "body",
    [
        "0 1.0\n",
        "0 1.0 2.0\n1 1.0 2.0 3.0\n",
        "0 1.0 x\n",
        "0 1.0 2.0\n0 1.0 2.0\n",
        "9 1.0 2.0\n",
        "a 1.0 2.0\n",
    ],
)
def test_node_attribute_parse_errors(write_text: WriteText, body: str) -> None:
    with pytest.raises(ParseError):
        read_node_attributes(write_text("bad.txt", body), 2)


def test_trajectory_outputs(tmp_path: Path, cycle: Callable[[int], Graph]) -> None:
    trajectory = compress(cycle(6), EvolutionConfig(rewiring_fraction=0.34))

    frame = trajectory_frame(trajectory)
    path = write_trajectory_csv(trajectory, tmp_path / "trajectory.csv")
    read_back = pd.read_csv(path)

    assert list(frame.columns) == TRAJECTORY_COLUMNS
    assert list(read_back.columns) == TRAJECTORY_COLUMNS
    assert len(read_back) == len(trajectory.steps)
    assert read_back["step"].tolist() == list(range(1, len(trajectory.steps) + 1))


def test_trajectory_csv_is_byte_identical_across_runs(tmp_path: Path, cycle: Callable[[int], Graph]) -> None:
    config = EvolutionConfig(rewiring_fraction=0.5, seed=3)

    first = write_trajectory_csv(compress(cycle(8), config), tmp_path / "a.csv")
    second = write_trajectory_csv(compress(cycle(8), config), tmp_path / "b.csv")

    assert first.read_bytes() == second.read_bytes()


def test_summary_json(tmp_path: Path, cycle: Callable[[int], Graph]) -> None:
    trajectory = compress(
        cycle(6),
        EvolutionConfig(rewiring_fraction=0.34, metrics=(Metric.AVG_DISTANCE, Metric.CLUSTERING, Metric.FIEDLER)),
    )

    summary = RunSummary.from_trajectory(trajectory)
    path = write_summary_json(summary, tmp_path / "summary.json")
    payload = json.loads(path.read_text())

    for key in ("nodes_preserved", "edges_preserved", "connected", "degree_sequence_preserved"):
        assert payload[key] is True
    assert payload["method"] == "effective"
    assert payload["n_max"] == 3
    assert payload["initial_avg_distance"] == pytest.approx(1.8)
    assert payload["final_fiedler"] == pytest.approx(1.0)


def test_profile_frame_columns(cycle: Callable[[int], Graph]) -> None:
    profile = compression_profile(
        cycle(8), [0.0, 0.5], [0, 1], metrics=(Metric.AVG_DISTANCE,), scheduler="synchronous"
    )

    frame = profile_frame(profile)

    assert list(frame.columns) == ["P_rew", "seed", "avg_distance"]
    assert len(frame) == 4
    assert np.allclose(frame[frame["P_rew"] == 0.0]["avg_distance"], 16 / 7)
