import math

import pytest

from netcompress.evolution import EvolutionConfig, RandomStrategy, get_strategy, random_rewire
from netcompress.generators import GeneratorSpec
from netcompress.graph import Graph, degree_sequence, is_connected
from netcompress.types import GeneratorKind, Method, StepKind

pytestmark = pytest.mark.unit


def ba_graph(seed: int = 0) -> Graph:
    return GeneratorSpec(kind=GeneratorKind.BA, n=40, m=2, seed=seed).build()


def test_random_strategy_is_registered() -> None:
    assert isinstance(get_strategy(Method.RANDOM), RandomStrategy)


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_random_rewire_conserves_structure(seed: int) -> None:
    g = ba_graph(seed)

    trajectory = random_rewire(g, EvolutionConfig(rewiring_fraction=0.3, seed=seed))

    final = trajectory.final_graph
    assert trajectory.method is Method.RANDOM
    assert final.node_count == g.node_count
    assert final.edge_count == g.edge_count
    assert degree_sequence(final) == degree_sequence(g)
    assert is_connected(final)
    assert trajectory.steps[0].kind is StepKind.INITIAL
    assert trajectory.steps[-1].kind is StepKind.CLOSING


def test_random_rewire_is_reproducible_per_seed() -> None:
    g = ba_graph()

    first = random_rewire(g, EvolutionConfig(rewiring_fraction=0.2, seed=5))
    again = random_rewire(g, EvolutionConfig(rewiring_fraction=0.2, seed=5))
    other = random_rewire(g, EvolutionConfig(rewiring_fraction=0.2, seed=6))

    assert first.final_graph.fingerprint() == again.final_graph.fingerprint()
    assert first.final_graph.fingerprint() != other.final_graph.fingerprint()


def test_random_rewire_still_records_scores() -> None:
    trajectory = random_rewire(ba_graph(1), EvolutionConfig(rewiring_fraction=0.2, seed=1))

    for step in trajectory.steps:
        assert step.psi_cut >= 0.0
        assert step.psi_add >= 0.0
        # a bridge is the only way to get an infinite cut score
        assert math.isinf(step.psi_cut) == step.disconnected_after_cut
