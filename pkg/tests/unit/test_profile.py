import numpy as np
import pytest

from netcompress.errors import InvalidConfigError
from netcompress.evolution import compression_profile, graph_metrics
from netcompress.evolution.profile import run_profile_cell
from netcompress.generators import GeneratorSpec
from netcompress.types import GeneratorKind, Method, Metric

pytestmark = pytest.mark.unit

SPEC = GeneratorSpec(kind=GeneratorKind.WS, n=24, k=4, p=0.3)
METRICS = (Metric.AVG_DISTANCE, Metric.CLUSTERING)


def test_profile_shape_and_aggregates() -> None:
    profile = compression_profile(SPEC, [0.0, 0.2], [0, 1, 2], metrics=METRICS, scheduler="synchronous")

    assert profile.sizes == {"fraction": 2, "seed": 3}
    assert profile["fraction"].values.tolist() == [0.0, 0.2]
    assert profile.attrs["method"] == "effective"
    values = profile["avg_distance"].values
    assert np.allclose(profile["mean_avg_distance"].values, values.mean(axis=1))
    assert np.allclose(profile["std_clustering"].values, profile["clustering"].values.std(axis=1))


def test_fraction_zero_measures_each_generated_network() -> None:
    profile = compression_profile(SPEC, [0.0], [4, 5], metrics=METRICS, scheduler="synchronous")

    for seed in (4, 5):
        expected = graph_metrics(SPEC.with_seed(seed).build(), METRICS)
        assert profile["avg_distance"].sel(fraction=0.0, seed=seed).item() == pytest.approx(
            expected["avg_distance"]
        )


def test_schedulers_agree() -> None:
    kwargs = dict(metrics=METRICS, method=Method.RANDOM)
    threaded = compression_profile(SPEC, [0.1, 0.2], [0, 1], scheduler="threads", **kwargs)
    serial = compression_profile(SPEC, [0.1, 0.2], [0, 1], scheduler="synchronous", **kwargs)

    assert np.array_equal(threaded["avg_distance"].values, serial["avg_distance"].values)
    assert threaded.attrs["method"] == "random"


def test_single_cell_matches_direct_run() -> None:
    cell = run_profile_cell(SPEC, 0.2, 1, Method.EFFECTIVE, METRICS)

    assert set(cell) == {"avg_distance", "clustering"}
    assert cell["avg_distance"] > 0


@pytest.mark.parametrize(
    "fractions, seeds",
    [([], [0]), ([0.1], []), ([0.2, 0.1], [0])],
)
def test_profile_rejects_bad_grids(fractions: list, seeds: list) -> None:
    with pytest.raises(InvalidConfigError):
        compression_profile(SPEC, fractions, seeds)
