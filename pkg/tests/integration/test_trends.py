"""End-to-end trends of the compression experiments at desk scale."""

import math
import os
import time
from typing import Sequence

import numpy as np
import pytest
import xarray as xr

from netcompress.evolution import EvolutionConfig, compress, compression_profile
from netcompress.generators import GeneratorSpec
from netcompress.graph import average_distance, largest_component
from netcompress.io import read_edge_list
from netcompress.spectral import fit_log, fit_loglog
from netcompress.types import GeneratorKind, Method, Metric

SEEDS = [0, 1, 2, 3, 4]
SCALING_SEEDS = list(range(10))
SIZES = [100, 200, 400, 800]
WS = GeneratorSpec(kind=GeneratorKind.WS, n=100, k=4, p=0.5)
BA = GeneratorSpec(kind=GeneratorKind.BA, n=100, m=4)
FIVE_POPULATIONS = GeneratorSpec(kind=GeneratorKind.MULTIPOP, modules=5, module_size=20, k=4, p=0.5, m_inter=2)

# edge list of a connected real network with at least 100 nodes
REAL_EDGE_LIST = os.environ.get("NETCOMPRESS_REAL_EDGE_LIST")


def final_distances(source, method: Method, fraction: float = 0.2) -> np.ndarray:
    profile = compression_profile(source, [fraction], SEEDS, method=method, metrics=(Metric.AVG_DISTANCE,))
    return profile["avg_distance"].sel(fraction=fraction).values


def standard_error(values: np.ndarray) -> float:
    return float(np.std(values, ddof=1) / math.sqrt(len(values)))


def assert_effective_beats_random(source) -> None:
    effective = final_distances(source, Method.EFFECTIVE)
    random = final_distances(source, Method.RANDOM)
    error = math.hypot(standard_error(effective), standard_error(random))

    assert effective.mean() <= random.mean() - error, (
        f"effective {effective.mean():.4f} vs random {random.mean():.4f}, standard error {error:.4f}"
    )


def count_inversions(profile: xr.Dataset, metric: Metric, increasing: bool) -> int:
    """Steps against the expected direction; each one must stay within one standard deviation."""
    means = profile[f"mean_{metric.value}"].values
    stds = profile[f"std_{metric.value}"].values
    inversions = 0
    for i in range(1, len(means)):
        change = means[i] - means[i - 1]
        if (change < 0) if increasing else (change > 0):
            inversions += 1
            assert abs(change) <= max(stds[i], stds[i - 1]), f"{metric.value} moved by {change} at step {i}"
    return inversions


def mean_distance(kind: GeneratorKind, n: int, seeds: Sequence[int]) -> float:
    if kind is GeneratorKind.WS:
        specs = [GeneratorSpec(kind=kind, n=n, k=4, p=0.5, seed=s) for s in seeds]
    else:
        specs = [GeneratorSpec(kind=kind, n=n, m=4, seed=s) for s in seeds]
    return float(np.mean([average_distance(spec.build()) for spec in specs]))


@pytest.mark.integration
@pytest.mark.slow
@pytest.mark.timeout(900)
class TestCompressionTrends:
    def test_scale_free_compression_against_random_baseline(self):
        profile_effective = compression_profile(BA, [0.0, 0.2], SEEDS, metrics=(Metric.AVG_DISTANCE,))
        profile_random = compression_profile(
            BA, [0.0, 0.2], SEEDS, method=Method.RANDOM, metrics=(Metric.AVG_DISTANCE,)
        )
        initial, effective = profile_effective["mean_avg_distance"].values
        random_initial, random = profile_random["mean_avg_distance"].values

        assert random_initial == pytest.approx(initial)
        assert effective <= 0.98 * initial
        assert random >= 0.995 * initial

    def test_effective_beats_random_on_small_worlds(self):
        assert_effective_beats_random(WS)

    def test_effective_beats_random_on_five_populations(self):
        assert_effective_beats_random(FIVE_POPULATIONS)

    @pytest.mark.skipif(REAL_EDGE_LIST is None, reason="set NETCOMPRESS_REAL_EDGE_LIST to a real edge list")
    def test_effective_beats_random_on_a_real_network(self):
        graph, _ = largest_component(read_edge_list(REAL_EDGE_LIST))
        assert graph.node_count >= 100

        assert_effective_beats_random(graph)

    def test_compression_plateaus_after_thirty_percent(self):
        profile = compression_profile(WS, [0.3, 0.4], SEEDS, metrics=(Metric.AVG_DISTANCE,))
        at_30, at_40 = profile["mean_avg_distance"].values

        assert abs(at_40 - at_30) / at_30 <= 0.03

    def test_clustering_falls_and_connectivity_rises(self):
        profile = compression_profile(
            WS, [0.0, 0.1, 0.2, 0.3], SEEDS, metrics=(Metric.CLUSTERING, Metric.FIEDLER)
        )

        assert count_inversions(profile, Metric.CLUSTERING, increasing=False) <= 1
        assert count_inversions(profile, Metric.FIEDLER, increasing=True) <= 1

    def test_profiles_are_reproducible(self):
        first = compression_profile(WS, [0.2], SEEDS[:3], scheduler="threads")
        second = compression_profile(WS, [0.2], SEEDS[:3], scheduler="synchronous")

        assert first.equals(second)


@pytest.mark.integration
@pytest.mark.slow
@pytest.mark.timeout(900)
class TestScaling:
    def test_distance_scaling_fits(self):
        ws = [mean_distance(GeneratorKind.WS, n, SCALING_SEEDS) for n in SIZES]
        ba = [mean_distance(GeneratorKind.BA, n, SCALING_SEEDS) for n in SIZES]

        ws_fit = fit_log(SIZES, ws)
        ba_fit = fit_loglog(SIZES, ba)

        assert ws_fit.slope > 0 and ws_fit.r_squared >= 0.95
        assert ba_fit.slope > 0 and ba_fit.r_squared >= 0.90
        assert all(b < w for b, w in zip(ba, ws))

    def test_step_cost_grows_polynomially(self):
        sizes = [50, 100, 200]
        per_step = []
        for n in sizes:
            g = GeneratorSpec(kind=GeneratorKind.WS, n=n, k=4, p=0.5, seed=0).build()
            config = EvolutionConfig(rewiring_fraction=0.1, record_metrics_every=0, metrics=(Metric.AVG_DISTANCE,))
            timings = []
            for _ in range(2):
                start = time.perf_counter()
                trajectory = compress(g, config)
                timings.append((time.perf_counter() - start) / len(trajectory.steps))
            per_step.append(min(timings))

        slope = np.polyfit(np.log(sizes), np.log(per_step), 1)[0]

        assert slope <= 3.5
