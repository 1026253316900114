"""Seeded synthetic network models."""

from .base import NetworkGenerator, generate, get_generator, make_rng, register_generator
from .config import GeneratorSpec
from .models import (
    BarabasiAlbertGenerator,
    ErdosRenyiGenerator,
    MultiPopulationGenerator,
    WattsStrogatzGenerator,
    ba_network,
    er_network,
    multi_population,
    ws_network,
)

__all__ = [
    "NetworkGenerator",
    "generate",
    "get_generator",
    "make_rng",
    "register_generator",
    "GeneratorSpec",
    "BarabasiAlbertGenerator",
    "ErdosRenyiGenerator",
    "MultiPopulationGenerator",
    "WattsStrogatzGenerator",
    "ba_network",
    "er_network",
    "multi_population",
    "ws_network",
]
