"""Generator registry, seeded RNG streams and the connectivity retry loop."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from typing import ClassVar, Dict, Type

import numpy as np

from ..errors import ConnectivityRetriesExhaustedError, InvalidSpecError
from ..graph import Graph, is_connected
from ..types import GeneratorKind
from .config import GeneratorSpec

__all__ = [
    "NetworkGenerator",
    "register_generator",
    "get_generator",
    "generate",
    "make_rng",
    "MAX_CONNECTIVITY_ATTEMPTS",
]

logger = logging.getLogger(__name__)

MAX_CONNECTIVITY_ATTEMPTS = 1000


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Philox-4x64 generator keyed by ``seed`` and extra stream words."""

    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, *stream])))


class NetworkGenerator(ABC):
    """Abstract base class for seeded network models."""

    kind: ClassVar[GeneratorKind]
    max_attempts: ClassVar[int] = 1

    def __init__(self, spec: GeneratorSpec) -> None:
        if spec.kind is not self.kind:
            raise InvalidSpecError(f"{type(self).__name__} cannot build {spec.kind.value} networks")
        self.spec = spec

    def generate(self) -> Graph:
        """Sample until the network is connected.

        Attempt ``i`` draws from stream ``(seed, i)`` so every retry is
        reproducible on its own.
        """
        for attempt in range(self.max_attempts):
            graph = self.sample(make_rng(self.spec.seed, attempt))
            if is_connected(graph):
                if attempt:
                    logger.warning(
                        f"{self.spec.label()} seed={self.spec.seed}: connected after {attempt + 1} attempts"
                    )
                return graph
        raise ConnectivityRetriesExhaustedError(
            f"{self.spec.label()} seed={self.spec.seed}: no connected sample in {self.max_attempts} attempts"
        )

    @abstractmethod
    def sample(self, rng: np.random.Generator) -> Graph:
        """Draw one network from the model."""


# ----------------------------------------------------------------------
# Generator registry utilities
# ----------------------------------------------------------------------

_GENERATOR_REGISTRY: Dict[GeneratorKind, Type[NetworkGenerator]] = {}


def register_generator(kind: GeneratorKind):
    """Decorator for registering network models."""

    def decorator(cls: Type[NetworkGenerator]) -> Type[NetworkGenerator]:
        _GENERATOR_REGISTRY[kind] = cls
        cls.kind = kind
        return cls

    return decorator


def get_generator(spec: GeneratorSpec) -> NetworkGenerator:
    """Instantiate the registered model for ``spec``."""

    try:
        cls = _GENERATOR_REGISTRY[spec.kind]
    except KeyError as exc:
        raise InvalidSpecError(f"No generator registered for kind {spec.kind.value}") from exc
    return cls(spec)


def generate(spec: GeneratorSpec) -> Graph:
    """Build the network described by ``spec``."""

    # the concrete models register themselves on import
    from . import models  # noqa: F401

    graph = get_generator(spec).generate()
    logger.debug(f"Generated {spec.label()} seed={spec.seed}: {graph!r}")
    return graph
