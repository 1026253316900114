"""Experiment configuration: the model behind the CLI and its flat config file."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from .errors import InvalidConfigError, ParseError
from .generators.config import GeneratorSpec
from .types import Method, Metric

__all__ = [
    "METHOD_CHOICES",
    "ExperimentConfig",
    "load_config_file",
]

logger = logging.getLogger(__name__)

METHOD_CHOICES = ("effective", "random", "both")


class ExperimentConfig(BaseModel):
    """Everything one CLI experiment needs."""

    input: Union[GeneratorSpec, Path] = Field(..., description="Generator spec or edge-list path")
    method: str = Field(default="effective", description="effective, random or both")
    fractions: List[float] = Field(..., min_length=1, description="Evolution fractions P_rew")
    seeds: List[int] = Field(default_factory=lambda: [0], min_length=1)
    metrics: Tuple[Metric, ...] = Field(default=(Metric.AVG_DISTANCE, Metric.CLUSTERING))
    constraint_file: Optional[Path] = Field(None, description="Node attribute file")
    output: Path = Field(default=Path("."), description="Output directory")
    largest_component: bool = Field(default=False, description="Keep only the giant component")

    @field_validator("method")
    @classmethod
    def validate_method(cls, value: str) -> str:
        if value not in METHOD_CHOICES:
            raise ValueError(f"method must be one of {', '.join(METHOD_CHOICES)}")
        return value

    @field_validator("fractions")
    @classmethod
    def validate_fractions(cls, value: List[float]) -> List[float]:
        if any(not 0.0 <= f <= 1.0 for f in value):
            raise ValueError("fractions must lie in [0, 1]")
        return value

    @model_validator(mode="after")
    def validate_seeds(self) -> "ExperimentConfig":
        if any(s < 0 for s in self.seeds):
            raise ValueError("seeds must be non-negative")
        return self

    def methods(self) -> List[Method]:
        if self.method == "both":
            return [Method.EFFECTIVE, Method.RANDOM]
        return [Method(self.method)]

    @classmethod
    def from_options(cls, **options: object) -> "ExperimentConfig":
        try:
            return cls(**{key: value for key, value in options.items() if value is not None})
        except ValidationError as exc:
            raise InvalidConfigError(f"invalid experiment config: {exc.errors()[0]['msg']}", exc) from exc


def load_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """Read ``key = value`` lines; keys use CLI flag names with dashes or underscores."""

    values: Dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {raw.strip()!r}", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ParseError("empty key", line=lineno)
        values[key.lstrip("-").replace("-", "_")] = value
    logger.debug(f"Loaded {len(values)} settings from {path}")
    return values
