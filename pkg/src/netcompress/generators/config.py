"""Serializable description of a synthetic network."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Dict, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator

from ..errors import InvalidSpecError
from ..types import GeneratorKind

if TYPE_CHECKING:  # pragma: no cover - typing aid
    from ..graph import Graph


class GeneratorSpec(BaseModel):
    """Model parameters plus the seed that makes a network reproducible."""

    kind: GeneratorKind = Field(..., description="Network model to sample from")
    n: Optional[int] = Field(None, ge=1, description="Number of nodes (ba, ws, er)")
    m: Optional[int] = Field(None, ge=1, description="Edges attached per new node (ba)")
    k: Optional[int] = Field(None, ge=2, description="Ring lattice degree, even (ws, multipop)")
    p: Optional[float] = Field(None, description="Rewiring (ws, multipop) or edge (er) probability")
    mean_degree: Optional[float] = Field(
        None, gt=0, description="Expected degree, alternative to p for er"
    )
    modules: Optional[int] = Field(None, description="Number of small-world modules (multipop)")
    module_size: Optional[int] = Field(None, ge=3, description="Nodes per module (multipop)")
    m_inter: Optional[int] = Field(
        None, ge=1, description="Edges between consecutive modules (multipop)"
    )
    seed: int = Field(default=0, ge=0, lt=2**64, description="64-bit RNG seed")

    @model_validator(mode="after")
    def validate_parameters(self) -> "GeneratorSpec":
        """Check the parameters the chosen model needs."""
        if self.kind is GeneratorKind.BA:
            self._require("n", "m")
            assert self.n is not None and self.m is not None
            if not 1 <= self.m < self.n:
                raise ValueError("ba needs 1 <= m < n")
        elif self.kind is GeneratorKind.WS:
            self._require("n", "k", "p")
            assert self.n is not None and self.k is not None
            self._check_ring(self.n, self.k)
            self._check_probability()
        elif self.kind is GeneratorKind.ER:
            self._require("n")
            if (self.p is None) == (self.mean_degree is None):
                raise ValueError("er needs exactly one of p or mean_degree")
            if self.p is not None:
                self._check_probability()
            elif self.n is not None and self.n > 1 and self.edge_probability > 1.0:
                raise ValueError("mean_degree must not exceed n - 1")
        elif self.kind is GeneratorKind.MULTIPOP:
            self._require("modules", "module_size", "k", "p", "m_inter")
            assert self.modules is not None and self.module_size is not None
            assert self.k is not None and self.m_inter is not None
            if self.modules <= 1:
                raise ValueError("multipop needs more than one module")
            self._check_ring(self.module_size, self.k)
            self._check_probability()
            if self.m_inter > self.module_size**2:
                raise ValueError("m_inter exceeds the possible edges between two modules")
        return self

    def _require(self, *names: str) -> None:
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.kind.value} needs parameters: {', '.join(missing)}")

    def _check_probability(self) -> None:
        if self.p is None or not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")

    @staticmethod
    def _check_ring(n: int, k: int) -> None:
        if k % 2:
            raise ValueError("k must be even")
        if k >= n:
            raise ValueError("k must be smaller than the number of nodes")

    # ------------------------------------------------------------------
    # Derived values
    # ------------------------------------------------------------------
    @property
    def node_count(self) -> int:
        if self.kind is GeneratorKind.MULTIPOP:
            assert self.modules is not None and self.module_size is not None
            return self.modules * self.module_size
        assert self.n is not None
        return self.n

    @property
    def edge_probability(self) -> float:
        """ER edge probability, derived from ``mean_degree`` when given."""
        if self.p is not None:
            return self.p
        assert self.n is not None and self.mean_degree is not None
        return self.mean_degree / (self.n - 1) if self.n > 1 else 0.0

    def with_seed(self, seed: int) -> "GeneratorSpec":
        return self.model_copy(update={"seed": seed})

    def label(self) -> str:
        """Short human-readable description used in logs and file metadata."""
        params = self.model_dump(exclude={"kind", "seed"}, exclude_none=True)
        rendered = ",".join(f"{key}={value}" for key, value in params.items())
        return f"{self.kind.value}({rendered})"

    @classmethod
    def from_options(cls, **options: Any) -> "GeneratorSpec":
        """Build a spec from loose keyword options, dropping unset ones."""
        cleaned: Dict[str, Any] = {key: value for key, value in options.items() if value is not None}
        try:
            return cls(**cleaned)
        except ValidationError as exc:
            raise InvalidSpecError(f"invalid generator spec: {exc.errors()[0]['msg']}", exc) from exc

    def build(self) -> "Graph":
        """Sample the network this spec describes."""
        from .base import generate

        return generate(self)
