"""
Pydantic models for Monte Carlo inputs and results.
"""

from enum import Enum
from typing import Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from seglat.lattice.geometry import Boundary
from seglat.models.coloring import ModelTag

_NEEDS_LAMBDA = {ModelTag.INDEPENDENT, ModelTag.MIXED, ModelTag.MIXED_DERIVED}


class ModelSpec(BaseModel):
    """Which model to sample and at which parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    model: ModelTag = Field(..., description="Colouring rule")
    d: int = Field(2, ge=2, description="Dimension")
    p: float = Field(..., gt=0.0, le=1.0, description="Site density")
    lam: Optional[float] = Field(None, ge=0.0, le=1.0, description="Segment colour probability")
    boundary: Boundary = Field(Boundary.TORUS, description="Window boundary")

    @model_validator(mode="after")
    def check_lambda(self) -> "ModelSpec":
        if self.model in _NEEDS_LAMBDA and self.lam is None:
            raise ValueError(f"Model {self.model.value} needs lambda")
        if self.model not in _NEEDS_LAMBDA and self.lam is not None:
            raise ValueError(f"Model {self.model.value} takes no lambda")
        return self

    def with_value(self, parameter: str, value: float) -> "ModelSpec":
        """Copy with p or lambda replaced."""
        field = "lam" if parameter in ("lambda", "lam") else parameter
        return type(self).model_validate({**self.model_dump(), field: float(value)})


class LocalEvent(str, Enum):
    """Translation-invariant local events estimated on the torus."""

    EDGE_BLUE = "edge_blue"
    VERTEX_BLUE = "vertex_blue"
    PAIR_COLLINEAR = "pair_collinear"
    PAIR_PERP = "pair_perp"
    PAIR_COLLINEAR_DISTANCE = "pair_collinear_distance"


class LocalEventSpec(BaseModel):
    """A local event; `k` is the offset for pair_collinear_distance."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: LocalEvent
    k: Optional[int] = Field(None, ge=1, description="Sites between the two edges")

    @model_validator(mode="after")
    def check_offset(self) -> "LocalEventSpec":
        if (self.kind == LocalEvent.PAIR_COLLINEAR_DISTANCE) != (self.k is not None):
            raise ValueError("k is required by pair_collinear_distance and only by it")
        return self

    def __str__(self) -> str:
        return f"{self.kind.value}({self.k})" if self.k is not None else self.kind.value


class EstimateWithCI(BaseModel):
    """Replicate mean with its standard error."""

    model_config = ConfigDict(frozen=True)

    mean: float
    stderr: float = Field(..., ge=0.0)
    replicates: int = Field(..., ge=2)
    master_seed: int = Field(..., ge=0)
    per_replicate_values: Optional[List[float]] = None
    correlation: Optional[float] = Field(None, description="Empirical correlation for distance pairs")
    correlation_stderr: Optional[float] = None

    @classmethod
    def from_values(
        cls, values: Sequence[float], master_seed: int, keep_values: bool = True, **extra: float
    ) -> "EstimateWithCI":
        array = np.asarray(values, dtype=float)
        return cls(
            mean=float(array.mean()),
            stderr=float(array.std(ddof=1) / np.sqrt(array.size)),
            replicates=int(array.size),
            master_seed=master_seed,
            per_replicate_values=[float(v) for v in array] if keep_values else None,
            **extra,
        )

    def within(self, target: float, sigmas: float, floor: float = 1e-12) -> bool:
        """|mean - target| <= sigmas * stderr (floor guards zero-variance runs)."""
        return abs(self.mean - float(target)) <= sigmas * self.stderr + floor


class SweepRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: ModelTag
    d: int
    L: int
    boundary: Boundary = Boundary.TORUS
    p: float
    lam: Optional[float]
    wrap_prob: EstimateWithCI
    largest_fraction: EstimateWithCI


class CurvePoint(BaseModel):
    """lambda-bar_c estimate at one p; pinned means no search was run."""

    model_config = ConfigDict(frozen=True)

    p: float
    lambda_c: float
    ci_halfwidth: float = Field(..., ge=0.0)
    pinned: bool = False


class SweepResult(BaseModel):
    """Grid of wrap probabilities, ordered by (p, lambda)."""

    rows: List[SweepRow] = Field(default_factory=list)
    curve: List[CurvePoint] = Field(default_factory=list)

    @field_validator("rows")
    @classmethod
    def check_order(cls, rows: List[SweepRow]) -> List[SweepRow]:
        keys = [(row.L, row.p, -1.0 if row.lam is None else row.lam) for row in rows]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("Sweep rows must be strictly increasing in (L, p, lambda)")
        return rows

    def grid(self) -> Dict[tuple, float]:
        return {(row.p, row.lam): row.wrap_prob.mean for row in self.rows}


class CriticalEstimate(BaseModel):
    """Crossing point of the wrap probability with `crossing_target`."""

    model_config = ConfigDict(frozen=True)

    parameter: str
    estimate: float
    ci_halfwidth: float = Field(..., gt=0.0)
    L_list: List[int]
    crossing_target: float = Field(..., gt=0.0, lt=1.0)
    per_L: Dict[int, float] = Field(default_factory=dict)
    bracket: tuple[float, float]

    @model_validator(mode="after")
    def check_bracket(self) -> "CriticalEstimate":
        low, high = self.bracket
        if not low <= self.estimate <= high:
            raise ValueError("Estimate outside the scanned bracket")
        return self


class BlockEventEstimates(BaseModel):
    """Empirical P(A_{e1}), P(C_{e1}) and P(A(o) and C(o))."""

    model_config = ConfigDict(frozen=True)

    a_e1: EstimateWithCI
    c_e1: Optional[EstimateWithCI] = None
    good: Optional[EstimateWithCI] = None


class EmbeddingReport(BaseModel):
    """Plane slices of three-dimensional samples against two-dimensional formulas."""

    model_config = ConfigDict(frozen=True)

    independent_vertex: EstimateWithCI
    independent_target: float
    one_choice_edge: EstimateWithCI
    one_choice_target: float
    lower_dimensional_target: float
