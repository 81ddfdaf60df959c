"""Schemas for solver results and command reports."""
from typing import Literal, Optional

from pydantic import BaseModel, Field

Provenance = Literal["initial-sample", "counterexample"]
Termination = Literal["fixed-point", "max-rounds", "single-pass"]


class DatasetEntry(BaseModel):
    chi: list[float]
    provenance: Provenance


class RoundLog(BaseModel):
    """One outer round of the counterexample loop."""

    index: int
    mean_cost: float = Field(..., description="Mean J over the dataset after the theta update")
    chi_star: list[float]
    cost_at_chi_star: float
    exact_robustness: Optional[float] = Field(None, description="Exact robustness at (theta*, chi*)")
    winning_start: str = Field(..., description="Which ascent start produced chi*")
    min_iterations: int
    max_iterations: int
    line_search_warning: bool = False
    wall_time: Optional[float] = Field(None, description="Seconds; omitted from reproducible outputs")


class SolveResultModel(BaseModel):
    """Serialized result of a planning run."""

    method: str
    seed: int
    theta: list[float]
    dataset: list[DatasetEntry]
    rounds: list[RoundLog]
    termination: Termination
    appended_counterexamples: int
    timings: dict[str, float] = Field(default_factory=dict)


class FalsifyReport(BaseModel):
    seed: int
    restarts: int
    chi: list[float]
    cost: float
    exact_robustness: float
    satisfied: bool
    winning_restart: int


class EvaluateReport(BaseModel):
    chi: list[float]
    exact_robustness: float
    smooth_robustness: float
    smoothing_k: float
    impulse: float
    cost: float
    satisfied: bool


class BenchmarkRecord(BaseModel):
    seed: int
    method: str
    worst_robustness: Optional[float] = None
    impulse: Optional[float] = None
    wall_time: Optional[float] = None
    rounds: Optional[int] = None
    dataset_size: Optional[int] = None
    success: bool = False
    error: Optional[str] = None


class BenchmarkAggregate(BaseModel):
    method: str
    records: int
    completed: int
    success_rate: float = Field(..., ge=0, le=1)
    median_time: Optional[float] = None
    median_dataset_size: Optional[float] = None


class BenchmarkReport(BaseModel):
    config: str
    seeds: list[int]
    methods: list[str]
    records: list[BenchmarkRecord]
    aggregates: list[BenchmarkAggregate]
