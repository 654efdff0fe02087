"""Request/response models for the HTTP service.

Problems are addressed either by catalog name ("paper-knapsack",
"paper-maxsat", "paper-tsp") or by an inline instance spec that mirrors the
JSON instance-file schema.  The ``lambda`` wire field maps to ``lambda_``
in Python.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class InstanceSpec(BaseModel):
    """Inline instance definition (same schema as instance files)."""

    problem: Literal["knapsack", "maxsat", "tsp"]
    n: int
    values: list[int] | None = None
    weights: list[int] | None = None
    capacity: int | None = None
    clauses: list[list[int]] | None = None
    initial_population: list[list[int]] | str | None = None

    def to_spec(self) -> dict:
        return self.model_dump(exclude_none=True)


ProblemRef = str | InstanceSpec


def problem_arg(problem: ProblemRef) -> str | dict:
    return problem.to_spec() if isinstance(problem, InstanceSpec) else problem


class DeriveRequest(BaseModel):
    problem: ProblemRef
    n: int | None = None
    enumeration_cap: int = 24


class DeriveResponse(BaseModel):
    problem: str
    n: int
    optimum_fitness: int
    values: list[int]
    alpha: int
    beta: int
    q: int | None = None
    feasible_count: int | None = None
    p1: float | None = None
    p2: float | None = None
    d_min: int | None = None
    v_min: int | None = None
    optimum_count: int | None = None
    clause_count: int | None = None


class BoundsRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    problem: ProblemRef
    n: int | None = None
    mu: int = 2
    lambda_: int = Field(10, alias="lambda")
    poisson_lambda: float | None = None
    k: float | None = None  # empirical k-hat; None selects the theoretical klow


class BoundsResponse(BaseModel):
    problem: str
    n: int
    y0: float
    alpha: float
    beta: float
    k_used: float
    k_source: str
    avg_bound: float
    klow_theoretical: float
    worst_bound: float
    formula_ids: list[str]


class TraceRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    problem: ProblemRef
    n: int | None = None
    mu: int = 2
    lambda_: int = Field(10, alias="lambda")
    seed: int = 0
    poisson_lambda: float | None = None
    max_generations: int | None = None


class TraceEvent(BaseModel):
    t: int
    best_fitness: int
    best_count: int
    potential: int
    gain: int | None
    hit_optimum: bool


class TraceResponse(BaseModel):
    problem: str
    n: int
    seed: int
    fht: int
    evaluations: int
    events: list[TraceEvent]


class ExperimentRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    problem: ProblemRef
    n_min: int
    n_max: int
    mu: int = 2
    lambda_: int = Field(10, alias="lambda")
    runs: int = 500
    seed: int = 7
    poisson_lambda: float | None = None
    max_generations: int | None = None
    k_source: Literal["empirical", "theoretical"] = "empirical"
    workers: int = 1
    out_dir: str | None = None
    include_traces: bool = False


class SummaryRowModel(BaseModel):
    n: int
    t0_hat: float
    t_max: int
    k_hat: float
    alpha_hat: int | None
    avg_bound: float
    worst_bound: float
    klow_theoretical: float
    runs: int


class RunResponse(BaseModel):
    rows: list[SummaryRowModel]
    files: list[str]


class VerifyRequest(ExperimentRequest):
    r_min: float = 0.91


class PairCheckModel(BaseModel):
    first: str
    second: str
    correlation: float
    ordering_holds_per_n: dict[str, bool]
    verdict: str


class VerifyResponse(BaseModel):
    config: dict
    rows: list[SummaryRowModel]
    correlations: dict[str, float]
    orderings: dict[str, PairCheckModel]
    verdicts: dict[str, str]
    thresholds: dict[str, float]
    files: list[str]
