"""Batch experiment orchestration.

A batch sweeps an n-range, executes N independent seeded runs per n
(optionally on a process pool), reduces each n-point to summary statistics,
and pairs them with the theoretical bounds.  Run seeds derive from
(base_seed, n, run_index), so results are identical for any worker count
and any execution interleaving.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from fhtlab.analysis.estimators import EstimateSummary, estimate_summary
from fhtlab.analysis.gains import GainTrace, gain_trace
from fhtlab.bounds.formulas import BoundInputs, BoundReport, bound_report
from fhtlab.core.rng import derive_seed
from fhtlab.core.types import EaConfig, Variant
from fhtlab.ea.engine import run_ea
from fhtlab.errors import CensoredRunsError, ConfigError, FhtLabError
from fhtlab.problems.catalog import ProblemSetup, resolve_setup

K_SOURCES = ("empirical", "theoretical")
FALLBACK_GENERATION_CAP = 10_000_000


@dataclass(frozen=True)
class ExperimentConfig:
    """One batch: problem family, n-range, run counts, and seeding."""

    problem: str | dict
    n_min: int
    n_max: int
    mu: int = 2
    lambda_: int = 10
    runs_per_n: int = 500
    base_seed: int = 7
    poisson_lambda: float | None = None
    max_generations: int | None = None
    k_source: str = "empirical"
    workers: int = 1

    def __post_init__(self):
        if self.n_min > self.n_max:
            raise ConfigError(f"empty n-range {self.n_min}..{self.n_max}")
        if self.runs_per_n < 2:
            raise ConfigError(f"runs_per_n must be >= 2, got {self.runs_per_n}")
        if self.mu < 1 or self.lambda_ < 1:
            raise ConfigError("mu and lambda must be >= 1")
        if self.k_source not in K_SOURCES:
            raise ConfigError(f"k_source must be one of {K_SOURCES}, got {self.k_source!r}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")

    def ns(self) -> range:
        return range(self.n_min, self.n_max + 1)


@dataclass(frozen=True)
class SummaryRow:
    """One n-point of the per-n summary table."""

    n: int
    t0_hat: float
    t_max: int
    k_hat: float
    alpha_hat: int | None
    avg_bound: float
    worst_bound: float
    klow_theoretical: float
    runs: int


@dataclass(frozen=True)
class NPointResult:
    n: int
    setup: ProblemSetup
    summary: EstimateSummary
    bounds: BoundReport
    row: SummaryRow
    traces: tuple[GainTrace, ...]


@dataclass(frozen=True)
class BatchResult:
    config: ExperimentConfig
    points: tuple[NPointResult, ...]

    @property
    def rows(self) -> tuple[SummaryRow, ...]:
        return tuple(p.row for p in self.points)


def bound_inputs(setup: ProblemSetup, mu: int, lambda_: int,
                 poisson_lambda: float | None = None) -> BoundInputs:
    """Assemble the bound-evaluator inputs for one instance setup."""
    f0 = setup.initial_fitness()
    maximize = setup.instance.maximize
    y0 = setup.optimum_fitness - f0 if maximize else f0
    kd = setup.knapsack_derived
    md = setup.maxsat_derived
    return BoundInputs(
        n=setup.n,
        mu=mu,
        lambda_=lambda_,
        y0=float(y0),
        r0=0.0,
        alpha=float(setup.space.alpha),
        beta=float(setup.space.beta),
        poisson_lambda=poisson_lambda,
        p1=kd.p1 if kd else None,
        p2=kd.p2 if kd else None,
        d_min=kd.d_min if kd else None,
        v_min=kd.v_min if kd else None,
        clause_count=setup.instance.clause_count if setup.problem == "maxsat" else None,
        optimum_count=md.optimum_count if md else None,
    )


def default_generation_cap(setup: ProblemSetup, mu: int, lambda_: int,
                           poisson_lambda: float | None = None) -> int:
    """100x the theoretical worst-case bound, so censoring is unreachable
    in practice; falls back to a large constant when no bound is computable."""
    try:
        rep = bound_report(setup.problem, bound_inputs(setup, mu, lambda_, poisson_lambda))
        return max(1000, math.ceil(100.0 * rep.worst_bound))
    except FhtLabError:
        return FALLBACK_GENERATION_CAP


def _run_config(setup: ProblemSetup, config: ExperimentConfig, cap: int, seed: int) -> EaConfig:
    return EaConfig(
        variant=setup.variant,
        mu=config.mu,
        lambda_=config.lambda_,
        seed=seed,
        max_generations=cap,
        poisson_lambda=config.poisson_lambda if setup.variant is Variant.TSP3 else None,
        initial_population=setup.initial_population(config.mu),
    )


def _run_chunk(args) -> list[tuple[int, int | None, list[int]]]:
    """Execute a block of runs for one n; returns (run_index, fht, potentials)."""
    config, n, cap, indices = args
    setup = resolve_setup(config.problem, n)
    results = []
    for i in indices:
        cfg = _run_config(setup, config, cap, derive_seed(config.base_seed, n, i))
        outcome = run_ea(setup.instance, cfg, optimum_fitness=setup.optimum_fitness)
        if outcome.fht is None:
            results.append((i, None, []))
        else:
            trace = gain_trace(outcome, setup.optimum_fitness, setup.instance.maximize)
            results.append((i, outcome.fht, trace.potentials.tolist()))
    return results


def _trace_from_potentials(potentials: list[int]) -> GainTrace:
    pot = np.asarray(potentials, dtype=np.int64)
    gains = pot[:-1] - pot[1:]
    pot.setflags(write=False)
    gains.setflags(write=False)
    return GainTrace(potentials=pot, gains=gains, fht=len(potentials) - 1)


def run_batch(config: ExperimentConfig, pool: ProcessPoolExecutor | None = None) -> BatchResult:
    """Run the whole sweep; any censored run invalidates the batch.

    Results are reduced in ascending (n, run_index) order regardless of
    execution interleaving, and data files derived from them carry no
    timestamps, so equal configs persist byte-identical results.
    """
    own_pool = None
    if pool is None and config.workers > 1:
        own_pool = pool = ProcessPoolExecutor(max_workers=config.workers)
    try:
        setups = {}
        caps = {}
        for n in config.ns():
            setup = resolve_setup(config.problem, n)
            if setup.variant is Variant.TSP3 and config.poisson_lambda is None:
                raise ConfigError("TSP batches need poisson_lambda")
            setups[n] = setup
            caps[n] = config.max_generations or default_generation_cap(
                setup, config.mu, config.lambda_, config.poisson_lambda)

        indices = list(range(config.runs_per_n))
        by_n: dict[int, list] = {}
        if pool is None:
            for n in config.ns():
                by_n[n] = _run_chunk((config, n, caps[n], indices))
        else:
            # one flat task list across runs and n values; collection order is
            # irrelevant because reduction sorts by (n, run_index)
            step = max(1, math.ceil(len(indices) / (4 * config.workers)))
            chunks = [(config, n, caps[n], indices[i:i + step])
                      for n in config.ns() for i in range(0, len(indices), step)]
            for chunk, part in zip(chunks, pool.map(_run_chunk, chunks)):
                by_n.setdefault(chunk[1], []).extend(part)

        points = []
        for n in config.ns():
            setup = setups[n]
            raw = sorted(by_n[n], key=lambda item: item[0])

            censored = [(n, i, derive_seed(config.base_seed, n, i))
                        for i, fht, _ in raw if fht is None]
            if censored:
                raise CensoredRunsError(
                    f"{len(censored)} of {config.runs_per_n} runs at n={n} were censored at "
                    f"max_generations={caps[n]}; first (n, run_index, seed): {censored[0]}",
                    censored=censored)

            traces = tuple(_trace_from_potentials(pot) for _, _, pot in raw)
            summary = estimate_summary(traces)
            inputs = bound_inputs(setup, config.mu, config.lambda_, config.poisson_lambda)
            k = summary.k_hat if config.k_source == "empirical" else None
            bounds = bound_report(setup.problem, inputs, k=k)
            row = SummaryRow(
                n=n,
                t0_hat=summary.t0_hat,
                t_max=summary.t_max,
                k_hat=summary.k_hat,
                alpha_hat=summary.alpha_hat,
                avg_bound=bounds.avg_bound,
                worst_bound=bounds.worst_bound,
                klow_theoretical=bounds.klow_theoretical,
                runs=summary.run_count,
            )
            points.append(NPointResult(n=n, setup=setup, summary=summary, bounds=bounds,
                                       row=row, traces=traces))
        return BatchResult(config=config, points=tuple(points))
    finally:
        if own_pool is not None:
            own_pool.shutdown()
