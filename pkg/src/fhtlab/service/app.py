"""FastAPI service exposing the lab: derivations, bounds, traces, batches.

Long-running endpoints (/run, /verify) execute the batch synchronously and
write result files server-side when an output directory is given; the CLI
runs the app in-process by default, so "server-side" is then simply the
local filesystem.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

import fhtlab
from fhtlab.analysis.gains import gain_trace
from fhtlab.core.types import EaConfig, Variant
from fhtlab.ea.engine import run_ea
from fhtlab.errors import CensoredRunsError, FhtLabError
from fhtlab.harness.consistency import consistency_check
from fhtlab.harness.experiment import (
    ExperimentConfig,
    bound_inputs,
    default_generation_cap,
    run_batch,
)
from fhtlab.bounds.formulas import bound_report
from fhtlab.harness.export import export_results, report_document
from fhtlab.problems.catalog import resolve_setup
from fhtlab.problems.knapsack import KnapsackInstance, knapsack_derive
from fhtlab.problems.maxsat import MaxSatInstance, maxsat_derive
from fhtlab.problems.value_space import fitness_value_space
from fhtlab.service import schemas as s


def _experiment_config(req: s.ExperimentRequest) -> ExperimentConfig:
    return ExperimentConfig(
        problem=s.problem_arg(req.problem),
        n_min=req.n_min,
        n_max=req.n_max,
        mu=req.mu,
        lambda_=req.lambda_,
        runs_per_n=req.runs,
        base_seed=req.seed,
        poisson_lambda=req.poisson_lambda,
        max_generations=req.max_generations,
        k_source=req.k_source,
        workers=req.workers,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="fhtlab", version=fhtlab.__version__)

    @app.exception_handler(CensoredRunsError)
    async def _censored(request: Request, exc: CensoredRunsError):
        return JSONResponse(
            status_code=422,
            content={"error": {"kind": "censored-runs", "detail": str(exc),
                               "censored": [list(c) for c in exc.censored]}},
        )

    @app.exception_handler(FhtLabError)
    async def _config(request: Request, exc: FhtLabError):
        return JSONResponse(
            status_code=400,
            content={"error": {"kind": type(exc).__name__, "detail": str(exc)}},
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": fhtlab.__version__}

    @app.post("/derive", response_model=s.DeriveResponse)
    def derive(req: s.DeriveRequest) -> s.DeriveResponse:
        setup = resolve_setup(s.problem_arg(req.problem), req.n, cap=req.enumeration_cap)
        inst = setup.instance
        space = fitness_value_space(inst, cap=req.enumeration_cap)
        resp = s.DeriveResponse(
            problem=setup.problem,
            n=setup.n,
            optimum_fitness=setup.optimum_fitness,
            values=list(space.values),
            alpha=space.alpha,
            beta=space.beta,
        )
        if isinstance(inst, KnapsackInstance):
            d = knapsack_derive(inst, cap=req.enumeration_cap)
            resp = resp.model_copy(update=dict(
                q=d.q, feasible_count=d.feasible_count, p1=d.p1, p2=d.p2,
                d_min=d.d_min, v_min=d.v_min, optimum_fitness=d.optimum_fitness))
        elif isinstance(inst, MaxSatInstance):
            d = maxsat_derive(inst, cap=req.enumeration_cap)
            resp = resp.model_copy(update=dict(
                optimum_count=d.optimum_count, clause_count=inst.clause_count,
                optimum_fitness=d.optimum_fitness))
        return resp

    @app.post("/bounds", response_model=s.BoundsResponse)
    def bounds(req: s.BoundsRequest) -> s.BoundsResponse:
        setup = resolve_setup(s.problem_arg(req.problem), req.n)
        inputs = bound_inputs(setup, req.mu, req.lambda_, req.poisson_lambda)
        rep = bound_report(setup.problem, inputs, k=req.k)
        return s.BoundsResponse(
            problem=setup.problem,
            n=setup.n,
            y0=inputs.y0,
            alpha=inputs.alpha,
            beta=inputs.beta,
            k_used=rep.klow_theoretical if req.k is None else req.k,
            k_source="theoretical" if req.k is None else "empirical",
            avg_bound=rep.avg_bound,
            klow_theoretical=rep.klow_theoretical,
            worst_bound=rep.worst_bound,
            formula_ids=list(rep.formula_ids),
        )

    @app.post("/trace", response_model=s.TraceResponse)
    def trace(req: s.TraceRequest) -> s.TraceResponse:
        setup = resolve_setup(s.problem_arg(req.problem), req.n)
        cap = req.max_generations or default_generation_cap(
            setup, req.mu, req.lambda_, req.poisson_lambda)
        cfg = EaConfig(
            variant=setup.variant,
            mu=req.mu,
            lambda_=req.lambda_,
            seed=req.seed,
            max_generations=cap,
            poisson_lambda=req.poisson_lambda if setup.variant is Variant.TSP3 else None,
            initial_population=setup.initial_population(req.mu),
        )
        outcome = run_ea(setup.instance, cfg, optimum_fitness=setup.optimum_fitness)
        if outcome.fht is None:
            raise CensoredRunsError(
                f"run censored at max_generations={cap}",
                censored=[(setup.n, 0, req.seed)])
        tr = gain_trace(outcome, setup.optimum_fitness, setup.instance.maximize)
        events = [
            s.TraceEvent(
                t=ev.generation,
                best_fitness=ev.best_fitness,
                best_count=ev.best_count,
                potential=int(tr.potentials[ev.generation]),
                gain=int(tr.gains[ev.generation]) if ev.generation < tr.fht else None,
                hit_optimum=ev.hit_optimum,
            )
            for ev in outcome.events
        ]
        return s.TraceResponse(problem=setup.problem, n=setup.n, seed=req.seed,
                               fht=outcome.fht, evaluations=outcome.evaluations,
                               events=events)

    def _rows_model(rows) -> list[s.SummaryRowModel]:
        return [s.SummaryRowModel(
            n=r.n, t0_hat=r.t0_hat, t_max=r.t_max, k_hat=r.k_hat, alpha_hat=r.alpha_hat,
            avg_bound=r.avg_bound, worst_bound=r.worst_bound,
            klow_theoretical=r.klow_theoretical, runs=r.runs) for r in rows]

    @app.post("/run", response_model=s.RunResponse)
    def run(req: s.ExperimentRequest) -> s.RunResponse:
        batch = run_batch(_experiment_config(req))
        report = consistency_check(batch.rows) if len(batch.rows) >= 2 else None
        files = []
        if req.out_dir:
            files = [str(p) for p in export_results(batch, report, req.out_dir,
                                                    include_traces=req.include_traces)]
        return s.RunResponse(rows=_rows_model(batch.rows), files=files)

    @app.post("/verify", response_model=s.VerifyResponse)
    def verify(req: s.VerifyRequest) -> s.VerifyResponse:
        batch = run_batch(_experiment_config(req))
        report = consistency_check(batch.rows, r_min=req.r_min)
        files = []
        if req.out_dir:
            files = [str(p) for p in export_results(batch, report, req.out_dir,
                                                    include_traces=req.include_traces)]
        doc = report_document(batch, report)
        return s.VerifyResponse(
            config=doc["config"],
            rows=_rows_model(report.rows),
            correlations=doc["correlations"],
            orderings={k: s.PairCheckModel(**v) for k, v in doc["orderings"].items()},
            verdicts=doc["verdicts"],
            thresholds=doc["thresholds"],
            files=files,
        )

    return app


app = create_app()
