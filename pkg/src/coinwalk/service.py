"""HTTP service exposing the experiment harness.

All heavy lifting stays in the core modules; endpoints validate,
dispatch, and shape results. Validation problems come back as 422
with a structured detail, numerical domain failures as 400.
"""

from __future__ import annotations

import math
import time

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import __version__
from .disorder import CoinField, ContinuousSU2, Regime, TwoCoin
from .ensemble import EnsembleResult, run_ensemble
from .errors import ConfigError, NumericalDomainError, ParameterDomainError
from .fitting import fit_power_law
from .initial import InitialCondition, Localized, build_state
from .oracle import dense_oracle_evolve
from .rng import CASE_STREAM, absorb, chain, unit_at
from .schemas import (
    CompareEntry,
    CompareRequest,
    CompareResponse,
    CompareSummary,
    ExperimentConfig,
    FitRequest,
    FitResponse,
    HealthResponse,
    OracleCheckRequest,
    OracleCheckResponse,
    RunMeta,
    RunRequest,
    RunResponse,
)
from .serialize import (
    render_compare_distribution,
    render_compare_timeseries,
    render_distribution,
    render_thresholds,
    render_timeseries,
    timeseries_column,
)
from .state import evolve

_REGIME_CYCLE = (Regime.ORDERED, Regime.DYNAMIC, Regime.FLUCTUATING, Regime.STATIC)


def execute_run(config: ExperimentConfig, threads: int) -> tuple[EnsembleResult, RunResponse]:
    ics = config.to_ics()
    t0 = time.perf_counter()
    result = run_ensemble(
        config.to_regime(),
        config.to_ensemble(),
        ics,
        config.steps,
        config.seed,
        thresholds=tuple(config.thresholds),
        replicates=config.replicates,
        threads=threads,
    )
    wall = time.perf_counter() - t0
    meta = RunMeta(
        artifact="walk-ensemble-run",
        version=__version__,
        config=config,
        realizations=result.count,
        wall_time_s=wall,
        threads=threads,
    )
    resp = RunResponse(
        timeseries_csv=render_timeseries(result),
        distribution_csv=render_distribution(result),
        thresholds_csv=render_thresholds(result),
        meta=meta,
    )
    return result, resp


def oracle_sweep(cases: int, steps: int, seed: int, tolerance: float) -> OracleCheckResponse:
    """Compare the production recurrence against the dense reference.

    Case k exercises regime k mod 4 with the two-coin ensemble for
    k mod 8 < 4 and the continuous one otherwise, from a random
    localized spin state. Reports the worst amplitude difference.
    """
    worst = 0.0
    for k in range(cases):
        regime = _REGIME_CYCLE[k % 4]
        ensemble = TwoCoin() if (k % 8) < 4 else ContinuousSU2()
        h = chain(seed, CASE_STREAM, k)
        walk_seed = int(absorb(h, 0))
        alpha_s = float(unit_at(h, 1)) * (math.pi / 2.0)
        beta_s = float(unit_at(h, 2)) * (2.0 * math.pi)
        ic = InitialCondition(spin=(alpha_s, beta_s), position=Localized())
        state = build_state(ic)
        field = CoinField(regime, ensemble, walk_seed, 0)
        fast = evolve(state, field, steps)
        slow = dense_oracle_evolve(state, field, steps)
        lo = min(fast.lo, slow.lo)
        hi = max(fast.hi, slow.hi)
        w = hi - lo + 1
        diff = np.zeros(2 * w, dtype=np.complex128)
        fa = fast.lo - lo
        diff[fa : fa + len(fast.a)] = fast.a
        diff[w + fa : w + fa + len(fast.b)] = fast.b
        sa = slow.lo - lo
        diff[sa : sa + len(slow.a)] -= slow.a
        diff[w + sa : w + sa + len(slow.b)] -= slow.b
        worst = max(worst, float(np.max(np.abs(diff))))
    return OracleCheckResponse(
        cases=cases,
        steps=steps,
        max_difference=worst,
        tolerance=tolerance,
        passed=worst <= tolerance,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="coinwalk", version=__version__)

    @app.exception_handler(ConfigError)
    @app.exception_handler(ParameterDomainError)
    async def _validation(_request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"detail": {"kind": "validation", "message": str(exc)}},
        )

    @app.exception_handler(NumericalDomainError)
    async def _domain(_request: Request, exc: NumericalDomainError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"detail": {"kind": "domain", "message": str(exc)}},
        )

    @app.exception_handler(RequestValidationError)
    async def _request_validation(_request: Request, exc: RequestValidationError) -> JSONResponse:
        parts = []
        for err in exc.errors():
            loc = ".".join(str(p) for p in err["loc"])
            parts.append(f"{loc}: {err['msg']}")
        return JSONResponse(
            status_code=422,
            content={"detail": {"kind": "validation", "message": "; ".join(parts)}},
        )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/run", response_model=RunResponse)
    def run(req: RunRequest) -> RunResponse:
        _, resp = execute_run(req.config, req.threads)
        return resp

    @app.post("/fit", response_model=FitResponse)
    def fit(req: FitRequest) -> FitResponse:
        values = timeseries_column(req.timeseries_csv, req.column)
        f = fit_power_law(values, drop_first=req.drop_first)
        return FitResponse(
            slope=f.slope,
            intercept=f.intercept,
            slope_stderr=f.stderr,
            ci95=f.ci95,
            points_used=f.points_used,
            points_dropped=f.points_dropped,
        )

    @app.post("/compare", response_model=CompareResponse)
    def compare(req: CompareRequest) -> CompareResponse:
        labels = [c.effective_label() for c in req.configs]
        results = [execute_run(c, req.threads)[0] for c in req.configs]
        entries = sorted(
            (
                CompareEntry(label=lb, final_mean_entropy=r.final_mean_entropy)
                for lb, r in zip(labels, results)
            ),
            key=lambda e: e.final_mean_entropy,
            reverse=True,
        )
        return CompareResponse(
            timeseries_csv=render_compare_timeseries(labels, results),
            distribution_csv=render_compare_distribution(labels, results),
            summary=CompareSummary(steps=req.configs[0].steps, final_entropy=entries),
        )

    @app.post("/oracle-check", response_model=OracleCheckResponse)
    def oracle_check(req: OracleCheckRequest) -> OracleCheckResponse:
        return oracle_sweep(req.cases, req.steps, req.seed, req.tolerance)

    return app


app = create_app()
