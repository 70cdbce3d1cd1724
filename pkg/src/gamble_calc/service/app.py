"""FastAPI application exposing the calculation handlers.

Routes are versioned under /v1 and are stateless POST endpoints, one per
subcommand.  Package errors surface as structured JSON: 400 for anything
wrong with the request's content (domains, ranges, parsing, mismatched
spaces), 500 for a solver breakdown, mirroring the CLI's exit codes 2
and 3.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from ..errors import GambleCalcError, SolverFailure
from . import handlers, schemas


def _error_payload(exc: Exception) -> dict:
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


def create_app() -> FastAPI:
    app = FastAPI(
        title="gamble-calc",
        version="0.1.0",
        description=(
            "Growth-aware gamble evaluation: nonlinear combination, "
            "acceptance-set coherence, induced risk, and ensemble-vs-time "
            "simulation."
        ),
    )

    @app.exception_handler(SolverFailure)
    async def _solver_failure(request: Request, exc: SolverFailure) -> JSONResponse:
        return JSONResponse(status_code=500, content=_error_payload(exc))

    @app.exception_handler(GambleCalcError)
    async def _package_error(request: Request, exc: GambleCalcError) -> JSONResponse:
        return JSONResponse(status_code=400, content=_error_payload(exc))

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content=_error_payload(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation_error(
        request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        parts = []
        for err in exc.errors():
            loc = ".".join(str(piece) for piece in err.get("loc", ()) if piece != "body")
            parts.append(f"{loc}: {err.get('msg', 'invalid')}" if loc else err.get("msg", "invalid"))
        message = "; ".join(parts) or "invalid request body"
        return JSONResponse(
            status_code=422,
            content={"error": {"type": "ValidationError", "message": message}},
        )

    @app.get("/v1/health")
    async def health() -> dict:
        return {"status": "ok"}

    @app.post("/v1/combine", response_model=schemas.CombineResponse)
    async def combine(req: schemas.CombineRequest) -> schemas.CombineResponse:
        return handlers.run_combine(req)

    @app.post("/v1/check", response_model=schemas.CheckResponse)
    async def check(req: schemas.CheckRequest) -> schemas.CheckResponse:
        return handlers.run_check(req)

    @app.post("/v1/risk", response_model=schemas.RiskResponse)
    async def risk(req: schemas.RiskRequest) -> schemas.RiskResponse:
        return handlers.run_risk(req)

    @app.post("/v1/risk/batch", response_model=schemas.RiskBatchResponse)
    async def risk_batch(req: schemas.RiskBatchRequest) -> schemas.RiskBatchResponse:
        return handlers.run_risk_batch(req)

    @app.post("/v1/simulate", response_model=schemas.SimulateResponse)
    async def simulate(req: schemas.SimulateRequest) -> schemas.SimulateResponse:
        return handlers.run_simulate(req)

    @app.post("/v1/portfolio", response_model=schemas.PortfolioResponse)
    async def portfolio(req: schemas.PortfolioRequest) -> schemas.PortfolioResponse:
        return handlers.run_portfolio(req)

    @app.post("/v1/laws", response_model=schemas.LawsResponse)
    async def laws(req: schemas.LawsRequest) -> schemas.LawsResponse:
        return handlers.run_laws(req)

    return app


app = create_app()
