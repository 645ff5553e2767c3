"""FastAPI wiring around the handlers."""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import BudgetExceededError, ConsistencyError, InputError
from . import handlers
from .models import (
    AnalyzeRequest,
    AnalyzeResponse,
    BoundRequest,
    BoundResponse,
    ErrorResponse,
    ExamplesResponse,
    VerifyRequest,
    VerifyResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="commfibre",
        version=__version__,
        description=(
            "Exact fibre counts of commutator word maps over finite p-groups "
            "of nilpotency class < p and exponent p, with a brute-force "
            "group-side verifier."
        ),
    )

    @app.exception_handler(InputError)
    async def _input_error(request, exc: InputError):
        return JSONResponse(
            status_code=400,
            content=ErrorResponse(error=handlers.error_info(exc)).model_dump(),
        )

    @app.exception_handler(BudgetExceededError)
    async def _budget_error(request, exc: BudgetExceededError):
        return JSONResponse(
            status_code=400,
            content=ErrorResponse(error=handlers.error_info(exc)).model_dump(),
        )

    @app.exception_handler(ConsistencyError)
    async def _consistency_error(request, exc: ConsistencyError):
        return JSONResponse(
            status_code=500,
            content=ErrorResponse(error=handlers.error_info(exc)).model_dump(),
        )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/examples", response_model=ExamplesResponse)
    def examples():
        return handlers.handle_examples()

    @app.post("/analyze", response_model=AnalyzeResponse)
    def analyze(req: AnalyzeRequest):
        return handlers.handle_analyze(req)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest):
        return handlers.handle_verify(req)

    @app.post("/bound", response_model=BoundResponse)
    def bound(req: BoundRequest):
        return handlers.handle_bound(req)

    return app
