"""HTTP front end for the verification harness.

A small FastAPI application with three endpoints:

* ``GET /health`` reports the package version.
* ``GET /correlator?g=..&k=1,2,0`` returns one psi intersection number
  as an exact ``p/q`` string.
* ``POST /check`` runs the requested suites with the given bounds and
  returns the same JSON report the CLI writes.

All payload values are strings or integers; rationals are never floats.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__, checks
from .config import RunConfig
from .correlators import wk_correlator
from .errors import ExactError
from .report import frac_str


class CheckRequest(BaseModel):
    suites: list[str] = Field(default_factory=lambda: list(checks.ALL_SUITES))
    gmax: int = 2
    nmax: int = 4
    kmax: int = 6
    dmax: int = 5
    order: int = 10
    jobs: int = 1
    hodge_table: str = ""


class CorrelatorResponse(BaseModel):
    g: int
    k: list[int]
    value: str


def create_app() -> FastAPI:
    app = FastAPI(title="modulitr verification service", version=__version__)

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/correlator", response_model=CorrelatorResponse)
    def correlator(g: int, k: str):
        try:
            ks = tuple(int(x) for x in k.split(",")) if k else ()
            value = wk_correlator(g, ks)
        except (ExactError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return CorrelatorResponse(g=g, k=sorted(ks), value=frac_str(value))

    @app.post("/check")
    def check(req: CheckRequest):
        unknown = [s for s in req.suites if s not in checks.ALL_SUITES]
        if unknown:
            raise HTTPException(status_code=422, detail=f"unknown suites {unknown}")
        try:
            cfg = RunConfig(
                gmax=req.gmax,
                nmax=req.nmax,
                kmax=req.kmax,
                dmax=req.dmax,
                order=req.order,
                jobs=req.jobs,
                hodge_table=req.hodge_table,
            )
        except ExactError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        from .cli import run_suites

        report = run_suites(cfg, tuple(req.suites))
        return json.loads(report.to_json())

    return app


def serve(cfg: RunConfig, host: str, port: int):
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)
