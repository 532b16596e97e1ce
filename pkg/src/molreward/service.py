"""Concurrent grading service.

POST /v1/grade takes a JSON array of grading records and returns the results
array in input order; GET /healthz reports reference-artifact versions. All
shared state is immutable after startup; per-request work runs in worker
threads behind an in-flight semaphore and a deadline.
"""

from __future__ import annotations

import asyncio

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from starlette.concurrency import run_in_threadpool

from .config import EngineConfig
from .records import RecordError, error_record, process_record
from .rewards import OracleUnavailableError


def create_app(config: EngineConfig | None = None) -> FastAPI:
    config = config or EngineConfig.load()
    ctx = config.build_context()
    versions = config.artifact_versions()
    limiter = asyncio.Semaphore(config.server.max_in_flight)
    deadline = config.server.request_timeout

    app = FastAPI(title="molreward grading service")

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok", "versions": versions}

    @app.post("/v1/grade")
    async def grade_batch(request: Request):
        try:
            body = await request.json()
        except Exception:
            return JSONResponse({"error": "body is not valid JSON"},
                                status_code=400)
        if not isinstance(body, list):
            return JSONResponse({"error": "body must be a JSON array of records"},
                                status_code=400)

        def work():
            results = []
            for record in body:
                try:
                    results.append(process_record(record, ctx))
                except RecordError as e:
                    results.append(error_record(record, str(e)))
            return results

        async with limiter:
            try:
                results = await asyncio.wait_for(
                    run_in_threadpool(work), timeout=deadline)
            except asyncio.TimeoutError:
                return JSONResponse(
                    {"error": f"deadline of {deadline}s exceeded"},
                    status_code=503)
            except OracleUnavailableError as e:
                return JSONResponse({"error": f"oracle unavailable: {e}"},
                                    status_code=503)
        return results

    return app
