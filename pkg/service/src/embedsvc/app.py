"""FastAPI application implementing the embedding wire protocol.

GET /models              -> {"models": [{"id", "dim"}, ...]}
POST /embed              -> {"model", "dim", "vectors"}
Errors carry {"error": <message>} with HTTP 400 (malformed request),
404 (unknown model), 422 (unembeddable text, e.g. fully OOV), or 500.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .backends import AllOovError
from .registry import ModelRegistry


class EmbedRequest(BaseModel):
    model: str
    texts: list[str] = Field(min_length=1)


def create_app(registry: ModelRegistry) -> FastAPI:
    app = FastAPI(title="embedsvc", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc.errors())})

    @app.get("/models")
    def models():
        return {
            "models": [{"id": e.id, "dim": e.dim} for e in registry.entries()]
        }

    @app.post("/embed")
    def embed(request: EmbedRequest):
        entry = registry.get(request.model)
        if entry is None:
            return JSONResponse(
                status_code=404,
                content={"error": f"unknown model {request.model!r}"},
            )
        try:
            vectors = entry.backend.encode(request.texts)
        except AllOovError as exc:
            return JSONResponse(status_code=422, content={"error": str(exc)})
        if len(vectors) != len(request.texts):
            return JSONResponse(
                status_code=500,
                content={"error": "backend returned a misaligned batch"},
            )
        rows = []
        for vec in vectors:
            row = [float(x) for x in vec]
            if len(row) != entry.dim or not all(math.isfinite(x) for x in row):
                return JSONResponse(
                    status_code=500,
                    content={"error": "backend produced an invalid vector"},
                )
            rows.append(row)
        return {"model": entry.id, "dim": entry.dim, "vectors": rows}

    return app
