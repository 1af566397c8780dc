"""HTTP JSON API over the engine: symptom search, recommendation, health.

Endpoints:
    GET  /symptoms?q=<text>&limit=<n>   -> [{"syd": ..., "name": ...}]
    POST /recommend {"symptom_ids": [..], "n": 4}
                                        -> query echo, ranked results, model metadata
    GET  /health                        -> {"status", "model_hash", "corpus_counts"}

Errors use {"error": {"code", "message", "details"}}. The loaded model is
held in a handle and swapped atomically; requests read the handle once, so
each request sees exactly one coherent model version.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .corpus import Corpus
from .model import ModelBundle
from .recommender import Query, UnknownSymptomError, recommend, search_symptoms

logger = logging.getLogger(__name__)

SCORE_DECIMALS = 6


@dataclass(frozen=True)
class LoadedModel:
    corpus: Corpus
    bundle: ModelBundle


class ModelHandle:
    """Atomic holder for the currently served model."""

    def __init__(self, loaded: LoadedModel | None = None):
        self._current = loaded

    @property
    def current(self) -> LoadedModel | None:
        return self._current

    def swap(self, loaded: LoadedModel) -> None:
        self._current = loaded
        logger.info("model swapped: %s", loaded.bundle.corpus_hash[:12])


class RecommendRequest(BaseModel):
    symptom_ids: list[int]
    n: int = Field(default=4, ge=1)


def error_body(code: str, message: str, details=None) -> dict:
    return {"error": {"code": code, "message": message, "details": details or {}}}


def create_app(handle: ModelHandle) -> FastAPI:
    app = FastAPI(title="remedyrank", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def no_model_response() -> JSONResponse:
        return JSONResponse(status_code=503,
                            content=error_body("model_not_loaded",
                                               "no model is loaded; build or load one first"))

    @app.exception_handler(Exception)
    async def unhandled(request: Request, exc: Exception):
        logger.exception("unhandled error for %s", request.url.path)
        return JSONResponse(status_code=500,
                            content=error_body("internal", str(exc)))

    @app.get("/health")
    def health():
        loaded = handle.current
        if loaded is None:
            return {"status": "empty", "model_hash": None, "corpus_counts": None}
        return {
            "status": "ready",
            "model_hash": loaded.bundle.corpus_hash,
            "corpus_counts": {
                "symptoms": loaded.corpus.n_symptoms,
                "diseases": loaded.corpus.n_diseases,
                "triples": len(loaded.corpus.triples),
                "remedies": len(loaded.corpus.remedy_records),
            },
        }

    @app.get("/symptoms")
    def symptoms(q: str = "", limit: int = 10):
        loaded = handle.current
        if loaded is None:
            return no_model_response()
        if limit < 0:
            return JSONResponse(status_code=400,
                                content=error_body("bad_limit", "limit must be >= 0"))
        records = search_symptoms(loaded.corpus, q, limit)
        return [{"syd": r.syd, "name": r.name} for r in records]

    @app.post("/recommend")
    def recommend_endpoint(body: RecommendRequest):
        loaded = handle.current
        if loaded is None:
            return no_model_response()
        if not body.symptom_ids:
            return JSONResponse(status_code=400,
                                content=error_body("empty_query",
                                                   "symptom_ids must not be empty"))
        try:
            query = Query(tuple(body.symptom_ids), n=body.n)
            response = recommend(query, loaded.bundle.factorization, loaded.corpus,
                                 scheme=loaded.bundle.config.scheme,
                                 corpus_hash=loaded.bundle.corpus_hash)
        except UnknownSymptomError as exc:
            return JSONResponse(status_code=400,
                                content=error_body("unknown_symptom_ids",
                                                   str(exc),
                                                   {"unknown_ids": list(exc.unknown_ids)}))
        return response.to_dict(score_decimals=SCORE_DECIMALS)

    return app
