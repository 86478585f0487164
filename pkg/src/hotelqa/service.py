"""HTTP service: question answering, bot config, rooms search, health, reload.

The loaded corpus+index pair is an immutable engine snapshot held behind a
single app-state reference. Handlers grab that reference once per request, so
a concurrent reload can never mix two index versions inside one response, and
in-flight requests finish on the engine they started with.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from datetime import date
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .config import ServiceConfig
from .corpus import Corpus
from .pipeline import answer
from .reader import ExternalReaderError
from .retriever import TfIdfIndex
from .rooms import RoomInventory, search_rooms
from .snapshot import SnapshotError, load_snapshot

__all__ = ["QaEngine", "create_app", "AskResponse", "RoomListing", "BotConfigResponse", "HealthResponse"]

DEFAULT_PORT = 8080


@dataclass(frozen=True)
class QaEngine:
    """Immutable corpus+index bundle; the unit the reload endpoint swaps."""

    corpus: Corpus
    index: TfIdfIndex

    @classmethod
    def from_snapshot(cls, path: str | Path) -> "QaEngine":
        corpus, index = load_snapshot(path)
        return cls(corpus=corpus, index=index)


class AskResponse(BaseModel):
    answer: str
    paragraph: str
    title: str
    score: float
    doc_id: str
    degraded: bool
    latency_ms: float | None = None


class RoomListing(BaseModel):
    id: str
    name: str
    capacity: int
    nightly_rate: float
    available_units: int


class BotConfigResponse(BaseModel):
    welcome_message: str


class HealthResponse(BaseModel):
    status: str
    documents: int
    vocabulary_terms: int


class ReloadRequest(BaseModel):
    index_path: str


def create_app(
    engine: QaEngine | None = None,
    rooms: RoomInventory | None = None,
    config: ServiceConfig | None = None,
) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="hotelqa", version="0.1.0")
    app.state.engine = engine
    app.state.rooms = rooms
    app.state.config = config

    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def _require_engine(request: Request) -> QaEngine:
        engine = request.app.state.engine
        if engine is None:
            raise HTTPException(status_code=503, detail="index not loaded")
        return engine

    @app.post("/api/ask", response_model=AskResponse, response_model_exclude_none=True)
    async def api_ask(request: Request):
        try:
            body = await request.json()
        except Exception:
            raise HTTPException(status_code=400, detail="request body must be a JSON object")
        if not isinstance(body, dict):
            raise HTTPException(status_code=400, detail="request body must be a JSON object")
        if "query" not in body:
            raise HTTPException(status_code=400, detail="missing required field: query")
        query = body["query"]
        if not isinstance(query, str) or not query.strip():
            raise HTTPException(status_code=400, detail="field 'query' must be a non-empty string")
        engine = _require_engine(request)
        started = time.perf_counter()
        try:
            response = answer(query, engine.index, engine.corpus, request.app.state.config.pipeline)
        except ExternalReaderError as exc:
            raise HTTPException(status_code=502, detail=str(exc))
        payload = response.to_dict()
        payload["latency_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
        return payload

    @app.get("/api/rooms", response_model=list[RoomListing])
    def api_rooms(
        request: Request,
        check_in: str | None = None,
        check_out: str | None = None,
        guests: str | None = None,
    ):
        missing = [
            name
            for name, value in (("check_in", check_in), ("check_out", check_out), ("guests", guests))
            if value is None
        ]
        if missing:
            raise HTTPException(
                status_code=400, detail=f"missing query parameters: {', '.join(missing)}"
            )
        try:
            check_in_date = date.fromisoformat(check_in)
            check_out_date = date.fromisoformat(check_out)
        except ValueError:
            raise HTTPException(status_code=400, detail="dates must be ISO-8601 (YYYY-MM-DD)")
        try:
            guest_count = int(guests)
        except ValueError:
            raise HTTPException(status_code=400, detail="guests must be an integer")
        if guest_count < 1:
            raise HTTPException(status_code=400, detail="guests must be >= 1")
        if check_out_date <= check_in_date:
            raise HTTPException(status_code=400, detail="check_out must be after check_in")
        inventory = request.app.state.rooms
        if inventory is None:
            raise HTTPException(status_code=503, detail="room inventory not configured")
        return [
            item.to_dict()
            for item in search_rooms(inventory, check_in_date, check_out_date, guest_count)
        ]

    @app.get("/api/config", response_model=BotConfigResponse)
    def api_config(request: Request):
        return {"welcome_message": request.app.state.config.welcome_message}

    @app.get("/api/health", response_model=HealthResponse)
    def api_health(request: Request):
        engine = _require_engine(request)
        return {
            "status": "ok",
            "documents": engine.index.n_docs,
            "vocabulary_terms": len(engine.index.vocabulary),
        }

    @app.post("/api/reload", response_model=HealthResponse)
    async def api_reload(request: Request):
        try:
            body = await request.json()
        except Exception:
            raise HTTPException(status_code=400, detail="request body must be a JSON object")
        if not isinstance(body, dict) or not isinstance(body.get("index_path"), str):
            raise HTTPException(status_code=400, detail="missing required field: index_path")
        try:
            new_engine = QaEngine.from_snapshot(body["index_path"])
        except SnapshotError as exc:
            # the previous engine keeps serving; no partial swap
            raise HTTPException(status_code=400, detail=f"reload failed: {exc}")
        request.app.state.engine = new_engine
        return {
            "status": "ok",
            "documents": new_engine.index.n_docs,
            "vocabulary_terms": len(new_engine.index.vocabulary),
        }

    if config.ui_dir and Path(config.ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app
