"""HTTP + WebSocket API over sessions.

Endpoints
---------
POST /sessions                  create a session; body may carry config
                                overrides; returns {"id", "config"}
GET  /sessions/{id}/transcript  full ordered event list
GET  /sessions/{id}/view        latest view model
WS   /sessions/{id}/stream      client sends user-event records, server
                                pushes the resulting session events;
                                heartbeat ping every 30 s (configurable)

Wire schemas are the session module's payload dicts, documented
field-by-field in the README.
"""

from __future__ import annotations

import asyncio
from typing import Any

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware

from .session import (
    ConfigError,
    Session,
    SessionConfig,
    create_session,
    handle,
    user_event_from_payload,
)


class SessionHub:
    """In-memory session table; each session's events process serially."""

    def __init__(self, base_config: SessionConfig):
        self.base_config = base_config
        self.sessions: dict[str, Session] = {}
        self.locks: dict[str, asyncio.Lock] = {}

    def create(self, overrides: dict[str, Any]) -> Session:
        config = _merge_config(self.base_config, overrides)
        session = create_session(config)
        self.sessions[session.id] = session
        self.locks[session.id] = asyncio.Lock()
        return session

    def get(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="no such session")
        return session


def _merge_config(base: SessionConfig, overrides: dict[str, Any]) -> SessionConfig:
    from dataclasses import replace

    kwargs: dict[str, Any] = {}
    if "seed" in overrides and overrides["seed"] is not None:
        kwargs["seed"] = int(overrides["seed"])
    if "assistant" in overrides:
        kwargs["assistant_enabled"] = bool(overrides["assistant"])
    if "backend" in overrides:
        kwargs["backend"] = str(overrides["backend"])
    return replace(base, **kwargs) if kwargs else base


def config_echo(session: Session) -> dict[str, Any]:
    config = session.config
    return {
        "backend": config.backend,
        "model": config.model,
        "assistant": config.assistant_enabled,
        "seed": session.seed,
        "bounds": [config.bounds.min_x, config.bounds.max_x,
                   config.bounds.min_y, config.bounds.max_y],
    }


def create_app(base_config: SessionConfig = SessionConfig()) -> FastAPI:
    app = FastAPI(title="turtletalk", version="0.1.0")
    app.add_middleware(  # the browser client is served from a separate origin
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
    )
    hub = SessionHub(base_config)
    app.state.hub = hub

    @app.post("/sessions")
    def make_session(overrides: dict[str, Any] | None = None) -> dict[str, Any]:
        try:
            session = hub.create(overrides or {})
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return {"id": session.id, "config": config_echo(session)}

    @app.get("/sessions/{session_id}/transcript")
    def transcript(session_id: str) -> dict[str, Any]:
        session = hub.get(session_id)
        return {
            "id": session.id,
            "events": [
                {"seq": e.seq, "ts": e.ts, "origin": e.origin, "payload": e.payload}
                for e in session.transcript
            ],
        }

    @app.get("/sessions/{session_id}/view")
    def view(session_id: str) -> dict[str, Any]:
        return hub.get(session_id).view().to_dict()

    @app.websocket("/sessions/{session_id}/stream")
    async def stream(websocket: WebSocket, session_id: str) -> None:
        session = hub.sessions.get(session_id)
        if session is None:
            await websocket.close(code=4404)
            return
        await websocket.accept()
        lock = hub.locks[session_id]
        heartbeat = asyncio.create_task(
            _heartbeat(websocket, session.config.heartbeat_seconds)
        )
        try:
            while True:
                payload = await websocket.receive_json()
                try:
                    event = user_event_from_payload(payload)
                except ValueError as exc:
                    await websocket.send_json({"error": str(exc)})
                    continue
                async with lock:
                    new_events = await asyncio.to_thread(handle, session, event)
                for session_event in new_events:
                    await websocket.send_json({
                        "seq": session_event.seq,
                        "ts": session_event.ts,
                        "origin": session_event.origin,
                        "payload": session_event.payload,
                    })
        except WebSocketDisconnect:
            pass
        finally:
            heartbeat.cancel()

    return app


async def _heartbeat(websocket: WebSocket, interval: float) -> None:
    try:
        while True:
            await asyncio.sleep(interval)
            await websocket.send_json({"ping": True})
    except Exception:
        return
