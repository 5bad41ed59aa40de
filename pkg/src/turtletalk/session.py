"""Session lifecycle: one world, one dialog, one ordered event stream.

Every session is replayable: the transcript's user events, its recorded
seed, and the mock backend reproduce the engine events byte for byte
(timestamps excluded — they are the only nondeterministic field). The
transcript persists as JSON lines, one event per line, which doubles as
the fixture format.

Backend calls run synchronously inside `handle`, which preserves the
documented event order (the "working" message always precedes the
completion) and makes replay trivially deterministic.
"""

from __future__ import annotations

import json
import secrets
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import dialog as dlg
from . import messages as msg
from .backends import BackendError, HttpChatBackend, MockBackend, ModelBackend
from .diagnostics import Diagnostic
from .interp import execute
from .primitives import PrimitiveRegistry, default_registry
from .world import Bounds, DEFAULT_BOUNDS, ViewModel, World, new_world, snapshot

WIRE_VERSION = 1


class ConfigError(ValueError):
    """Bad session configuration (unknown backend, malformed file, ...)."""


_OPTION_LABELS = {"fix": msg.OPTION_FIX, "explain": msg.OPTION_EXPLAIN}


@dataclass(frozen=True)
class SessionConfig:
    backend: str = "mock"
    model: str = "mock-1"
    endpoint: str = ""
    api_key_env: str = ""
    assistant_enabled: bool = True
    error_options: tuple[str, ...] = ("fix", "explain")
    bounds: Bounds = DEFAULT_BOUNDS
    seed: int | None = None
    transcript_dir: str | None = None
    heartbeat_seconds: float = 30.0

    def __post_init__(self) -> None:
        unknown = [name for name in self.error_options if name not in _OPTION_LABELS]
        if unknown:
            raise ConfigError(f"unknown error option(s): {', '.join(unknown)}")

    @classmethod
    def from_file(cls, path: str | Path) -> SessionConfig:
        try:
            data = json.loads(Path(path).read_text("utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"can't read config {path}: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SessionConfig:
        kwargs: dict[str, Any] = {}
        backend = data.get("backend", {})
        if isinstance(backend, str):
            kwargs["backend"] = backend
        elif backend:
            kwargs["backend"] = backend.get("name", "mock")
            kwargs["model"] = backend.get("model", "mock-1")
            kwargs["endpoint"] = backend.get("endpoint", "")
            kwargs["api_key_env"] = backend.get("api_key_env", "")
        features = data.get("features", {})
        if "assistant" in features:
            kwargs["assistant_enabled"] = bool(features["assistant"])
        if "options" in features:
            kwargs["error_options"] = tuple(features["options"])
        world = data.get("world", {})
        if world:
            kwargs["bounds"] = Bounds(
                world.get("min_x", DEFAULT_BOUNDS.min_x),
                world.get("max_x", DEFAULT_BOUNDS.max_x),
                world.get("min_y", DEFAULT_BOUNDS.min_y),
                world.get("max_y", DEFAULT_BOUNDS.max_y),
            )
        if "seed" in data and data["seed"] is not None:
            kwargs["seed"] = int(data["seed"])
        if "transcript_dir" in data and data["transcript_dir"]:
            kwargs["transcript_dir"] = str(data["transcript_dir"])
        try:
            return cls(**kwargs)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad config: {exc}") from exc


def create_backend(config: SessionConfig) -> ModelBackend:
    if config.backend == "mock":
        return MockBackend(model=config.model)
    if config.backend == "http":
        import os

        if not config.endpoint:
            raise ConfigError("http backend needs an endpoint")
        api_key = os.environ.get(config.api_key_env) if config.api_key_env else None
        return HttpChatBackend(endpoint=config.endpoint, model=config.model, api_key=api_key)
    raise ConfigError(f"unknown backend {config.backend!r}")


@dataclass(frozen=True)
class SessionEvent:
    seq: int
    ts: float
    origin: str  # "user" | "engine"
    payload: dict[str, Any]

    def to_json(self) -> str:
        return json.dumps(
            {"seq": self.seq, "ts": self.ts, "origin": self.origin, "payload": self.payload},
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, line: str) -> SessionEvent:
        data = json.loads(line)
        return cls(data["seq"], data["ts"], data["origin"], data["payload"])


# -- user event (de)serialization ---------------------------------------

_USER_EVENT_TYPES = {
    "raw-message": lambda p: dlg.RawMessage(p["text"]),
    "option-selected": lambda p: dlg.OptionSelected(p["option"]),
    "run-requested": lambda p: dlg.RunRequested(),
    "ask-edit": lambda p: dlg.AskEdit(p["text"]),
    "navigate-version": lambda p: dlg.NavigateVersion(p["delta"]),
    "follow-up": lambda p: dlg.FollowUp(p["text"]),
}


def user_event_to_payload(event: dlg.UserEvent) -> dict[str, Any]:
    if isinstance(event, dlg.RawMessage):
        return {"type": "raw-message", "text": event.text}
    if isinstance(event, dlg.OptionSelected):
        return {"type": "option-selected", "option": event.option}
    if isinstance(event, dlg.RunRequested):
        return {"type": "run-requested"}
    if isinstance(event, dlg.AskEdit):
        return {"type": "ask-edit", "text": event.text}
    if isinstance(event, dlg.NavigateVersion):
        return {"type": "navigate-version", "delta": event.delta}
    if isinstance(event, dlg.FollowUp):
        return {"type": "follow-up", "text": event.text}
    raise TypeError(f"unknown user event {event!r}")


def user_event_from_payload(payload: dict[str, Any]) -> dlg.UserEvent:
    try:
        return _USER_EVENT_TYPES[payload["type"]](payload)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad user event payload {payload!r}") from exc


def _diag_list(diagnostics: Sequence[Diagnostic]) -> list[dict[str, Any]]:
    return [d.to_dict() for d in diagnostics]


# -- the session itself --------------------------------------------------


@dataclass
class Session:
    id: str
    config: SessionConfig
    seed: int
    world: World
    dialog: dlg.DialogState
    backend: ModelBackend
    registry: PrimitiveRegistry
    transcript: list[SessionEvent] = field(default_factory=list)
    offered: tuple[str, ...] = ()
    _store: Path | None = None

    @property
    def deps(self) -> dlg.DialogDeps:
        return dlg.DialogDeps(
            registry=self.registry,
            assistant_enabled=self.config.assistant_enabled,
            error_options=tuple(_OPTION_LABELS[name] for name in self.config.error_options),
        )

    def view(self) -> ViewModel:
        return snapshot(self.world)


def create_session(config: SessionConfig = SessionConfig(), seed: int | None = None,
                   registry: PrimitiveRegistry | None = None) -> Session:
    """A fresh session: new world, Idle dialog, config event recorded."""
    backend = create_backend(config)  # may raise ConfigError before anything exists
    if seed is None:
        seed = config.seed
    if seed is None:
        seed = secrets.randbits(32)
    registry = registry or default_registry()
    session = Session(
        id=uuid.uuid4().hex,
        config=config,
        seed=seed,
        world=new_world(config.bounds, seed),
        dialog=dlg.Idle(),
        backend=backend,
        registry=registry,
    )
    if config.transcript_dir:
        directory = Path(config.transcript_dir)
        directory.mkdir(parents=True, exist_ok=True)
        session._store = directory / f"{session.id}.jsonl"
    _append(session, "engine", {
        "type": "config",
        "version": WIRE_VERSION,
        "seed": seed,
        "backend": config.backend,
        "model": config.model,
        "assistant": config.assistant_enabled,
        "options": list(config.error_options),
        "bounds": [config.bounds.min_x, config.bounds.max_x,
                   config.bounds.min_y, config.bounds.max_y],
    })
    return session


def _append(session: Session, origin: str, payload: dict[str, Any]) -> SessionEvent:
    event = SessionEvent(len(session.transcript) + 1, time.time(), origin, payload)
    session.transcript.append(event)
    if session._store is not None:
        with session._store.open("a", encoding="utf-8") as fh:
            fh.write(event.to_json() + "\n")
    return event


def handle(session: Session, event: dlg.UserEvent) -> list[SessionEvent]:
    """Process one user event; returns every event it appended."""
    start = len(session.transcript)
    _append(session, "user", user_event_to_payload(event))

    if isinstance(event, dlg.OptionSelected) and event.option not in session.offered:
        _append(session, "engine", {"type": "say", "text": msg.CHOOSE_OFFERED})
        return session.transcript[start:]

    previous_state = session.dialog
    state, actions = dlg.advance(session.dialog, event, session.deps)
    session.dialog = state
    offered: list[str] = []
    queue = list(actions)
    while queue:
        action = queue.pop(0)
        queue_front: list[dlg.EngineAction] = []
        _perform(session, action, offered, queue_front, previous_state)
        queue[:0] = queue_front
    if offered:
        session.offered = tuple(offered)
    return session.transcript[start:]


def _perform(session: Session, action: dlg.EngineAction, offered: list[str],
             queue_front: list[dlg.EngineAction], previous_state: dlg.DialogState) -> None:
    if isinstance(action, dlg.Say):
        _append(session, "engine", {"type": "say", "text": action.text})
        return
    if isinstance(action, dlg.OfferOptions):
        offered.extend(action.options)
        _append(session, "engine", {"type": "offer-options", "options": list(action.options)})
        return
    if isinstance(action, dlg.ShowDiagnostics):
        count = len(action.diagnostics)
        if session.config.assistant_enabled:
            header = msg.ERRORS_REMAIN.format(count=count)
        else:
            header = msg.CANT_UNDERSTAND.format(message=action.diagnostics[0].message)
        _append(session, "engine", {"type": "say", "text": header})
        _append(session, "engine", {
            "type": "show-diagnostics",
            "source": action.source,
            "count": count,
            "diagnostics": _diag_list(action.diagnostics),
        })
        return
    if isinstance(action, dlg.PresentCandidate):
        _append(session, "engine", {
            "type": "present-candidate",
            "source": action.candidate.source,
            "version": action.candidate.version,
            "cursor": action.cursor,
            "total": action.total,
            "diagnostics": _diag_list(action.candidate.diagnostics),
        })
        return
    if isinstance(action, dlg.ShowSummary):
        _append(session, "engine", {
            "type": "show-summary",
            "slots": [[key, value] for key, value in action.slots],
        })
        return
    if isinstance(action, dlg.ShowDisclaimer):
        _append(session, "engine", {"type": "show-disclaimer", "text": action.text})
        return
    if isinstance(action, dlg.Execute):
        _append(session, "engine", {"type": "execute", "source": action.source})
        before = session.view()
        outcome = execute(action.ast, session.world, session.registry)
        for line in outcome.output_lines:
            _append(session, "engine", {"type": "say", "text": line})
        if outcome.ok:
            ok_text = (msg.EXEC_OK_ASSISTANT if session.config.assistant_enabled
                       else msg.EXEC_OK_PLAIN)
            _append(session, "engine", {"type": "say", "text": ok_text})
        else:
            _append(session, "engine", {
                "type": "say",
                "text": msg.RUNTIME_FAILED.format(message=outcome.error.message),
            })
        after = session.view()
        if after != before:
            _append(session, "engine", {"type": "view", "view": after.to_dict()})
        return
    if isinstance(action, dlg.CallBackend):
        _append(session, "engine", {"type": "backend-call", "kind": action.kind})
        try:
            response = session.backend.complete(action.turns)
        except BackendError:
            session.dialog = previous_state
            _append(session, "engine", {"type": "say", "text": msg.BACKEND_FAILED})
            return
        state, more = dlg.on_backend_response(session.dialog, action.kind, response, session.deps)
        session.dialog = state
        queue_front.extend(more)
        return
    raise TypeError(f"unknown action {action!r}")


# -- transcripts: persistence and replay ---------------------------------


def load_transcript(path: str | Path) -> list[SessionEvent]:
    events = []
    for line in Path(path).read_text("utf-8").splitlines():
        if line.strip():
            events.append(SessionEvent.from_json(line))
    return events


def engine_projection(events: Iterable[SessionEvent]) -> list[dict[str, Any]]:
    """The deterministic part of a transcript: engine payloads in order."""
    return [e.payload for e in events if e.origin == "engine"]


@dataclass
class ReplayResult:
    ok: bool
    expected: list[dict[str, Any]]
    actual: list[dict[str, Any]]

    def diff_lines(self) -> list[str]:
        import difflib

        expected = json.dumps(self.expected, indent=2).splitlines()
        actual = json.dumps(self.actual, indent=2).splitlines()
        return list(difflib.unified_diff(expected, actual, "recorded", "replayed", lineterm=""))


def replay_transcript(events: Sequence[SessionEvent],
                      registry: PrimitiveRegistry | None = None) -> ReplayResult:
    """Re-run a transcript's user events from its recorded seed under the
    mock backend and compare the engine-event projection."""
    if not events or events[0].payload.get("type") != "config":
        raise ValueError("transcript must start with a config event")
    head = events[0].payload
    bounds = head.get("bounds", [DEFAULT_BOUNDS.min_x, DEFAULT_BOUNDS.max_x,
                                 DEFAULT_BOUNDS.min_y, DEFAULT_BOUNDS.max_y])
    config = SessionConfig(
        backend="mock",
        assistant_enabled=head.get("assistant", True),
        error_options=tuple(head.get("options", ("fix", "explain"))),
        bounds=Bounds(bounds[0], bounds[1], bounds[2], bounds[3]),
        seed=head["seed"],
    )
    session = create_session(config, registry=registry)
    for event in events:
        if event.origin == "user":
            handle(session, user_event_from_payload(event.payload))
    expected = engine_projection(events)
    actual = engine_projection(session.transcript)
    return ReplayResult(ok=expected == actual, expected=expected, actual=actual)


# -- human rendering (shared by the REPL and tests) ----------------------


def render_event_lines(event: SessionEvent, assistant_enabled: bool) -> list[str]:
    """Flatten an engine event into the command center's text lines."""
    payload = event.payload
    kind = payload.get("type")
    if kind == "say":
        return payload["text"].split("\n")
    if kind == "offer-options":
        return list(payload["options"])
    if kind == "show-diagnostics" and assistant_enabled:
        lines: list[str] = []
        for diag in payload["diagnostics"]:
            related = diag.get("related") or []
            label = related[0] if related else payload["source"]
            lines.append(f"• {label}")
            lines.append(diag["message"])
        return lines
    if kind == "present-candidate":
        lines = payload["source"].split("\n")
        lines.append(f"Run ? Ask {payload['cursor']} / {payload['total']}")
        return lines
    if kind == "show-summary":
        return [msg.SUMMARY_HEADER] + [f"- {key}: {value}" for key, value in payload["slots"]]
    if kind == "show-disclaimer":
        return [payload["text"]]
    return []
