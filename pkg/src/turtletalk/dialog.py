"""The conversation state machine.

`advance` is a pure transition function over (state, user event); side
effects are described by the returned actions and performed by the
session layer. Backend completions re-enter through
`on_backend_response`, so the machine itself never blocks or talks to a
model.

Totality: every (state variant, event variant) pair is handled. From any
state the user can reach Idle ("Let's change a topic" or a new topic),
and a message that classifies as runnable code executes immediately no
matter what the conversation is doing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from importlib import resources

from . import messages as msg
from .backends import ChatTurn, parse_intents
from .candidates import CodeCandidate, extract_candidate
from .classify import BrokenCode, HelpQuery, ValidCode, classify
from .diagnostics import Diagnostic
from .primitives import AgentContext, PrimitiveRegistry, help_entry
from .prompts import (
    build_clarify_prompt,
    build_draft_prompt,
    build_edit_prompt,
    build_explain_prompt,
    build_fix_prompt,
    build_followup_prompt,
)
from .syntax import Program

MAX_CANDIDATES = 20  # versions kept per topic; Back/forward clamp at the ends


# -- slot schemas ------------------------------------------------------


@dataclass(frozen=True)
class Slot:
    key: str
    question: str
    chips: tuple[str, ...]
    required: bool = True

    def __post_init__(self) -> None:
        if not self.chips:
            raise ValueError(f"slot {self.key} needs example chips")


@dataclass(frozen=True)
class SlotSchema:
    intent: str
    slots: tuple[Slot, ...]

    def __post_init__(self) -> None:
        if not any(slot.required for slot in self.slots):
            raise ValueError(f"schema {self.intent} needs at least one required slot")


def _load_schemas() -> dict[str, SlotSchema]:
    raw = resources.files("turtletalk").joinpath("data/intents.json").read_text("utf-8")
    schemas: dict[str, SlotSchema] = {}
    for record in json.loads(raw):
        slots = tuple(
            Slot(s["key"], s["question"], tuple(s["chips"]), s.get("required", True))
            for s in record["slots"]
        )
        schemas[record["intent"].lower()] = SlotSchema(record["intent"], slots)
    return schemas


_SCHEMAS: dict[str, SlotSchema] | None = None


def schema_for(intent: str) -> SlotSchema:
    """The built-in schema for an intent, or the generic fallback."""
    global _SCHEMAS
    if _SCHEMAS is None:
        _SCHEMAS = _load_schemas()
    schema = _SCHEMAS.get(intent.lower())
    if schema is None:
        schema = _SCHEMAS["*"]
    return replace(schema, intent=intent)


# -- states ------------------------------------------------------------


@dataclass(frozen=True)
class Idle:
    pass


@dataclass(frozen=True)
class ErrorOptions:
    source: str
    diagnostics: tuple[Diagnostic, ...]


@dataclass(frozen=True)
class Explaining:
    source: str
    diagnostics: tuple[Diagnostic, ...]


@dataclass(frozen=True)
class Clarifying:
    intents: tuple[str, ...]


@dataclass(frozen=True)
class SlotFilling:
    intent: str
    schema: SlotSchema
    filled: tuple[tuple[str, str], ...] = ()

    def next_slot(self) -> Slot | None:
        done = {key for key, _ in self.filled}
        for slot in self.schema.slots:
            if slot.key not in done:
                return slot
        return None


@dataclass(frozen=True)
class DraftReview:
    topic: str
    candidates: tuple[CodeCandidate, ...]
    cursor: int

    def __post_init__(self) -> None:
        if not 0 <= self.cursor < len(self.candidates):
            raise ValueError("cursor outside candidate list")

    @property
    def current(self) -> CodeCandidate:
        return self.candidates[self.cursor]


@dataclass(frozen=True)
class Fixing:
    """Waiting for the backend to draft, fix, or revise code."""

    topic: str
    candidates: tuple[CodeCandidate, ...] = ()
    source: str = ""
    diagnostics: tuple[Diagnostic, ...] = ()


DialogState = Idle | ErrorOptions | Explaining | Clarifying | SlotFilling | DraftReview | Fixing

STATE_VARIANTS = (Idle, ErrorOptions, Explaining, Clarifying, SlotFilling, DraftReview, Fixing)


# -- user events -------------------------------------------------------


@dataclass(frozen=True)
class RawMessage:
    text: str


@dataclass(frozen=True)
class OptionSelected:
    option: str


@dataclass(frozen=True)
class RunRequested:
    pass


@dataclass(frozen=True)
class AskEdit:
    text: str


@dataclass(frozen=True)
class NavigateVersion:
    delta: int


@dataclass(frozen=True)
class FollowUp:
    text: str


UserEvent = RawMessage | OptionSelected | RunRequested | AskEdit | NavigateVersion | FollowUp

EVENT_VARIANTS = (RawMessage, OptionSelected, RunRequested, AskEdit, NavigateVersion, FollowUp)


# -- engine actions ----------------------------------------------------


@dataclass(frozen=True)
class Say:
    text: str


@dataclass(frozen=True)
class OfferOptions:
    options: tuple[str, ...]


@dataclass(frozen=True)
class ShowDiagnostics:
    source: str
    diagnostics: tuple[Diagnostic, ...]


@dataclass(frozen=True)
class PresentCandidate:
    candidate: CodeCandidate
    cursor: int  # 1-based, as displayed ("3 / 3")
    total: int


@dataclass(frozen=True)
class Execute:
    ast: Program
    source: str


@dataclass(frozen=True)
class CallBackend:
    kind: str  # clarify | explain | fix | draft | edit | followup
    turns: tuple[ChatTurn, ...]


@dataclass(frozen=True)
class ShowSummary:
    slots: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class ShowDisclaimer:
    text: str


EngineAction = (
    Say | OfferOptions | ShowDiagnostics | PresentCandidate | Execute
    | CallBackend | ShowSummary | ShowDisclaimer
)


@dataclass(frozen=True)
class DialogDeps:
    registry: PrimitiveRegistry
    assistant_enabled: bool = True
    context: AgentContext = AgentContext.OBSERVER
    # which AI options broken code offers, in order
    error_options: tuple[str, ...] = (msg.OPTION_FIX, msg.OPTION_EXPLAIN)


Transition = tuple[DialogState, list[EngineAction]]


# -- the machine -------------------------------------------------------


def advance(state: DialogState, event: UserEvent, deps: DialogDeps) -> Transition:
    """One user event in, the next state and an ordered action list out."""
    if isinstance(event, RawMessage):
        return _on_message(state, event.text, deps)
    if isinstance(event, OptionSelected):
        return _on_option(state, event.option, deps)
    if isinstance(event, RunRequested):
        return _on_run(state, deps)
    if isinstance(event, AskEdit):
        return _on_ask_edit(state, event.text, deps)
    if isinstance(event, NavigateVersion):
        return _on_navigate(state, event.delta)
    if isinstance(event, FollowUp):
        return _on_follow_up(state, event.text, deps)
    raise TypeError(f"unknown event {event!r}")


def _on_message(state: DialogState, text: str, deps: DialogDeps) -> Transition:
    kind = classify(text, deps.registry, deps.context)

    if isinstance(kind, HelpQuery):
        entry = help_entry(kind.name, deps.registry)
        if entry is None:
            return state, [Say(msg.NO_HELP_ENTRY.format(name=kind.name))]
        return state, [Say(entry.render())]

    if isinstance(kind, ValidCode):
        # user sovereignty: runnable code executes from any state
        return state, [Execute(kind.ast, text)]

    if isinstance(kind, BrokenCode):
        if isinstance(state, SlotFilling):
            # slot answers are stored verbatim, even when they look like code
            return _fill_slot(state, text, deps)
        return _enter_error_options(text, kind.diagnostics, deps)

    # Natural
    if not text.strip():
        return state, [Say(msg.EMPTY_PROMPT)]
    if not deps.assistant_enabled:
        return state, [Say(msg.PLAIN_NO_CHAT)]
    if isinstance(state, SlotFilling):
        return _fill_slot(state, text, deps)
    if isinstance(state, Explaining):
        return _on_follow_up(state, text, deps)
    if isinstance(state, DraftReview):
        return _on_ask_edit(state, text, deps)
    if isinstance(state, Fixing):
        return state, [Say(msg.STILL_WORKING)]
    return state, [CallBackend("clarify", tuple(build_clarify_prompt(text)))]


def _enter_error_options(source: str, diagnostics: tuple[Diagnostic, ...],
                         deps: DialogDeps) -> Transition:
    actions: list[EngineAction] = [ShowDiagnostics(source, diagnostics)]
    if not deps.assistant_enabled or not deps.error_options:
        return Idle(), actions
    actions.append(OfferOptions(deps.error_options))
    return ErrorOptions(source, diagnostics), actions


def _on_option(state: DialogState, option: str, deps: DialogDeps) -> Transition:
    if option == msg.OPTION_CHANGE_TOPIC:
        return Idle(), [Say(msg.CHANGE_TOPIC_ACK)]

    if isinstance(state, ErrorOptions) and state.diagnostics:
        if option == msg.OPTION_EXPLAIN:
            turns = tuple(build_explain_prompt(state.diagnostics, state.source))
            return Explaining(state.source, state.diagnostics), [CallBackend("explain", turns)]
        if option == msg.OPTION_FIX:
            return _start_fix("fix", (), state.source, state.diagnostics)
    if isinstance(state, Explaining) and option == msg.OPTION_FIX and state.diagnostics:
        return _start_fix("fix", (), state.source, state.diagnostics)
    if isinstance(state, Clarifying):
        if option == msg.OPTION_CLARIFY:
            return state, [Say(msg.CLARIFY_MORE)]
        if option in state.intents:
            return _enter_slot_filling(option)
    if isinstance(state, SlotFilling):
        done = {key for key, _ in state.filled}
        for slot in state.schema.slots:
            if slot.key not in done and option in slot.chips:
                return _fill_slot(state, option, deps, slot)
    if isinstance(state, DraftReview) and option == msg.OPTION_FIX and state.current.diagnostics:
        current = state.current
        return _start_fix(state.topic, state.candidates, current.source, current.diagnostics)

    return state, [Say(msg.CHOOSE_OFFERED)]


def _start_fix(topic: str, candidates: tuple[CodeCandidate, ...],
               source: str, diagnostics: tuple[Diagnostic, ...]) -> Transition:
    turns = tuple(build_fix_prompt(diagnostics, source))
    actions: list[EngineAction] = [
        Say(msg.FIX_WORKING),
        ShowDisclaimer(msg.FIX_DISCLAIMER),
        CallBackend("fix", turns),
    ]
    return Fixing(topic, candidates, source, diagnostics), actions


def _enter_slot_filling(intent: str) -> Transition:
    schema = schema_for(intent)
    state = SlotFilling(intent, schema)
    actions: list[EngineAction] = [
        Say(msg.WORKING_ON.format(intent=intent.lower())),
        Say(msg.SLOT_INTRO),
    ]
    for slot in schema.slots:
        actions.append(Say(slot.question))
        actions.append(OfferOptions(slot.chips))
    actions.append(OfferOptions((msg.OPTION_CHANGE_TOPIC,)))
    return state, actions


def _fill_slot(state: SlotFilling, answer: str, deps: DialogDeps,
               slot: Slot | None = None) -> Transition:
    slot = slot or state.next_slot()
    if slot is None:  # unreachable once drafts dispatch, but stay total
        return state, [Say(msg.STILL_WORKING)]
    filled = state.filled + ((slot.key, answer.strip()),)
    new_state = replace(state, filled=filled)
    if new_state.next_slot() is not None:
        return new_state, []
    by_key = dict(new_state.filled)
    ordered = tuple((s.key, by_key[s.key]) for s in state.schema.slots)
    turns = tuple(build_draft_prompt(state.intent, dict(ordered)))
    actions: list[EngineAction] = [
        ShowSummary(ordered),
        Say(msg.DRAFT_WORKING),
        ShowDisclaimer(msg.DRAFT_DISCLAIMER),
        CallBackend("draft", turns),
    ]
    return Fixing(state.intent, ()), actions


def _on_run(state: DialogState, deps: DialogDeps) -> Transition:
    if isinstance(state, DraftReview):
        candidate = state.current
        if candidate.runnable:
            return state, [Execute(candidate.ast, candidate.source)]
        count = len(candidate.diagnostics)
        return state, [
            Say(msg.TRYING_TO_RUN),
            Say(msg.RUN_BLOCKED.format(count=count)),
            OfferOptions((msg.OPTION_FIX,)),
        ]
    if isinstance(state, Fixing):
        return state, [Say(msg.STILL_WORKING)]
    return state, [Say(msg.NOTHING_TO_RUN)]


def _on_ask_edit(state: DialogState, instruction: str, deps: DialogDeps) -> Transition:
    if isinstance(state, DraftReview):
        turns = tuple(build_edit_prompt(state.current.source, instruction))
        actions: list[EngineAction] = [
            Say(msg.EDIT_WORKING),
            ShowDisclaimer(msg.FIX_DISCLAIMER),
            CallBackend("edit", turns),
        ]
        return Fixing(state.topic, state.candidates, state.current.source), actions
    if isinstance(state, Fixing):
        return state, [Say(msg.STILL_WORKING)]
    return state, [Say(msg.NOTHING_TO_EDIT)]


def _on_navigate(state: DialogState, delta: int) -> Transition:
    if not isinstance(state, DraftReview):
        return state, [Say(msg.NOTHING_TO_RUN)]
    cursor = max(0, min(len(state.candidates) - 1, state.cursor + delta))
    new_state = replace(state, cursor=cursor)
    return new_state, [
        PresentCandidate(new_state.current, cursor + 1, len(state.candidates))
    ]


def _on_follow_up(state: DialogState, text: str, deps: DialogDeps) -> Transition:
    if isinstance(state, Explaining):
        if not text.strip():
            return state, [Say(msg.EMPTY_PROMPT)]
        turns = tuple(build_followup_prompt(text))
        return state, [CallBackend("followup", turns)]
    # treat a stray follow-up like a plain message
    return _on_message(state, text, deps)


# -- backend completions ----------------------------------------------


def on_backend_response(state: DialogState, kind: str, text: str,
                        deps: DialogDeps) -> Transition:
    """Fold a model completion back into the conversation."""
    if kind == "clarify":
        intents = tuple(parse_intents(text))
        if not intents:
            return Clarifying(()), [
                Say(text),
                OfferOptions((msg.OPTION_CLARIFY, msg.OPTION_CHANGE_TOPIC)),
            ]
        return Clarifying(intents), [
            Say(msg.CLARIFY_HEADER),
            OfferOptions(intents + (msg.OPTION_CLARIFY, msg.OPTION_CHANGE_TOPIC)),
        ]

    if kind in ("explain", "followup"):
        actions: list[EngineAction] = [Say(text)]
        if isinstance(state, Explaining):
            actions.append(OfferOptions((msg.OPTION_FIX, msg.OPTION_CHANGE_TOPIC)))
        return state, actions

    if kind in ("draft", "fix", "edit"):
        if not isinstance(state, Fixing):
            return state, [Say(text)]
        version = len(state.candidates) + 1
        candidate = extract_candidate(text, version, deps.registry)
        if candidate is None:
            if state.candidates:
                review = DraftReview(state.topic, state.candidates, len(state.candidates) - 1)
                return review, [Say(msg.NO_CODE_IN_REPLY)]
            return Idle(), [Say(msg.NO_CODE_IN_REPLY)]
        candidates = (state.candidates + (candidate,))[-MAX_CANDIDATES:]
        review = DraftReview(state.topic, candidates, len(candidates) - 1)
        return review, [PresentCandidate(candidate, len(candidates), len(candidates))]

    return state, [Say(text)]
