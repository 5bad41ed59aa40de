"""Acceptance suite: one test per release criterion, each printing a
PASS line with the criterion's name. Everything runs headless against
the engine and the shipped fixtures, under the mock backend only.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""

from __future__ import annotations

import json
import time
from collections import deque

from fuzz_support import ProgramGenerator
from turtletalk import dialog as dlg
from turtletalk.backends import MockBackend
from turtletalk.candidates import extract_candidate
from turtletalk.classify import BrokenCode, HelpQuery, Natural, ValidCode, classify
from turtletalk.context_check import check_context
from turtletalk.interp import execute
from turtletalk.parser import parse_source
from turtletalk.primitives import AgentContext, default_registry
from turtletalk.printer import pretty_print
from turtletalk.session import (
    SessionConfig,
    create_session,
    handle,
    load_transcript,
    render_event_lines,
    replay_transcript,
)
from turtletalk.world import Bounds, new_world

A2_TRANSCRIPT = """observer> create-turtles 100
The command was executed successfully.
observer> ask turtles [ fd random 10 ]
The command was executed successfully.
observer> print "hello world!"
hello world!
The command was executed successfully.
observer> ask patches [ set color red ]
Sorry, I can't understand: You can't use COLOR in a patch context, because COLOR is turtle/link-only.
observer> help color
color - Turtles, Links
Built-in turtle characteristic that the color of a turtle and allows us to change it. (full text)
See also: pcolor, scale-color, turtles-own, of
observer> help pcolor
pcolor - Turtles, Patches
Reports a patch's color and changes a patch's color when used with the set primitive. (full text)
See also: color, set, patches, neighbors"""

A7_LISTING = """; Create 10 turtles using the breed name "turtles"
create-turtles 10 [
  ; Set the turtles' positions randomly
  setxy random-xcor random-ycor
]"""


def test_a2_transcript_fidelity():
    """Criterion: replaying the six A.2 inputs byte-matches the transcript
    in under a second."""
    inputs = [
        "create-turtles 100",
        "ask turtles [ fd random 10 ]",
        'print "hello world!"',
        "ask patches [ set color red ]",
        "help color",
        "help pcolor",
    ]
    started = time.perf_counter()
    session = create_session(SessionConfig(assistant_enabled=False, seed=1))
    lines = []
    for text in inputs:
        lines.append(f"observer> {text}")
        for event in handle(session, dlg.RawMessage(text)):
            if event.origin == "engine":
                lines.extend(render_event_lines(event, assistant_enabled=False))
    elapsed = time.perf_counter() - started
    assert "\n".join(lines) == A2_TRANSCRIPT
    assert elapsed < 1.0, f"took {elapsed:.3f}s"
    print("\nACCEPTANCE PASS: A.2 transcript fidelity "
          f"(byte-exact, {elapsed * 1000:.0f} ms)")


def test_a3_a4_error_options_fidelity(fixtures_dir):
    """Criterion: broken input offers exactly the two AI options; Explain
    makes one backend call and lands in Explaining, which accepts
    follow-ups; the recorded event stream replays exactly."""
    session = create_session(SessionConfig(seed=20230743))
    events = handle(session, dlg.RawMessage("ask patches [ set color red ]"))
    offers = [e.payload for e in events if e.payload.get("type") == "offer-options"]
    assert offers == [{"type": "offer-options",
                       "options": ["Help me fix this code", "Explain the error"]}]
    assert isinstance(session.dialog, dlg.ErrorOptions)

    events = handle(session, dlg.OptionSelected("Explain the error"))
    calls = [e for e in events if e.payload.get("type") == "backend-call"]
    assert len(calls) == 1 and calls[0].payload["kind"] == "explain"
    assert isinstance(session.dialog, dlg.Explaining)

    events = handle(session, dlg.FollowUp("Why is color only for turtles?"))
    assert isinstance(session.dialog, dlg.Explaining)
    assert any(e.payload.get("type") == "backend-call" and e.payload["kind"] == "followup"
               for e in events)

    recorded = load_transcript(fixtures_dir / "a3_a4_error_options.jsonl")
    result = replay_transcript(recorded)
    assert result.ok, "\n".join(result.diff_lines())
    print("\nACCEPTANCE PASS: A.3/A.4 error-options pathway (golden stream match)")


def test_a6_a7_a8_conversation_fidelity(fixtures_dir):
    """Criterion: clarify intents + standing options, the exact A.6 slot
    chips, summary + disclaimer + a draft whose pretty-printed form is the
    A.7 listing, the A.8 run-block notice, and a comment-preserving fix."""
    registry = default_registry()
    session = create_session(SessionConfig(seed=20230746))

    events = handle(session, dlg.RawMessage("create moving turtles"))
    offers = [e.payload["options"] for e in events if e.payload.get("type") == "offer-options"]
    assert offers == [["Create turtles", "Make turtles move",
                       "Let me clarify it", "Let's change a topic"]]

    events = handle(session, dlg.OptionSelected("Create turtles"))
    questions = [e.payload["text"] for e in events if e.payload.get("type") == "say"]
    assert questions[0] == "Working on: create turtles"
    assert "What do you want to call the turtles in the code?" in questions
    assert "How many turtles do you want to create?" in questions
    assert "Where do you want to create the turtles?" in questions
    chips = [tuple(e.payload["options"]) for e in events
             if e.payload.get("type") == "offer-options"]
    assert ("turtles", "rabbits", "cars") in chips
    assert ("10", "50", "random between 20-30") in chips
    assert ("random", "at (0,0)", "around a specific patch") in chips

    handle(session, dlg.RawMessage("turtles"))
    handle(session, dlg.RawMessage("10"))
    events = handle(session, dlg.RawMessage("random"))
    payload_kinds = [e.payload["type"] for e in events if e.origin == "engine"]
    assert payload_kinds == ["show-summary", "say", "show-disclaimer",
                             "backend-call", "present-candidate"]
    summary = next(e.payload for e in events if e.payload["type"] == "show-summary")
    assert summary["slots"] == [["breed", "turtles"], ["number", "10"], ["position", "random"]]
    disclaimer = next(e.payload for e in events if e.payload["type"] == "show-disclaimer")
    assert disclaimer["text"] == "The code might have mistakes."
    draft = next(e.payload for e in events if e.payload["type"] == "present-candidate")
    assert (draft["cursor"], draft["total"]) == (1, 1)
    parsed = parse_source(draft["source"], registry)
    assert parsed.ok and pretty_print(parsed.ast) == A7_LISTING

    # inject the A.8 buggy candidate as the current draft and press Run
    buggy = ("; Move all turtles\nask turtle [\n  ; Set heading to up\n  set heading 90\n"
             "  ; Move forward random between 1-2 units\n  fd (1 + random 2)\n]")
    candidate = extract_candidate(f"```\n{buggy}\n```", 3, registry)
    assert len(candidate.diagnostics) == 1
    session.dialog = dlg.DraftReview("create turtles",
                                     (session.dialog.candidates[0], candidate, candidate)[:3], 2)
    session.dialog = dlg.DraftReview("create turtles", session.dialog.candidates, 2)
    events = handle(session, dlg.RunRequested())
    says = [e.payload["text"] for e in events if e.payload.get("type") == "say"]
    assert says[0] == "Trying to run the code..."
    assert says[1] == ("Sorry, but we need to fix the 1 errors in the code "
                       "(marked with red squiggly lines) before continuing.")

    events = handle(session, dlg.OptionSelected("Help me fix this code"))
    fixed = next(e.payload for e in events if e.payload.get("type") == "present-candidate")
    assert fixed["diagnostics"] == []
    assert "ask turtles [" in fixed["source"]
    assert "; Move all turtles" in fixed["source"]
    assert "; Set heading to up" in fixed["source"]
    says = [e.payload["text"] for e in events if e.payload.get("type") == "say"]
    assert says[0] == "Sure, I am working on the fixed code."
    disclaimers = [e.payload for e in events if e.payload.get("type") == "show-disclaimer"]
    assert disclaimers[0]["text"] == "Note that the code can still have mistakes."

    recorded = load_transcript(fixtures_dir / "a6_a7_a8_conversation.jsonl")
    result = replay_transcript(recorded)
    assert result.ok, "\n".join(result.diff_lines())
    print("\nACCEPTANCE PASS: A.6-A.7-A.8 conversation pathway (golden stream match)")


def _representative_states(registry):
    schema = dlg.schema_for("create turtles")
    clean = extract_candidate("```\ncreate-turtles 5\n```", 1, registry)
    buggy = extract_candidate("```\nask turtle [ fd 1 ]\n```", 1, registry)
    broken = classify("ask patches [ set color red ]", registry)
    return [
        dlg.Idle(),
        dlg.ErrorOptions("ask patches [ set color red ]", broken.diagnostics),
        dlg.Explaining("ask patches [ set color red ]", broken.diagnostics),
        dlg.Clarifying(("Create turtles", "Make turtles move")),
        dlg.Clarifying(()),
        dlg.SlotFilling("create turtles", schema),
        dlg.SlotFilling("create turtles", schema, (("breed", "turtles"), ("number", "10"))),
        dlg.DraftReview("t", (clean,), 0),
        dlg.DraftReview("t", (buggy,), 0),
        dlg.Fixing("t", (), "fd", broken.diagnostics),
        dlg.Fixing("t", (clean,), "fd 1"),
    ]


def _event_palette():
    return [
        dlg.RawMessage("create-turtles 1"),
        dlg.RawMessage("ask patches [ set color red ]"),
        dlg.RawMessage("create moving turtles"),
        dlg.RawMessage("help color"),
        dlg.RawMessage(""),
        dlg.OptionSelected("Help me fix this code"),
        dlg.OptionSelected("Explain the error"),
        dlg.OptionSelected("Let me clarify it"),
        dlg.OptionSelected("Let's change a topic"),
        dlg.OptionSelected("Create turtles"),
        dlg.OptionSelected("10"),
        dlg.RunRequested(),
        dlg.AskEdit("Now make the turtles move"),
        dlg.NavigateVersion(-1),
        dlg.NavigateVersion(1),
        dlg.FollowUp("why?"),
    ]


def _step(state, event, deps, backend):
    """Session-like driver: resolve backend calls, ignore world execution."""
    state, actions = dlg.advance(state, event, deps)
    queue = deque(actions)
    performed = []
    while queue:
        action = queue.popleft()
        performed.append(action)
        if isinstance(action, dlg.CallBackend):
            response = backend.complete(action.turns)
            state, more = dlg.on_backend_response(state, action.kind, response, deps)
            queue.extendleft(reversed(more))
    return state, performed


def _signature(state):
    name = type(state).__name__
    if isinstance(state, dlg.Clarifying):
        return (name, state.intents)
    if isinstance(state, dlg.SlotFilling):
        return (name, state.intent, tuple(k for k, _ in state.filled))
    if isinstance(state, dlg.DraftReview):
        return (name, len(state.candidates), state.cursor, state.current.runnable)
    if isinstance(state, dlg.Fixing):
        return (name, len(state.candidates))
    if isinstance(state, (dlg.ErrorOptions, dlg.Explaining)):
        return (name, tuple(d.code for d in state.diagnostics))
    return (name,)


def test_fsm_exhaustive_and_live():
    """Criterion: advance is total over the state-variant x event-variant
    product, and Idle is reachable from every reachable state."""
    registry = default_registry()
    deps = dlg.DialogDeps(registry=registry)
    backend = MockBackend()
    states = _representative_states(registry)
    events = _event_palette()

    variants_seen = set()
    for state in states:
        for event in events:
            new_state, actions = dlg.advance(state, event, deps)
            assert isinstance(new_state, dlg.STATE_VARIANTS)
            assert isinstance(actions, list)
            for action in actions:
                assert isinstance(action, (
                    dlg.Say, dlg.OfferOptions, dlg.ShowDiagnostics, dlg.PresentCandidate,
                    dlg.Execute, dlg.CallBackend, dlg.ShowSummary, dlg.ShowDisclaimer,
                ))
            variants_seen.add((type(state), type(event)))
    assert variants_seen >= {(s, e) for s in dlg.STATE_VARIANTS for e in dlg.EVENT_VARIANTS}

    # liveness: explore the reachable graph, then demand a path to Idle
    start = dlg.Idle()
    seen = {_signature(start)}
    frontier = deque([start])
    reachable = [start]
    while frontier and len(seen) < 400:
        state = frontier.popleft()
        for event in events:
            new_state, _ = _step(state, event, deps, backend)
            signature = _signature(new_state)
            if signature not in seen:
                seen.add(signature)
                reachable.append(new_state)
                frontier.append(new_state)

    # Fixing resolves inside a step under the synchronous mock, so it never
    # shows up as a rest state; the representative list covers it below.
    explored = {s[0] for s in seen}
    assert explored == {v.__name__ for v in dlg.STATE_VARIANTS} - {"Fixing"}, explored

    for state in reachable + states:
        assert _idle_reachable(state, deps, backend, events), _signature(state)
    print(f"\nACCEPTANCE PASS: FSM exhaustiveness ({len(states)}x{len(events)} "
          f"transitions) and liveness over {len(reachable) + len(states)} states")


def _idle_reachable(state, deps, backend, events, limit=200):
    seen = {_signature(state)}
    frontier = deque([state])
    while frontier and len(seen) < limit:
        current = frontier.popleft()
        if isinstance(current, dlg.Idle):
            return True
        for event in events:
            new_state, _ = _step(current, event, deps, backend)
            if isinstance(new_state, dlg.Idle):
                return True
            signature = _signature(new_state)
            if signature not in seen:
                seen.add(signature)
                frontier.append(new_state)
    return False


def test_soundness_fuzz_1000_programs():
    """Criterion: 1000 generated programs that pass check_context execute
    with zero context-class runtime errors."""
    registry = default_registry()
    generator = ProgramGenerator(seed=20230805)
    executed = 0
    generated = 0
    context_errors = []
    while executed < 1000:
        generated += 1
        assert generated < 20000, "generator starved the soundness fuzz"
        program = generator.messy_program()
        source = pretty_print(program)
        parsed = parse_source(source, registry)
        assert parsed.ok, (source, parsed.diagnostics)
        if check_context(parsed.ast, AgentContext.OBSERVER, registry):
            continue
        world = new_world(Bounds(-8, 8, -8, 8), seed=executed)
        outcome = execute(parsed.ast, world, registry)
        if outcome.error is not None and outcome.error.code in ("illegal-context", "dead-agent"):
            context_errors.append((source, outcome.error))
        executed += 1
    assert context_errors == []
    print(f"\nACCEPTANCE PASS: soundness fuzz (1000 checked programs executed, "
          f"0 context-class errors, {generated} generated)")


def test_replay_determinism_twice(fixtures_dir):
    """Criterion: every shipped transcript replays byte-for-byte, twice."""
    fixtures = sorted(fixtures_dir.glob("*.jsonl"))
    assert len(fixtures) >= 3
    for path in fixtures:
        events = load_transcript(path)
        first = replay_transcript(events)
        second = replay_transcript(events)
        assert first.ok, f"{path}\n" + "\n".join(first.diff_lines())
        assert second.ok
        assert json.dumps(first.actual).encode() == json.dumps(second.actual).encode()
        assert json.dumps(first.actual) == json.dumps(first.expected)
    print(f"\nACCEPTANCE PASS: replay determinism ({len(fixtures)} fixtures, "
          "double-run byte-identical)")


def test_round_trip_identity_1000_programs():
    """Criterion: parse(pretty_print(ast)) is structurally identical for
    1000 grammar-fuzzed programs."""
    registry = default_registry()
    generator = ProgramGenerator(seed=424242)
    for _ in range(1000):
        program = generator.program()
        printed = pretty_print(program)
        reparsed = parse_source(printed, registry)
        assert reparsed.ok, (printed, reparsed.diagnostics)
        assert reparsed.ast == program, printed
    print("\nACCEPTANCE PASS: parse-pretty_print round trip (1000 programs)")


def test_classifier_corpus_full_agreement():
    """Criterion: 100% agreement on the shipped 50-item corpus."""
    from importlib import resources

    registry = default_registry()
    corpus = json.loads(
        resources.files("turtletalk").joinpath("data/classifier_corpus.json").read_text("utf-8")
    )
    assert len(corpus) == 50
    labels = {ValidCode: "valid", BrokenCode: "broken", Natural: "natural", HelpQuery: "help"}
    appendix_inputs = {
        "create-turtles 100", "ask turtles [ fd random 10 ]", 'print "hello world!"',
        "ask patches [ set color red ]", "help color", "help pcolor",
        "create moving turtles", "Create turtles", "Make turtles move",
        "Let me clarify it", "Let's change a topic",
        "In NetLogo, how can I create some moving turtles?",
    }
    messages = {item["message"] for item in corpus}
    assert appendix_inputs <= messages
    for item in corpus:
        got = classify(item["message"], registry)
        assert labels[type(got)] == item["expected"], item
        if isinstance(got, HelpQuery):
            assert got.name == item["help_name"]
    print("\nACCEPTANCE PASS: classifier corpus (50/50 agreement, "
          "appendix inputs included)")
