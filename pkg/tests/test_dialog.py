from __future__ import annotations

import pytest

from turtletalk import dialog as dlg
from turtletalk import messages as msg
from turtletalk.backends import MockBackend
from turtletalk.candidates import extract_candidate


@pytest.fixture
def deps(registry):
    return dlg.DialogDeps(registry=registry)


@pytest.fixture
def plain_deps(registry):
    return dlg.DialogDeps(registry=registry, assistant_enabled=False)


def drive(state, events, deps, backend=None):
    """Apply events like the session layer does, resolving backend calls."""
    backend = backend or MockBackend()
    collected = []
    for event in events:
        state, actions = dlg.advance(state, event, deps)
        queue = list(actions)
        while queue:
            action = queue.pop(0)
            collected.append(action)
            if isinstance(action, dlg.CallBackend):
                response = backend.complete(action.turns)
                state, more = dlg.on_backend_response(state, action.kind, response, deps)
                queue[:0] = more
    return state, collected


def action_types(actions):
    return [type(a).__name__ for a in actions]


# -- error options pathway ------------------------------------------------


def test_broken_code_offers_exactly_two_options(deps):
    state, actions = dlg.advance(dlg.Idle(), dlg.RawMessage("ask patches [ set color red ]"), deps)
    assert isinstance(state, dlg.ErrorOptions)
    offers = [a for a in actions if isinstance(a, dlg.OfferOptions)]
    assert offers[0].options == ("Help me fix this code", "Explain the error")
    shows = [a for a in actions if isinstance(a, dlg.ShowDiagnostics)]
    assert len(shows[0].diagnostics) == 1


def test_plain_mode_has_no_options(plain_deps):
    state, actions = dlg.advance(dlg.Idle(), dlg.RawMessage("ask patches [ set color red ]"), plain_deps)
    assert isinstance(state, dlg.Idle)
    assert not any(isinstance(a, dlg.OfferOptions) for a in actions)


def test_explain_then_follow_up(deps):
    state, actions = drive(
        dlg.Idle(),
        [dlg.RawMessage("ask patches [ set color red ]"), dlg.OptionSelected("Explain the error")],
        deps,
    )
    assert isinstance(state, dlg.Explaining)
    calls = [a for a in actions if isinstance(a, dlg.CallBackend)]
    assert [c.kind for c in calls] == ["explain"]

    state, actions = drive(state, [dlg.FollowUp("why?")], deps)
    assert isinstance(state, dlg.Explaining)
    assert [c.kind for c in actions if isinstance(c, dlg.CallBackend)] == ["followup"]


def test_explaining_fix_option_starts_fix(deps):
    state, _ = drive(
        dlg.Idle(),
        [dlg.RawMessage("ask patches [ set color red ]"), dlg.OptionSelected("Explain the error")],
        deps,
    )
    state, actions = dlg.advance(state, dlg.OptionSelected("Help me fix this code"), deps)
    assert isinstance(state, dlg.Fixing)
    kinds = action_types(actions)
    assert kinds == ["Say", "ShowDisclaimer", "CallBackend"]


# -- execution bypass -------------------------------------------------------


@pytest.mark.parametrize(
    "state_factory",
    [
        lambda: dlg.Idle(),
        lambda: dlg.ErrorOptions("fd", ()),
        lambda: dlg.Clarifying(("Create turtles",)),
    ],
)
def test_valid_code_executes_from_any_state(state_factory, deps):
    state, actions = dlg.advance(state_factory(), dlg.RawMessage("create-turtles 5"), deps)
    assert any(isinstance(a, dlg.Execute) for a in actions)


# -- clarify and slot filling ----------------------------------------------


def test_clarify_flow_matches_transcript(deps):
    state, actions = drive(dlg.Idle(), [dlg.RawMessage("create moving turtles")], deps)
    assert state == dlg.Clarifying(("Create turtles", "Make turtles move"))
    says = [a.text for a in actions if isinstance(a, dlg.Say)]
    assert msg.CLARIFY_HEADER in says
    offers = [a for a in actions if isinstance(a, dlg.OfferOptions)]
    assert offers[0].options == (
        "Create turtles", "Make turtles move", "Let me clarify it", "Let's change a topic",
    )


def test_slot_filling_questions_and_chips(deps):
    state = dlg.Clarifying(("Create turtles", "Make turtles move"))
    state, actions = dlg.advance(state, dlg.OptionSelected("Create turtles"), deps)
    assert isinstance(state, dlg.SlotFilling)
    says = [a.text for a in actions if isinstance(a, dlg.Say)]
    assert says[0] == "Working on: create turtles"
    assert says[1] == msg.SLOT_INTRO
    assert "What do you want to call the turtles in the code?" in says
    assert "How many turtles do you want to create?" in says
    assert "Where do you want to create the turtles?" in says
    chips = [a.options for a in actions if isinstance(a, dlg.OfferOptions)]
    assert ("turtles", "rabbits", "cars") in chips
    assert ("10", "50", "random between 20-30") in chips
    assert ("random", "at (0,0)", "around a specific patch") in chips


def test_schema_for_known_and_fallback():
    schema = dlg.schema_for("Create turtles")
    assert [s.key for s in schema.slots] == ["breed", "number", "position"]
    assert schema.intent == "Create turtles"
    move = dlg.schema_for("make turtles move")
    assert [s.key for s in move.slots] == ["direction", "distance"]
    fallback = dlg.schema_for("paint the sky")
    assert len(fallback.slots) == 1 and fallback.slots[0].required
    assert fallback.intent == "paint the sky"


def test_slot_fill_to_draft(deps):
    state = dlg.Clarifying(("Create turtles",))
    state, _ = dlg.advance(state, dlg.OptionSelected("Create turtles"), deps)
    state, actions = drive(state, [dlg.RawMessage("turtles"), dlg.RawMessage("10"),
                                   dlg.RawMessage("random")], deps)
    assert isinstance(state, dlg.DraftReview)
    assert state.current.version == 1
    summary = [a for a in actions if isinstance(a, dlg.ShowSummary)]
    assert summary[0].slots == (("breed", "turtles"), ("number", "10"), ("position", "random"))
    # disclaimer precedes the candidate
    kinds = action_types(actions)
    assert kinds.index("ShowDisclaimer") < kinds.index("PresentCandidate")


def test_chip_click_fills_owning_slot(deps):
    state = dlg.Clarifying(("Create turtles",))
    state, _ = dlg.advance(state, dlg.OptionSelected("Create turtles"), deps)
    state, _ = dlg.advance(state, dlg.OptionSelected("10"), deps)  # number chip first
    assert dict(state.filled) == {"number": "10"}


def test_misspelled_slot_answer_stored_verbatim(deps):
    state = dlg.SlotFilling("create turtles", dlg.schema_for("create turtles"))
    state, _ = dlg.advance(state, dlg.RawMessage("turtels"), deps)
    assert dict(state.filled) == {"breed": "turtels"}


# -- draft review -------------------------------------------------------------


def make_review(registry, source="create-turtles 5", version=1):
    candidate = extract_candidate(f"```\n{source}\n```", version, registry)
    return dlg.DraftReview("create turtles", (candidate,), 0)


def test_run_clean_candidate_executes(deps, registry):
    state = make_review(registry)
    new_state, actions = dlg.advance(state, dlg.RunRequested(), deps)
    assert new_state == state
    assert action_types(actions) == ["Execute"]


def test_run_buggy_candidate_blocks_with_count(deps, registry):
    state = make_review(registry, "ask turtle [ fd 1 ]")
    _, actions = dlg.advance(state, dlg.RunRequested(), deps)
    says = [a.text for a in actions if isinstance(a, dlg.Say)]
    assert says[0] == "Trying to run the code..."
    assert says[1] == ("Sorry, but we need to fix the 1 errors in the code "
                       "(marked with red squiggly lines) before continuing.")
    offers = [a for a in actions if isinstance(a, dlg.OfferOptions)]
    assert offers[0].options == ("Help me fix this code",)


def test_ask_edit_makes_new_version(deps, registry):
    state = make_review(registry)
    state, actions = drive(state, [dlg.AskEdit("Now make the turtles move")], deps)
    assert isinstance(state, dlg.DraftReview)
    assert len(state.candidates) == 2
    assert state.current.version == 2
    present = [a for a in actions if isinstance(a, dlg.PresentCandidate)]
    assert (present[0].cursor, present[0].total) == (2, 2)


def test_navigate_version_clamps(deps, registry):
    candidate1 = extract_candidate("```\nfd 1\n```", 1, registry)
    candidate2 = extract_candidate("```\nfd 2\n```", 2, registry)
    state = dlg.DraftReview("t", (candidate1, candidate2), 1)
    state, actions = dlg.advance(state, dlg.NavigateVersion(-1), deps)
    assert state.cursor == 0
    present = [a for a in actions if isinstance(a, dlg.PresentCandidate)]
    assert (present[0].cursor, present[0].total) == (1, 2)
    state, _ = dlg.advance(state, dlg.NavigateVersion(-1), deps)
    assert state.cursor == 0  # clamped at the start
    state, _ = dlg.advance(state, dlg.NavigateVersion(5), deps)
    assert state.cursor == 1  # clamped at the end


def test_fix_from_draft_review_preserves_comments(deps, registry):
    buggy = ("; Move all turtles\nask turtle [\n  ; Set heading to up\n  set heading 90\n"
             "  ; Move forward random between 1-2 units\n  fd (1 + random 2)\n]")
    state = make_review(registry, buggy, version=3)
    state, actions = drive(state, [dlg.OptionSelected("Help me fix this code")], deps)
    assert isinstance(state, dlg.DraftReview)
    fixed = state.current
    assert fixed.runnable
    assert "ask turtles [" in fixed.source
    assert "; Move all turtles" in fixed.source
    says = [a.text for a in actions if isinstance(a, dlg.Say)]
    assert says[0] == msg.FIX_WORKING
    disclaimers = [a for a in actions if isinstance(a, dlg.ShowDisclaimer)]
    assert disclaimers[0].text == msg.FIX_DISCLAIMER


# -- option discipline and liveness ------------------------------------------


def test_unknown_option_is_recoverable(deps):
    state = dlg.Clarifying(("Create turtles",))
    new_state, actions = dlg.advance(state, dlg.OptionSelected("Paint the moon"), deps)
    assert new_state == state
    assert [a.text for a in actions] == [msg.CHOOSE_OFFERED]


def test_change_topic_returns_to_idle_from_everywhere(deps, registry):
    states = [
        dlg.Idle(),
        dlg.ErrorOptions("fd", ()),
        dlg.Explaining("fd", ()),
        dlg.Clarifying(("Create turtles",)),
        dlg.SlotFilling("create turtles", dlg.schema_for("create turtles")),
        make_review(registry),
        dlg.Fixing("t"),
    ]
    for state in states:
        new_state, _ = dlg.advance(state, dlg.OptionSelected(msg.OPTION_CHANGE_TOPIC), deps)
        assert isinstance(new_state, dlg.Idle), state


def test_version_history_capped(deps, registry):
    state = make_review(registry)
    for index in range(25):
        state, _ = drive(state, [dlg.AskEdit("Now make the turtles move")], deps)
    assert len(state.candidates) == dlg.MAX_CANDIDATES
