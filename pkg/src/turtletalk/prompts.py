"""Prompt builders for each assistant pathway.

All builders are pure: the same inputs produce the same turn list. The
system turns encode the house style — novice-first explanations, no
unrequested walls of code, and an explicit admission that generated code
can be wrong.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .backends import ChatTurn
from .diagnostics import Diagnostic

_EXPLAIN_SYSTEM = (
    "You are a patient programming helper inside an agent-based modeling "
    "environment for the Logo language family. Explain the error to a novice "
    "in plain language, in a few short sentences. Do not paste a full "
    "corrected program unless the learner asks for one. You may be wrong "
    "sometimes; say so when unsure."
)

_FIX_SYSTEM = (
    "You are a careful programming helper for a Logo-family language. Return "
    "the smallest edit that fixes the reported errors, keeping the learner's "
    "comments and structure intact. Reply with the complete revised program "
    "in a single fenced code block. The code may still contain mistakes; do "
    "not claim it is certainly correct."
)

_CLARIFY_SYSTEM = (
    "You are a friendly guide for learners building agent-based models in a "
    "Logo-family language. Split the learner's request into at most 4 "
    "separate intents with short labels of a few words each. Reply with one "
    "intent per line, each line starting with '- '. Do not write code yet "
    "and do not give step-by-step instructions."
)

_DRAFT_SYSTEM = (
    "You are a collaborative programming partner for a Logo-family language. "
    "Write a short commented program that does exactly what the request "
    "summary asks, nothing more. Reply with a single fenced code block and "
    "no step-by-step instructions. The code may contain mistakes; it will be "
    "checked before it runs."
)

_EDIT_SYSTEM = (
    "You are a collaborative programming partner for a Logo-family language. "
    "Revise the learner's program to follow their instruction, changing as "
    "little as possible and keeping their comments. Reply with the complete "
    "revised program in a single fenced code block."
)

_FOLLOWUP_SYSTEM = (
    "You are a patient programming helper. Answer the learner's follow-up "
    "question about the error you just explained, briefly and honestly."
)


def _render_diagnostics(source: str, diagnostics: Sequence[Diagnostic]) -> str:
    lines = [f"The learner's code:", "```", source, "```",
             f"It has {len(diagnostics)} error(s):"]
    for diag in diagnostics:
        lines.append(f"- {diag.message}")
    return "\n".join(lines)


def build_explain_prompt(diagnostics: Sequence[Diagnostic], source: str,
                         history: Sequence[ChatTurn] = ()) -> list[ChatTurn]:
    """Prompt that asks for a novice-level explanation of the errors."""
    if not diagnostics:
        raise ValueError("explain prompt needs at least one diagnostic")
    user = _render_diagnostics(source, diagnostics) + "\n\nPlease explain the error."
    return [ChatTurn("system", _EXPLAIN_SYSTEM), *history, ChatTurn("user", user)]


def build_fix_prompt(diagnostics: Sequence[Diagnostic], source: str,
                     history: Sequence[ChatTurn] = ()) -> list[ChatTurn]:
    """Prompt that asks for a minimal fix, comments preserved."""
    if not diagnostics:
        raise ValueError("fix prompt needs at least one diagnostic")
    user = _render_diagnostics(source, diagnostics) + "\n\nPlease fix the code with the smallest change."
    return [ChatTurn("system", _FIX_SYSTEM), *history, ChatTurn("user", user)]


def build_clarify_prompt(message: str, history: Sequence[ChatTurn] = ()) -> list[ChatTurn]:
    """Prompt that decomposes a natural-language request into intents."""
    user = f"The learner says: {message}\n\nList the separate intents you see."
    return [ChatTurn("system", _CLARIFY_SYSTEM), *history, ChatTurn("user", user)]


def build_draft_prompt(intent: str, slots: Mapping[str, str]) -> list[ChatTurn]:
    """Prompt that turns a filled slot summary into a first code draft."""
    missing = [key for key, value in slots.items() if not value]
    if missing:
        raise ValueError(f"unfilled required slot(s): {', '.join(missing)}")
    summary = "\n".join(f"- {key}: {value}" for key, value in slots.items())
    user = f"Below is a summary of my request:\n{summary}\n\nIntent: {intent}\nPlease write the code."
    return [ChatTurn("system", _DRAFT_SYSTEM), ChatTurn("user", user)]


def build_edit_prompt(source: str, instruction: str,
                      history: Sequence[ChatTurn] = ()) -> list[ChatTurn]:
    """Prompt that revises an existing draft per a natural-language ask."""
    user = (f"Current program:\n```\n{source}\n```\n\n"
            f"Instruction: {instruction}\nPlease revise the code.")
    return [ChatTurn("system", _EDIT_SYSTEM), *history, ChatTurn("user", user)]


def build_followup_prompt(question: str, history: Sequence[ChatTurn] = ()) -> list[ChatTurn]:
    """Prompt for a free-form follow-up after an explanation."""
    user = f"Follow-up question: {question}"
    return [ChatTurn("system", _FOLLOWUP_SYSTEM), *history, ChatTurn("user", user)]
