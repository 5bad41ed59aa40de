"""Regenerate the recorded session fixtures under fixtures/.

Each fixture is a real session transcript (JSON lines, one event per
line) produced by driving the engine with the mock backend and a fixed
seed. Re-run after any engine change that intentionally alters the
event stream, then review the diff.
"""

from __future__ import annotations

import sys
from pathlib import Path

from turtletalk import dialog as dlg
from turtletalk.session import SessionConfig, create_session, handle

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def record(name: str, config: SessionConfig, events: list[dlg.UserEvent]) -> Path:
    session = create_session(config)
    for event in events:
        handle(session, event)
    path = FIXTURES / name
    path.write_text("".join(e.to_json() + "\n" for e in session.transcript), "utf-8")
    return path


def main() -> int:
    FIXTURES.mkdir(exist_ok=True)

    a2_inputs = [
        "create-turtles 100",
        "ask turtles [ fd random 10 ]",
        'print "hello world!"',
        "ask patches [ set color red ]",
        "help color",
        "help pcolor",
    ]
    record(
        "a2_command_center.jsonl",
        SessionConfig(assistant_enabled=False, seed=20230742),
        [dlg.RawMessage(text) for text in a2_inputs],
    )

    record(
        "a3_a4_error_options.jsonl",
        SessionConfig(seed=20230743),
        [
            dlg.RawMessage("create-turtles 100"),
            dlg.RawMessage("ask turtles [ fd random 10 ]"),
            dlg.RawMessage('print "hello world!"'),
            dlg.RawMessage("ask patches [ set color red ]"),
            dlg.OptionSelected("Explain the error"),
            dlg.FollowUp("Why is color only for turtles?"),
        ],
    )

    record(
        "a6_a7_a8_conversation.jsonl",
        SessionConfig(seed=20230746),
        [
            dlg.RawMessage("create moving turtles"),
            dlg.OptionSelected("Create turtles"),
            dlg.RawMessage("turtles"),
            dlg.RawMessage("10"),
            dlg.RawMessage("random"),
            dlg.RunRequested(),
            dlg.AskEdit("Now make the turtles move"),
            dlg.AskEdit("Set their heading to up first"),
            dlg.RunRequested(),
            dlg.OptionSelected("Help me fix this code"),
            dlg.RunRequested(),
        ],
    )

    for path in sorted(FIXTURES.glob("*.jsonl")):
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
