"""Command-line entry points.

    turtletalk repl     interactive command center (observer> prompt)
    turtletalk check    batch-check program files, print diagnostics
    turtletalk replay   re-run recorded session fixtures and compare
    turtletalk serve    HTTP + WebSocket API for the browser client

Exit codes: 0 ok, 1 diagnostics found / fixture divergence, 2 usage or
configuration errors. Flags beat the config file, which beats defaults;
environment variables override nothing.

`--format structured` emits one JSON record per line instead of human
text. `--render`/`--render-dir` additionally save world images next to
that output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dialog as dlg
from .context_check import check_context
from .parser import parse_source
from .primitives import AgentContext, default_registry
from .session import (
    ConfigError,
    SessionConfig,
    create_session,
    handle,
    load_transcript,
    render_event_lines,
    replay_transcript,
)

PROMPT = "observer> "


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.mode == "repl":
            return _run_repl(args, config)
        if args.mode == "check":
            return _run_check(args)
        if args.mode == "replay":
            return _run_replay(args)
        if args.mode == "serve":
            return _run_serve(args, config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser.print_usage(sys.stderr)
    return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="turtletalk", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="mode", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", type=Path, help="JSON config file")
        p.add_argument("--seed", type=int, help="world RNG seed")
        p.add_argument("--backend", help="assistant backend name (mock, http)")
        p.add_argument("--format", choices=("human", "structured"), default="human")

    repl = sub.add_parser("repl", help="interactive command center")
    common(repl)
    repl.add_argument("--no-assistant", action="store_true",
                      help="plain command center: no AI options")
    repl.add_argument("--render", type=Path, metavar="PATH",
                      help="save a world image on exit")
    repl.add_argument("--transcript-dir", type=Path,
                      help="directory for the session transcript (JSONL)")

    check = sub.add_parser("check", help="parse and context-check program files")
    common(check)
    check.add_argument("files", nargs="+", type=Path)

    replay = sub.add_parser("replay", help="replay recorded session fixtures")
    common(replay)
    replay.add_argument("fixtures", nargs="+", type=Path)
    replay.add_argument("--render-dir", type=Path,
                        help="save each fixture's final world image here")

    serve = sub.add_parser("serve", help="run the HTTP/WebSocket server")
    common(serve)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def _load_config(args: argparse.Namespace) -> SessionConfig:
    from dataclasses import replace

    config = SessionConfig.from_file(args.config) if args.config else SessionConfig()
    if getattr(args, "seed", None) is not None:
        config = replace(config, seed=args.seed)
    if getattr(args, "backend", None):
        config = replace(config, backend=args.backend)
    if getattr(args, "no_assistant", False):
        config = replace(config, assistant_enabled=False)
    if getattr(args, "transcript_dir", None):
        config = replace(config, transcript_dir=str(args.transcript_dir))
    return config


# -- repl ----------------------------------------------------------------


def _run_repl(args: argparse.Namespace, config: SessionConfig) -> int:
    session = create_session(config)
    structured = args.format == "structured"
    interactive = sys.stdin.isatty()
    if structured:
        for event in session.transcript:
            print(event.to_json())
    while True:
        try:
            if interactive:
                line = input(PROMPT)
            else:
                line = input()
                if not structured:
                    print(f"{PROMPT}{line}")
        except EOFError:
            break
        except KeyboardInterrupt:
            print()
            break
        event = _line_to_event(line, session)
        events = handle(session, event)
        for session_event in events:
            if structured:
                print(session_event.to_json())
            elif session_event.origin == "engine":
                for text in render_event_lines(session_event, config.assistant_enabled):
                    print(text)
    if args.render:
        from .view import save_view

        save_view(session.view(), args.render)
        print(f"saved world image to {args.render}", file=sys.stderr)
    return 0


def _line_to_event(line: str, session) -> dlg.UserEvent:
    """Typing an offered option's label selects it; anything else is a message."""
    stripped = line.strip()
    for option in session.offered:
        if stripped.lower() == option.lower():
            return dlg.OptionSelected(option)
    return dlg.RawMessage(line)


# -- check ----------------------------------------------------------------


def _run_check(args: argparse.Namespace) -> int:
    registry = default_registry()
    structured = args.format == "structured"
    failed = False
    for path in args.files:
        try:
            source = path.read_text("utf-8")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        result = parse_source(source, registry)
        diagnostics = list(result.diagnostics)
        if result.ast is not None:
            diagnostics.extend(check_context(result.ast, AgentContext.OBSERVER, registry))
        if diagnostics:
            failed = True
        if structured:
            for diag in diagnostics:
                record = {"file": str(path), **diag.to_dict()}
                print(json.dumps(record, separators=(",", ":")))
        else:
            for diag in diagnostics:
                span = f"{diag.span.start}-{diag.span.end}"
                print(f"{path}:{span}: {diag.severity.value}: {diag.message} [{diag.code}]")
            label = "error" if len(diagnostics) == 1 else "errors"
            print(f"{path}: {len(diagnostics)} {label}")
    return 1 if failed else 0


# -- replay ----------------------------------------------------------------


def _run_replay(args: argparse.Namespace) -> int:
    structured = args.format == "structured"
    for path in args.fixtures:
        try:
            events = load_transcript(path)
            result = replay_transcript(events)
        except (OSError, ValueError) as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            return 2
        if args.render_dir:
            _render_fixture_world(events, args.render_dir / f"{path.stem}.png")
        if structured:
            print(json.dumps({"fixture": str(path), "status": "pass" if result.ok else "fail"},
                             separators=(",", ":")))
        else:
            print(f"{'PASS' if result.ok else 'FAIL'} {path}")
        if not result.ok:
            if not structured:
                for line in result.diff_lines():
                    print(line)
            return 1
    return 0


def _render_fixture_world(events, path: Path) -> None:
    from .session import user_event_from_payload
    from .view import save_view
    from .world import Bounds

    head = events[0].payload
    bounds = head.get("bounds")
    config = SessionConfig(
        backend="mock",
        assistant_enabled=head.get("assistant", True),
        error_options=tuple(head.get("options", ("fix", "explain"))),
        bounds=Bounds(*bounds) if bounds else SessionConfig().bounds,
        seed=head["seed"],
    )
    session = create_session(config)
    for event in events:
        if event.origin == "user":
            handle(session, user_event_from_payload(event.payload))
    save_view(session.view(), path)


# -- serve ----------------------------------------------------------------


def _run_serve(args: argparse.Namespace, config: SessionConfig) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(config)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    sys.exit(main())
