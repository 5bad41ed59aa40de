"""turtletalk: a conversational command center for an agent-based Logo
dialect.

Well-formed commands execute against a turtle/patch world; malformed code
becomes a guided error-recovery conversation; natural-language requests
become slot-filling dialogs that co-develop runnable code with a
pluggable (and mockable) language-model backend.
"""

from .backends import ChatTurn, MockBackend, ModelBackend
from .candidates import CodeCandidate, extract_candidate
from .classify import BrokenCode, HelpQuery, InputClass, Natural, ValidCode, classify
from .context_check import check_context
from .diagnostics import Diagnostic, Severity
from .dialog import DialogDeps, DialogState, advance, schema_for
from .interp import ExecOutcome, execute
from .lexer import tokenize
from .parser import parse, parse_source
from .primitives import (
    AgentContext,
    HelpEntry,
    PrimitiveRegistry,
    PrimitiveSpec,
    default_registry,
    help_entry,
)
from .printer import pretty_print
from .session import Session, SessionConfig, SessionEvent, create_session, handle
from .spans import Span
from .world import Bounds, ViewModel, World, new_world, snapshot

__version__ = "0.1.0"

__all__ = [
    "AgentContext",
    "Bounds",
    "BrokenCode",
    "ChatTurn",
    "CodeCandidate",
    "Diagnostic",
    "DialogDeps",
    "DialogState",
    "ExecOutcome",
    "HelpEntry",
    "HelpQuery",
    "InputClass",
    "MockBackend",
    "ModelBackend",
    "Natural",
    "PrimitiveRegistry",
    "PrimitiveSpec",
    "Session",
    "SessionConfig",
    "SessionEvent",
    "Severity",
    "Span",
    "ValidCode",
    "ViewModel",
    "World",
    "advance",
    "check_context",
    "classify",
    "create_session",
    "default_registry",
    "execute",
    "extract_candidate",
    "handle",
    "help_entry",
    "new_world",
    "parse",
    "parse_source",
    "pretty_print",
    "schema_for",
    "snapshot",
    "tokenize",
]
