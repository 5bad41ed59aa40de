"""Diagnostics emitted by the lexer, parser, context checker, and runtime.

Codes are part of the public contract: transcripts, fixtures, and UI
clients match on them, so they must stay stable across releases.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

from .spans import Span


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


# Lexing
UNTERMINATED_STRING = "unterminated-string"
UNEXPECTED_CHARACTER = "unexpected-character"

# Parsing
UNKNOWN_PRIMITIVE = "unknown-primitive"
UNKNOWN_IDENTIFIER = "unknown-identifier"
EXPECTED_COMMAND = "expected-command"
MISSING_ARGUMENT = "missing-argument"
UNBALANCED_BLOCK = "unbalanced-block"
UNBALANCED_PAREN = "unbalanced-paren"
BAD_ARGUMENT = "bad-argument"

# Context checking
ILLEGAL_CONTEXT = "illegal-context"
NOT_SETTABLE = "not-settable"

# Runtime
DIVISION_BY_ZERO = "division-by-zero"
UNSUPPORTED_PRIMITIVE = "unsupported-primitive"
DEAD_AGENT = "dead-agent"


@dataclass(frozen=True)
class Diagnostic:
    """One problem found in a piece of source, anchored to a byte span."""

    severity: Severity
    code: str
    message: str
    span: Span
    related: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.message:
            raise ValueError("diagnostic message must be non-empty")

    def to_dict(self) -> dict[str, Any]:
        return {
            "severity": self.severity.value,
            "code": self.code,
            "message": self.message,
            "start": self.span.start,
            "end": self.span.end,
            "related": list(self.related),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Diagnostic:
        return cls(
            severity=Severity(data["severity"]),
            code=data["code"],
            message=data["message"],
            span=Span(data["start"], data["end"]),
            related=tuple(data.get("related", ())),
        )


def error(code: str, message: str, span: Span, related: tuple[str, ...] = ()) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, span, related)


def warning(code: str, message: str, span: Span, related: tuple[str, ...] = ()) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, span, related)
