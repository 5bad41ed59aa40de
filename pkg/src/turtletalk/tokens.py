"""Token and trivia types produced by the lexer."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .spans import Span


class TokenKind(Enum):
    IDENT = "identifier"
    NUMBER = "number"
    STRING = "string"
    OPEN_BRACKET = "open-bracket"
    CLOSE_BRACKET = "close-bracket"
    OPEN_PAREN = "open-paren"
    CLOSE_PAREN = "close-paren"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: Span


@dataclass(frozen=True)
class Comment:
    """A `;` comment, kept out of the token stream but preserved for span
    accounting and for re-attaching to statements when parsing."""

    text: str  # comment body without the leading `;` and one optional space
    span: Span
