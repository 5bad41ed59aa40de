"""Lexer for the Logo-dialect command subset.

Identifiers use a wide character set, so infix operators like `+` or `<=`
lex as ordinary identifiers (the registry marks them infix). `create-turtles`
is a single identifier because `-` is an identifier character; a `-` that
starts a token and is glued to a digit starts a negative number literal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagnostics import UNEXPECTED_CHARACTER, UNTERMINATED_STRING, Diagnostic, error
from .spans import Span
from .tokens import Comment, Token, TokenKind

_IDENT_EXTRA = set("_-.?=*!<>:#+/%$^'&")

_PUNCT = {
    "[": TokenKind.OPEN_BRACKET,
    "]": TokenKind.CLOSE_BRACKET,
    "(": TokenKind.OPEN_PAREN,
    ")": TokenKind.CLOSE_PAREN,
}


def _is_digit(ch: str) -> bool:
    # ASCII only: unicode "digits" like ¹ lex as identifier characters
    return "0" <= ch <= "9"


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch in _IDENT_EXTRA


def _is_ident_start(ch: str) -> bool:
    return not _is_digit(ch) and _is_ident_char(ch)


@dataclass
class LexResult:
    """Tokens plus comment trivia and any lexing diagnostics.

    On a clean lex, token and comment spans are non-overlapping, strictly
    increasing, and together cover every non-whitespace byte of the source.
    """

    source: str
    tokens: list[Token] = field(default_factory=list)
    comments: list[Comment] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diagnostics


def tokenize(source: str) -> LexResult:
    """Tokenize arbitrary text; never raises, problems become diagnostics."""
    result = LexResult(source)
    chars = list(source)
    n = len(chars)
    i = 0
    byte = 0  # byte offset of chars[i]

    def width(ch: str) -> int:
        return len(ch.encode("utf-8"))

    while i < n:
        ch = chars[i]
        if ch.isspace():
            byte += width(ch)
            i += 1
            continue

        start_byte = i_byte = byte
        if ch == ";":
            j = i
            while j < n and chars[j] != "\n":
                i_byte += width(chars[j])
                j += 1
            text = source_slice(chars, i, j).lstrip(";")
            if text.startswith(" "):
                text = text[1:]
            result.comments.append(Comment(text, Span(start_byte, i_byte)))
            i, byte = j, i_byte
            continue

        if ch == '"':
            j = i + 1
            i_byte += width(ch)
            closed = False
            while j < n and chars[j] != "\n":
                i_byte += width(chars[j])
                j += 1
                if chars[j - 1] == '"':
                    closed = True
                    break
            span = Span(start_byte, i_byte)
            result.tokens.append(Token(TokenKind.STRING, source_slice(chars, i, j), span))
            if not closed:
                result.diagnostics.append(
                    error(UNTERMINATED_STRING, "This string never ends; add a closing double quote.", span)
                )
            i, byte = j, i_byte
            continue

        if ch in _PUNCT:
            i_byte += width(ch)
            result.tokens.append(Token(_PUNCT[ch], ch, Span(start_byte, i_byte)))
            i, byte = i + 1, i_byte
            continue

        if _is_digit(ch) or (ch == "-" and i + 1 < n and _is_digit(chars[i + 1])):
            j, i_byte = _scan_number(chars, i, i_byte)
            result.tokens.append(
                Token(TokenKind.NUMBER, source_slice(chars, i, j), Span(start_byte, i_byte))
            )
            i, byte = j, i_byte
            continue

        if _is_ident_start(ch):
            j = i
            while j < n and _is_ident_char(chars[j]):
                i_byte += width(chars[j])
                j += 1
            result.tokens.append(
                Token(TokenKind.IDENT, source_slice(chars, i, j), Span(start_byte, i_byte))
            )
            i, byte = j, i_byte
            continue

        i_byte += width(ch)
        result.diagnostics.append(
            error(UNEXPECTED_CHARACTER, f"I don't know what to do with {ch!r} here.", Span(start_byte, i_byte))
        )
        i, byte = i + 1, i_byte

    return result


def _scan_number(chars: list[str], i: int, byte: int) -> tuple[int, int]:
    """Scan [-]digits[.digits][(e|E)[+-]digits] starting at i."""
    n = len(chars)
    j = i
    if chars[j] == "-":
        byte += 1
        j += 1
    while j < n and _is_digit(chars[j]):
        byte += 1
        j += 1
    if j < n and chars[j] == "." and j + 1 < n and _is_digit(chars[j + 1]):
        byte += 1
        j += 1
        while j < n and _is_digit(chars[j]):
            byte += 1
            j += 1
    if j < n and chars[j] in "eE":
        k = j + 1
        if k < n and chars[k] in "+-":
            k += 1
        if k < n and _is_digit(chars[k]):
            while k < n and _is_digit(chars[k]):
                k += 1
            byte += k - j
            j = k
    return j, byte


def source_slice(chars: list[str], start: int, end: int) -> str:
    return "".join(chars[start:end])
