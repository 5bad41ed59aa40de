"""Arity-directed recursive descent parser.

The dialect has no call parentheses, so the registry's arities drive how
many arguments each command or reporter consumes. Prefix application binds
tighter than infix operators (`random 2 + 1` is `(random 2) + 1`). On an
unparseable statement the parser skips ahead to the next statement
boundary so one input can report several diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .diagnostics import (
    BAD_ARGUMENT,
    EXPECTED_COMMAND,
    MISSING_ARGUMENT,
    UNBALANCED_BLOCK,
    UNBALANCED_PAREN,
    UNKNOWN_IDENTIFIER,
    UNKNOWN_PRIMITIVE,
    Diagnostic,
    error,
)
from .lexer import LexResult, tokenize
from .primitives import PrimitiveKind, PrimitiveRegistry, PrimitiveSpec, SemanticType
from .spans import Span, cover
from .syntax import (
    Block,
    ColorName,
    CommandCall,
    Expr,
    Identifier,
    Number,
    Program,
    ReporterCall,
    StringLit,
)
from .tokens import Comment, Token, TokenKind


@dataclass
class ParseResult:
    """A parsed program, or the full list of recoverable diagnostics.

    `ast` is only set when there are no diagnostics at all; a partially
    recognized program is never handed to later stages.
    """

    ast: Program | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.ast is not None and not self.diagnostics


def parse(tokens: Sequence[Token] | LexResult, registry: PrimitiveRegistry,
          comments: Sequence[Comment] = ()) -> ParseResult:
    """Parse a token stream against the registry's arities."""
    if isinstance(tokens, LexResult):
        comments = tokens.comments
        tokens = tokens.tokens
    parser = _Parser(list(tokens), list(comments), registry)
    program = parser.run()
    if parser.diagnostics:
        return ParseResult(None, parser.diagnostics)
    return ParseResult(program, [])


def parse_source(source: str, registry: PrimitiveRegistry) -> ParseResult:
    """Tokenize and parse; lexing diagnostics count as parse failures."""
    lex = tokenize(source)
    result = parse(lex, registry)
    if lex.diagnostics:
        return ParseResult(None, lex.diagnostics + result.diagnostics)
    return result


class _Parser:
    def __init__(self, tokens: list[Token], comments: list[Comment], registry: PrimitiveRegistry):
        self.tokens = tokens
        self.comments = sorted(comments, key=lambda c: c.span.start)
        self.registry = registry
        self.pos = 0
        self.comment_pos = 0
        self.diagnostics: list[Diagnostic] = []

    # -- token helpers -------------------------------------------------

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def _end_span(self) -> Span:
        if self.tokens:
            end = self.tokens[-1].span.end
            return Span(end, end)
        return Span(0, 0)

    def report(self, code: str, message: str, span: Span, related: tuple[str, ...] = ()) -> None:
        self.diagnostics.append(error(code, message, span, related))

    def _take_comments_before(self, byte_offset: int | None) -> tuple[str, ...]:
        taken: list[str] = []
        while self.comment_pos < len(self.comments):
            comment = self.comments[self.comment_pos]
            if byte_offset is not None and comment.span.start > byte_offset:
                break
            taken.append(comment.text)
            self.comment_pos += 1
        return tuple(taken)

    # -- grammar -------------------------------------------------------

    def run(self) -> Program:
        statements: list[CommandCall] = []
        while not self.at_end():
            tok = self.peek()
            if tok.kind is TokenKind.CLOSE_BRACKET:
                self.report(UNBALANCED_BLOCK, "This closing bracket has no matching opening bracket.", tok.span)
                self.advance()
                continue
            if tok.kind is TokenKind.CLOSE_PAREN:
                self.report(UNBALANCED_PAREN, "This closing parenthesis has no matching opening parenthesis.", tok.span)
                self.advance()
                continue
            stmt = self.statement()
            if stmt is not None:
                statements.append(stmt)
        trailing = self._take_comments_before(None)
        if statements:
            span = cover(statements[0].span, statements[-1].span)
        else:
            span = Span(0, 0)
        return Program(tuple(statements), span, trailing)

    def statement(self) -> CommandCall | None:
        tok = self.peek()
        comments = self._take_comments_before(tok.span.start if tok else None)
        if tok is None:
            return None
        if tok.kind is not TokenKind.IDENT:
            self.report(EXPECTED_COMMAND, f"Expected a command, but got {tok.lexeme!r} instead.", tok.span)
            self.advance()
            self._recover()
            return None

        name = tok.lexeme
        upper = name.upper()
        spec = self.registry.lookup(name)
        if spec is None:
            code = EXPECTED_COMMAND if self.registry.is_color(name) else UNKNOWN_PRIMITIVE
            message = (
                f"Expected a command, but got the constant {upper} instead."
                if self.registry.is_color(name)
                else f"Nothing named {upper} has been defined."
            )
            self.report(code, message, tok.span, related=(name.lower(),))
            self.advance()
            self._recover()
            return None
        if spec.kind is not PrimitiveKind.COMMAND:
            self.report(
                EXPECTED_COMMAND,
                f"Expected a command, but got the reporter {upper} instead.",
                tok.span,
                related=(name.lower(),),
            )
            self.advance()
            self._recover()
            return None

        name_tok = self.advance()
        args: list[Expr] = []
        for param in spec.params:
            if param.optional:
                next_tok = self.peek()
                if param.type is SemanticType.BLOCK and next_tok is not None \
                        and next_tok.kind is TokenKind.OPEN_BRACKET:
                    args.append(self.block())
                continue
            arg = self.argument(spec, param.type, name_tok)
            if arg is None:
                self._recover()
                break
            args.append(arg)

        span = cover(name_tok.span, args[-1].span) if args else name_tok.span
        return CommandCall(name, tuple(args), span, comments)

    def argument(self, spec: PrimitiveSpec, expected: SemanticType, name_tok: Token) -> Expr | None:
        upper = spec.name.upper()
        tok = self.peek()
        if expected is SemanticType.BLOCK:
            if tok is None or tok.kind is not TokenKind.OPEN_BRACKET:
                self._missing_argument(spec, name_tok)
                return None
            return self.block()
        if expected is SemanticType.VARIABLE_NAME:
            if tok is None or tok.kind is not TokenKind.IDENT:
                self.report(
                    BAD_ARGUMENT,
                    f"{upper} expected a variable name here.",
                    tok.span if tok else self._end_span(),
                    related=(spec.name.lower(),),
                )
                return None
            self.advance()
            if self.registry.lookup(tok.lexeme) is None and not self.registry.is_color(tok.lexeme):
                self.report(
                    UNKNOWN_IDENTIFIER,
                    f"Nothing named {tok.lexeme.upper()} has been defined.",
                    tok.span,
                    related=(tok.lexeme.lower(),),
                )
            return Identifier(tok.lexeme, tok.span)

        arg = self.expression(0)
        if arg is None:
            self._missing_argument(spec, name_tok)
            return None
        if isinstance(arg, Block) and expected in (SemanticType.NUMBER, SemanticType.AGENTSET):
            self.report(
                BAD_ARGUMENT,
                f"{upper} expected a {expected.value} input, not a block.",
                arg.span,
                related=(spec.name.lower(),),
            )
        return arg

    def _missing_argument(self, spec: PrimitiveSpec, name_tok: Token) -> None:
        count = spec.arity
        plural = "" if count == 1 else "s"
        self.report(
            MISSING_ARGUMENT,
            f"{spec.name.upper()} expected {count} input{plural}.",
            name_tok.span,
            related=(spec.name.lower(),),
        )

    def expression(self, min_prec: int) -> Expr | None:
        left = self.application()
        if left is None:
            return None
        while True:
            tok = self.peek()
            if tok is None or tok.kind is not TokenKind.IDENT:
                return left
            spec = self.registry.lookup(tok.lexeme)
            if spec is None or not spec.infix or spec.precedence < min_prec:
                return left
            self.advance()
            right = self.expression(spec.precedence + 1)
            if right is None:
                self._missing_argument(spec, tok)
                return left
            left = ReporterCall(tok.lexeme, (left, right), cover(left.span, right.span), infix=True)

    def application(self) -> Expr | None:
        tok = self.peek()
        if tok is None:
            return None
        if tok.kind is TokenKind.NUMBER:
            self.advance()
            return Number(float(tok.lexeme), tok.span)
        if tok.kind is TokenKind.STRING:
            self.advance()
            text = tok.lexeme[1:]
            if text.endswith('"'):
                text = text[:-1]
            return StringLit(text, tok.span)
        if tok.kind is TokenKind.OPEN_PAREN:
            open_tok = self.advance()
            inner = self.expression(0)
            if inner is None:
                self.report(UNBALANCED_PAREN, "Expected an expression inside the parentheses.", open_tok.span)
                return None
            close = self.peek()
            if close is not None and close.kind is TokenKind.CLOSE_PAREN:
                self.advance()
                return replace(inner, span=cover(open_tok.span, close.span))
            self.report(UNBALANCED_PAREN, "This parenthesis is never closed.", open_tok.span)
            return inner
        if tok.kind is TokenKind.OPEN_BRACKET:
            return self.block()
        if tok.kind is not TokenKind.IDENT:
            return None

        name = tok.lexeme
        if self.registry.is_color(name):
            self.advance()
            return ColorName(name, self.registry.color_value(name), tok.span)
        spec = self.registry.lookup(name)
        if spec is None:
            self.advance()
            self.report(
                UNKNOWN_IDENTIFIER,
                f"Nothing named {name.upper()} has been defined.",
                tok.span,
                related=(name.lower(),),
            )
            return Identifier(name, tok.span)
        if spec.kind is PrimitiveKind.COMMAND or spec.infix:
            return None
        self.advance()
        if spec.arity == 0:
            return Identifier(name, tok.span)
        args: list[Expr] = []
        for _param in spec.params:
            arg = self.application()
            if arg is None:
                self._missing_argument(spec, tok)
                return None
            args.append(arg)
        return ReporterCall(name, tuple(args), cover(tok.span, args[-1].span), infix=False)

    def block(self) -> Block:
        open_tok = self.advance()
        statements: list[CommandCall] = []
        while True:
            tok = self.peek()
            if tok is None:
                self.report(UNBALANCED_BLOCK, "This block is never closed; add a closing bracket.", open_tok.span)
                trailing = self._take_comments_before(None)
                end = statements[-1].span if statements else open_tok.span
                return Block(tuple(statements), cover(open_tok.span, end), trailing)
            if tok.kind is TokenKind.CLOSE_BRACKET:
                trailing = self._take_comments_before(tok.span.start)
                close_tok = self.advance()
                return Block(tuple(statements), cover(open_tok.span, close_tok.span), trailing)
            stmt = self.statement()
            if stmt is not None:
                statements.append(stmt)

    def _recover(self) -> None:
        """Skip to the next statement boundary: a known command at the current
        bracket depth, a closing bracket, or end of input."""
        depth = 0
        while not self.at_end():
            tok = self.peek()
            if tok.kind is TokenKind.OPEN_BRACKET:
                depth += 1
            elif tok.kind is TokenKind.CLOSE_BRACKET:
                if depth == 0:
                    return
                depth -= 1
            elif tok.kind is TokenKind.IDENT and depth == 0:
                spec = self.registry.lookup(tok.lexeme)
                if spec is not None and spec.kind is PrimitiveKind.COMMAND:
                    return
            self.advance()
