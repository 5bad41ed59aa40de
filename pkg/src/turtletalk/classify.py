"""Routing of raw user messages to one of the command center's pathways.

A deterministic, offline stand-in for an LLM router. Rules apply in a
fixed order:

1. blank input, or nothing but comments, is conversation;
2. `help <name>` is a help query;
3. a first token that isn't a known command means conversation
   (misspellings like `creat-turtles` land here on purpose);
4. common English function words anywhere mean conversation;
5. if fewer than half of the word tokens are known primitives, colors,
   or numbers-in-words, treat it as conversation;
6. otherwise it is code: clean parse + clean context check is ValidCode,
   anything else is BrokenCode with the full diagnostic list.
"""

from __future__ import annotations

from dataclasses import dataclass

from .context_check import check_context
from .diagnostics import Diagnostic
from .lexer import tokenize
from .parser import parse
from .primitives import AgentContext, PrimitiveKind, PrimitiveRegistry
from .syntax import Program
from .tokens import TokenKind

# Deliberately small and disjoint from the registry (tests enforce the
# disjointness). "of" is absent: it names a primitive.
FUNCTION_WORDS = frozenset(
    """
    i me my we our you your a an the to do does is are it this that these
    those want wants need needs would like please how what why where when
    who can could should shall make makes let turn go put draw change
    create add move around some any and or with for in on at by about
    """.split()
)


@dataclass(frozen=True)
class ValidCode:
    ast: Program


@dataclass(frozen=True)
class BrokenCode:
    diagnostics: tuple[Diagnostic, ...]


@dataclass(frozen=True)
class Natural:
    text: str


@dataclass(frozen=True)
class HelpQuery:
    name: str


InputClass = ValidCode | BrokenCode | Natural | HelpQuery


def classify(message: str, registry: PrimitiveRegistry,
             context: AgentContext = AgentContext.OBSERVER) -> InputClass:
    """Total and deterministic over arbitrary text; never raises."""
    if not message.strip():
        return Natural("")

    lex = tokenize(message)
    tokens = lex.tokens
    if not tokens:
        return Natural(message)

    first = tokens[0]
    if (
        first.kind is TokenKind.IDENT
        and first.lexeme.lower() == "help"
        and len(tokens) == 2
        and tokens[1].kind is TokenKind.IDENT
    ):
        return HelpQuery(tokens[1].lexeme)

    if first.kind is not TokenKind.IDENT:
        return Natural(message)
    first_spec = registry.lookup(first.lexeme)
    if first_spec is None or first_spec.kind is not PrimitiveKind.COMMAND:
        return Natural(message)

    idents = [t.lexeme for t in tokens if t.kind is TokenKind.IDENT]
    if any(name.lower() in FUNCTION_WORDS for name in idents):
        return Natural(message)
    recognized = sum(
        1 for name in idents if registry.lookup(name) is not None or registry.is_color(name)
    )
    if idents and recognized / len(idents) < 0.5:
        return Natural(message)

    if lex.diagnostics:
        return BrokenCode(tuple(lex.diagnostics))
    result = parse(lex, registry)
    if result.ast is None:
        return BrokenCode(tuple(result.diagnostics))
    context_diags = check_context(result.ast, context, registry)
    if context_diags:
        return BrokenCode(tuple(context_diags))
    return ValidCode(result.ast)
