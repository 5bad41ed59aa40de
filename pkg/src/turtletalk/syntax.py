"""Typed AST for the dialect.

Spans are carried for diagnostics and UI squiggles but excluded from
equality, so `parse(pretty_print(ast)) == ast` is a structural check.
Comments attach to the statement that follows them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .spans import Span


@dataclass(frozen=True)
class Number:
    value: float
    span: Span = field(compare=False)


@dataclass(frozen=True)
class StringLit:
    value: str
    span: Span = field(compare=False)


@dataclass(frozen=True)
class ColorName:
    """A color-constant identifier such as `red`, resolved to its numeric value."""

    name: str
    value: float
    span: Span = field(compare=False)


@dataclass(frozen=True)
class Identifier:
    """A name in expression position: an agentset, an agent variable, or a
    zero-argument reporter. Resolution happens at evaluation time."""

    name: str
    span: Span = field(compare=False)


@dataclass(frozen=True)
class ReporterCall:
    name: str
    args: tuple["Expr", ...]
    span: Span = field(compare=False)
    infix: bool = False


@dataclass(frozen=True)
class Block:
    statements: tuple["CommandCall", ...]
    span: Span = field(compare=False)
    trailing_comments: tuple[str, ...] = ()


Expr = Union[Number, StringLit, ColorName, Identifier, ReporterCall, Block]


@dataclass(frozen=True)
class CommandCall:
    name: str
    args: tuple[Expr, ...]
    span: Span = field(compare=False)
    comments: tuple[str, ...] = ()


@dataclass(frozen=True)
class Program:
    statements: tuple[CommandCall, ...]
    span: Span = field(compare=False)
    trailing_comments: tuple[str, ...] = ()


def walk_statements(node: Program | Block):
    """Yield every CommandCall in the tree, depth-first."""
    for stmt in node.statements:
        yield stmt
        for arg in stmt.args:
            if isinstance(arg, Block):
                yield from walk_statements(arg)


def child_spans(node) -> list[Span]:
    if isinstance(node, (Program, Block)):
        return [s.span for s in node.statements]
    if isinstance(node, (CommandCall, ReporterCall)):
        return [a.span for a in node.args]
    return []
