"""Canonical source rendering for ASTs.

Reparsing the output yields a structurally identical tree. Trailing block
arguments render multiline with two-space indents; infix calls are always
parenthesized; leading comments stay with their statement.
"""

from __future__ import annotations

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

_INDENT = "  "


def pretty_print(program: Program) -> str:
    lines: list[str] = []
    for stmt in program.statements:
        lines.extend(_statement_lines(stmt, 0))
    for comment in program.trailing_comments:
        lines.append(f"; {comment}")
    return "\n".join(lines)


def _statement_lines(stmt: CommandCall, depth: int) -> list[str]:
    pad = _INDENT * depth
    lines = [f"{pad}; {comment}" for comment in stmt.comments]
    last = stmt.args[-1] if stmt.args else None
    if isinstance(last, Block) and (last.statements or last.trailing_comments):
        head = " ".join([stmt.name] + [render_expr(a) for a in stmt.args[:-1]])
        lines.append(f"{pad}{head} [")
        for inner in last.statements:
            lines.extend(_statement_lines(inner, depth + 1))
        for comment in last.trailing_comments:
            lines.append(f"{pad}{_INDENT}; {comment}")
        lines.append(f"{pad}]")
    else:
        parts = [stmt.name] + [render_expr(a) for a in stmt.args]
        lines.append(pad + " ".join(parts))
    return lines


def render_expr(expr: Expr) -> str:
    if isinstance(expr, Number):
        return format_number(expr.value)
    if isinstance(expr, StringLit):
        return f'"{expr.value}"'
    if isinstance(expr, (ColorName, Identifier)):
        return expr.name
    if isinstance(expr, ReporterCall):
        if expr.infix:
            left, right = expr.args
            return f"({render_expr(left)} {expr.name} {render_expr(right)})"
        return " ".join([expr.name] + [render_expr(a) for a in expr.args])
    if isinstance(expr, Block):
        inner = " ".join(
            " ".join([s.name] + [render_expr(a) for a in s.args]) for s in expr.statements
        )
        return f"[ {inner} ]" if inner else "[]"
    raise TypeError(f"not an expression: {expr!r}")


def format_number(value: float) -> str:
    """Integer-valued numbers print without a decimal point."""
    if value.is_integer() and abs(value) < 2**53:
        return str(int(value))
    return repr(value)
