"""Agent-context legality checking.

Walks a parsed program tracking which kind of agent the code would run
as: `ask turtles [...]` bodies check under turtle, `ask patches [...]`
under patch, `create-turtles n [...]` under turtle. When the agentset
cannot be inferred the body is checked conservatively against every kind
it could be.
"""

from __future__ import annotations

from .diagnostics import ILLEGAL_CONTEXT, NOT_SETTABLE, Diagnostic, error
from .primitives import (
    AgentContext,
    PrimitiveRegistry,
    PrimitiveSpec,
    SemanticType,
    contexts_slash,
)
from .syntax import Block, ColorName, CommandCall, Expr, Identifier, Number, Program, ReporterCall, StringLit

CONTEXT_ERROR_TEMPLATE = "You can't use {name} in a {context} context, because {name} is {legal}-only."

_AGENT_KINDS = frozenset({AgentContext.TURTLE, AgentContext.PATCH, AgentContext.LINK})


def check_context(ast: Program, start: AgentContext, registry: PrimitiveRegistry) -> list[Diagnostic]:
    """Return every context violation in the program; empty means legal."""
    checker = _Checker(registry)
    checker.check_statements(ast.statements, frozenset({start}))
    return checker.diagnostics


class _Checker:
    def __init__(self, registry: PrimitiveRegistry):
        self.registry = registry
        self.diagnostics: list[Diagnostic] = []

    def check_statements(self, statements, ctx: frozenset[AgentContext]) -> None:
        for stmt in statements:
            self.check_statement(stmt, ctx)

    def check_statement(self, stmt: CommandCall, ctx: frozenset[AgentContext]) -> None:
        spec = self.registry.lookup(stmt.name)
        if spec is None:
            return  # the parser already reported it
        self._require_legal(spec, stmt, ctx)

        name = stmt.name.lower()
        if name == "ask" and stmt.args:
            body_ctx = self._agentset_kinds(stmt.args[0]) or _AGENT_KINDS
            self.check_expr(stmt.args[0], ctx)
            for arg in stmt.args[1:]:
                if isinstance(arg, Block):
                    self.check_statements(arg.statements, body_ctx)
                else:
                    self.check_expr(arg, ctx)
            return
        if name == "create-turtles":
            for arg in stmt.args:
                if isinstance(arg, Block):
                    self.check_statements(arg.statements, frozenset({AgentContext.TURTLE}))
                else:
                    self.check_expr(arg, ctx)
            return
        if name == "set" and stmt.args:
            target = stmt.args[0]
            if isinstance(target, Identifier):
                var_spec = self.registry.lookup(target.name)
                if var_spec is not None:
                    if not var_spec.settable:
                        self.diagnostics.append(
                            error(
                                NOT_SETTABLE,
                                f"You can't SET {target.name.upper()}; it isn't a settable variable.",
                                target.span,
                                related=(target.name.lower(),),
                            )
                        )
                    else:
                        self._require_legal(var_spec, target, ctx)
            for arg in stmt.args[1:]:
                self.check_expr(arg, ctx)
            return

        for arg, param in zip(stmt.args, spec.params):
            if isinstance(arg, Block) and param.type is SemanticType.BLOCK:
                self.check_statements(arg.statements, ctx)
            else:
                self.check_expr(arg, ctx)

    def check_expr(self, expr: Expr, ctx: frozenset[AgentContext]) -> None:
        if isinstance(expr, (Number, StringLit, ColorName)):
            return
        if isinstance(expr, Identifier):
            spec = self.registry.lookup(expr.name)
            if spec is not None:
                self._require_legal(spec, expr, ctx)
            return
        if isinstance(expr, ReporterCall):
            spec = self.registry.lookup(expr.name)
            if spec is not None:
                self._require_legal(spec, expr, ctx)
            for arg in expr.args:
                self.check_expr(arg, ctx)
            return
        if isinstance(expr, Block):
            # reporter blocks (`of`) check under the same conservative rule
            self.check_statements(expr.statements, ctx)

    def _agentset_kinds(self, expr: Expr) -> frozenset[AgentContext] | None:
        """Which agent kinds could this agentset expression yield?"""
        if isinstance(expr, Identifier):
            spec = self.registry.lookup(expr.name)
            if spec is not None and spec.agent_kind is not None:
                return frozenset({spec.agent_kind})
            return None
        if isinstance(expr, ReporterCall) and expr.name.lower() == "one-of" and expr.args:
            return self._agentset_kinds(expr.args[0])
        return None

    def _require_legal(self, spec: PrimitiveSpec, node, ctx: frozenset[AgentContext]) -> None:
        illegal = [c for c in ctx if c not in spec.contexts]
        if not illegal:
            return
        current = sorted(illegal, key=lambda c: c.value)[0]
        name = spec.name.upper()
        message = CONTEXT_ERROR_TEMPLATE.format(
            name=name,
            context=current.value,
            legal=contexts_slash(spec.contexts),
        )
        self.diagnostics.append(
            error(ILLEGAL_CONTEXT, message, node.span, related=(spec.name.lower(),))
        )
