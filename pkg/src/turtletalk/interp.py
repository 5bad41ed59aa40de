"""Deterministic execution of checked programs against a world.

Programs are expected to have passed check_context first; running code the
checker rejected is a caller bug, and any context problem that slips
through surfaces as an illegal-context runtime error rather than silent
misbehavior. Statements run in order with no rollback: on a runtime error
the world keeps every mutation made before the failing statement.

Iteration order is deterministic: `ask turtles` visits turtles in id
order, `ask patches` visits patches row-major from the top-left. (The
reference language family randomizes agentset order; we trade that
fidelity for reproducible fixtures.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

from .diagnostics import (
    BAD_ARGUMENT,
    DEAD_AGENT,
    DIVISION_BY_ZERO,
    ILLEGAL_CONTEXT,
    UNSUPPORTED_PRIMITIVE,
    Diagnostic,
    error,
)
from .primitives import AgentContext, PrimitiveRegistry
from .printer import format_number
from .syntax import Block, ColorName, CommandCall, Expr, Identifier, Number, Program, ReporterCall, StringLit
from .world import COLOR_WHEEL, World


class _Nobody:
    def __repr__(self) -> str:
        return "nobody"


NOBODY = _Nobody()


@dataclass(frozen=True)
class AgentsetRef:
    kind: AgentContext


@dataclass(frozen=True)
class TurtleRef:
    id: int


@dataclass(frozen=True)
class PatchRef:
    x: int
    y: int


Value = Union[float, str, bool, AgentsetRef, TurtleRef, PatchRef, _Nobody]


class ExecStatus(Enum):
    SUCCESS = "success"
    RUNTIME_ERROR = "runtime-error"


@dataclass
class ExecOutcome:
    status: ExecStatus
    output_lines: list[str]
    world: World
    error: Diagnostic | None = None

    @property
    def ok(self) -> bool:
        return self.status is ExecStatus.SUCCESS


class _RuntimeFailure(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


class _AgentDied(Exception):
    """Control flow: `die` ends the dying agent's block immediately."""


def execute(ast: Program, world: World, registry: PrimitiveRegistry) -> ExecOutcome:
    """Run a program, mutating the world in place."""
    interp = _Interpreter(world, registry)
    try:
        interp.run_statements(ast.statements, _OBSERVER)
    except _RuntimeFailure as failure:
        return ExecOutcome(ExecStatus.RUNTIME_ERROR, interp.printed, world, failure.diagnostic)
    except _AgentDied:  # can't happen for checked programs; die is turtle-only
        pass
    return ExecOutcome(ExecStatus.SUCCESS, interp.printed, world)


def format_value(value: Value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, str):
        return value
    if isinstance(value, AgentsetRef):
        return f"(agentset of {value.kind.value} agents)"
    if isinstance(value, TurtleRef):
        return f"(turtle {value.id})"
    if isinstance(value, PatchRef):
        return f"(patch {value.x} {value.y})"
    return "nobody"


class _ObserverCtx:
    kind = AgentContext.OBSERVER


_OBSERVER = _ObserverCtx()


@dataclass
class _TurtleCtx:
    turtle_id: int
    kind = AgentContext.TURTLE


@dataclass
class _PatchCtx:
    x: int
    y: int
    kind = AgentContext.PATCH


class _Interpreter:
    def __init__(self, world: World, registry: PrimitiveRegistry):
        self.world = world
        self.registry = registry
        self.printed: list[str] = []

    # -- statements ----------------------------------------------------

    def run_statements(self, statements, ctx) -> None:
        for stmt in statements:
            self.run_statement(stmt, ctx)

    def run_statement(self, stmt: CommandCall, ctx) -> None:
        name = stmt.name.lower()
        handler = _COMMANDS.get(name)
        if handler is None:
            raise _RuntimeFailure(
                error(
                    UNSUPPORTED_PRIMITIVE,
                    f"{stmt.name.upper()} can't be run from the command center.",
                    stmt.span,
                    related=(name,),
                )
            )
        handler(self, stmt, ctx)

    def _cmd_print(self, stmt: CommandCall, ctx) -> None:
        value = self.eval(stmt.args[0], ctx)
        line = format_value(value)
        self.world.output.append(line)
        self.printed.append(line)

    def _cmd_ask(self, stmt: CommandCall, ctx) -> None:
        target = self.eval(stmt.args[0], ctx)
        block = stmt.args[1]
        if not isinstance(block, Block):
            raise self._bad_argument(stmt, "ASK needs a command block.")
        if isinstance(target, AgentsetRef):
            if target.kind is AgentContext.TURTLE:
                for turtle_id in sorted(self.world.turtles):
                    if turtle_id in self.world.turtles:  # it may have died this pass
                        self._run_agent(block, _TurtleCtx(turtle_id))
            elif target.kind is AgentContext.PATCH:
                for y in range(self.world.bounds.max_y, self.world.bounds.min_y - 1, -1):
                    for x in range(self.world.bounds.min_x, self.world.bounds.max_x + 1):
                        self._run_agent(block, _PatchCtx(x, y))
            else:
                raise self._bad_argument(stmt, "ASK can't iterate that agentset here.")
        elif isinstance(target, TurtleRef):
            if target.id in self.world.turtles:
                self._run_agent(block, _TurtleCtx(target.id))
        elif isinstance(target, PatchRef):
            self._run_agent(block, _PatchCtx(target.x, target.y))
        elif target is NOBODY:
            raise self._bad_argument(stmt, "ASK expected an agent or agentset, but got nobody.")
        else:
            raise self._bad_argument(stmt, "ASK expected an agent or agentset.")

    def _cmd_create_turtles(self, stmt: CommandCall, ctx) -> None:
        count_value = self.require_number(stmt.args[0], ctx, stmt)
        if count_value < 0:
            raise self._bad_argument(stmt, "CREATE-TURTLES expected a non-negative number.")
        count = int(count_value)
        created = [self.world.spawn_turtle() for _ in range(count)]
        if len(stmt.args) > 1 and isinstance(stmt.args[1], Block):
            for turtle in created:
                if turtle.id in self.world.turtles:
                    self._run_agent(stmt.args[1], _TurtleCtx(turtle.id))

    def _run_agent(self, block: Block, ctx) -> None:
        try:
            self.run_statements(block.statements, ctx)
        except _AgentDied:
            pass

    def _cmd_clear_all(self, stmt: CommandCall, ctx) -> None:
        self.world.clear()

    def _cmd_fd(self, stmt: CommandCall, ctx) -> None:
        turtle = self.current_turtle(ctx, stmt)
        distance = self.require_number(stmt.args[0], ctx, stmt)
        radians = math.radians(turtle.heading)
        turtle.xcor = self.world.wrap_x(turtle.xcor + distance * math.sin(radians))
        turtle.ycor = self.world.wrap_y(turtle.ycor + distance * math.cos(radians))

    def _cmd_right(self, stmt: CommandCall, ctx) -> None:
        turtle = self.current_turtle(ctx, stmt)
        turtle.heading = (turtle.heading + self.require_number(stmt.args[0], ctx, stmt)) % 360.0

    def _cmd_left(self, stmt: CommandCall, ctx) -> None:
        turtle = self.current_turtle(ctx, stmt)
        turtle.heading = (turtle.heading - self.require_number(stmt.args[0], ctx, stmt)) % 360.0

    def _cmd_setxy(self, stmt: CommandCall, ctx) -> None:
        turtle = self.current_turtle(ctx, stmt)
        x = self.require_number(stmt.args[0], ctx, stmt)
        y = self.require_number(stmt.args[1], ctx, stmt)
        turtle.xcor = self.world.wrap_x(x)
        turtle.ycor = self.world.wrap_y(y)

    def _cmd_die(self, stmt: CommandCall, ctx) -> None:
        turtle = self.current_turtle(ctx, stmt)
        del self.world.turtles[turtle.id]
        raise _AgentDied()

    def _cmd_set(self, stmt: CommandCall, ctx) -> None:
        target = stmt.args[0]
        if not isinstance(target, Identifier):
            raise self._bad_argument(stmt, "SET expected a variable name.")
        value = self.eval(stmt.args[1], ctx)
        setter = _SETTERS.get(target.name.lower())
        if setter is None:
            raise self._bad_argument(stmt, f"You can't SET {target.name.upper()} here.")
        setter(self, value, ctx, stmt)

    def require_number(self, expr: Expr, ctx, stmt: CommandCall) -> float:
        return self._plain_number(self.eval(expr, ctx), stmt)

    # -- variables -----------------------------------------------------

    def current_turtle(self, ctx, node):
        if not isinstance(ctx, _TurtleCtx):
            raise _RuntimeFailure(
                error(
                    ILLEGAL_CONTEXT,
                    f"{node.name.upper()} can only run in a turtle context.",
                    node.span,
                    related=(node.name.lower(),),
                )
            )
        if ctx.turtle_id not in self.world.turtles:
            # e.g. a nested ask removed the asking turtle; not a context bug
            raise _RuntimeFailure(
                error(DEAD_AGENT, "That turtle is dead.", node.span, related=(node.name.lower(),))
            )
        return self.world.turtles[ctx.turtle_id]

    def _patch_here(self, ctx, node) -> tuple[int, int]:
        if isinstance(ctx, _PatchCtx):
            return ctx.x, ctx.y
        if isinstance(ctx, _TurtleCtx):
            turtle = self.world.turtles[ctx.turtle_id]
            x = int(round(self.world.wrap_x(turtle.xcor)))
            y = int(round(self.world.wrap_y(turtle.ycor)))
            return int(self.world.wrap_x(x)), int(self.world.wrap_y(y))
        raise _RuntimeFailure(
            error(
                ILLEGAL_CONTEXT,
                f"{node.name.upper()} can only run in a turtle or patch context.",
                node.span,
                related=(node.name.lower(),),
            )
        )

    def _set_color(self, value, ctx, stmt) -> None:
        turtle = self.current_turtle(ctx, stmt)
        turtle.color = self._color_number(value, stmt)

    def _set_pcolor(self, value, ctx, stmt) -> None:
        x, y = self._patch_here(ctx, stmt)
        self.world.patches[self.world.patch_index(x, y)] = self._color_number(value, stmt)

    def _set_heading(self, value, ctx, stmt) -> None:
        turtle = self.current_turtle(ctx, stmt)
        turtle.heading = self._plain_number(value, stmt) % 360.0

    def _set_xcor(self, value, ctx, stmt) -> None:
        turtle = self.current_turtle(ctx, stmt)
        turtle.xcor = self.world.wrap_x(self._plain_number(value, stmt))

    def _set_ycor(self, value, ctx, stmt) -> None:
        turtle = self.current_turtle(ctx, stmt)
        turtle.ycor = self.world.wrap_y(self._plain_number(value, stmt))

    def _color_number(self, value, stmt) -> float:
        return self._plain_number(value, stmt) % COLOR_WHEEL

    def _plain_number(self, value, stmt) -> float:
        if isinstance(value, bool) or not isinstance(value, float):
            raise self._bad_argument(stmt, f"{stmt.name.upper()} expected a number, but got {format_value(value)}.")
        return value

    # -- expressions ---------------------------------------------------

    def eval(self, expr: Expr, ctx) -> Value:
        if isinstance(expr, Number):
            return expr.value
        if isinstance(expr, StringLit):
            return expr.value
        if isinstance(expr, ColorName):
            return expr.value
        if isinstance(expr, Identifier):
            return self.eval_name(expr, ctx)
        if isinstance(expr, ReporterCall):
            return self.eval_call(expr, ctx)
        raise _RuntimeFailure(
            error(BAD_ARGUMENT, "A command block can't be used as a value here.", expr.span)
        )

    def eval_name(self, expr: Identifier, ctx) -> Value:
        name = expr.name.lower()
        world = self.world
        if name == "turtles":
            return AgentsetRef(AgentContext.TURTLE)
        if name == "patches":
            return AgentsetRef(AgentContext.PATCH)
        if name == "random-xcor":
            return world.rng.uniform(world.bounds.min_x - 0.5, world.bounds.max_x + 0.5)
        if name == "random-ycor":
            return world.rng.uniform(world.bounds.min_y - 0.5, world.bounds.max_y + 0.5)
        if name == "color":
            return self.current_turtle(ctx, expr).color
        if name == "heading":
            return self.current_turtle(ctx, expr).heading
        if name == "xcor":
            return self.current_turtle(ctx, expr).xcor
        if name == "ycor":
            return self.current_turtle(ctx, expr).ycor
        if name == "pcolor":
            x, y = self._patch_here(ctx, expr)
            return world.patches[world.patch_index(x, y)]
        raise _RuntimeFailure(
            error(
                UNSUPPORTED_PRIMITIVE,
                f"{expr.name.upper()} can't be evaluated from the command center.",
                expr.span,
                related=(name,),
            )
        )

    def eval_call(self, expr: ReporterCall, ctx) -> Value:
        name = expr.name.lower()
        if name == "random":
            bound = self.eval(expr.args[0], ctx)
            if not isinstance(bound, float) or isinstance(bound, bool):
                raise self._bad_argument(expr, "RANDOM expected a number.")
            if bound < 0:
                raise self._bad_argument(expr, "RANDOM expected a non-negative number.")
            n = int(bound)
            return 0.0 if n == 0 else float(self.world.rng.below(n))
        if name == "one-of":
            return self._one_of(expr, ctx)
        if name in _ARITHMETIC:
            left = self.eval(expr.args[0], ctx)
            right = self.eval(expr.args[1], ctx)
            return self._arith(name, left, right, expr)
        if name in ("=", "!="):
            left = self.eval(expr.args[0], ctx)
            right = self.eval(expr.args[1], ctx)
            return (left == right) if name == "=" else (left != right)
        if name in _COMPARISONS:
            left = self.eval(expr.args[0], ctx)
            right = self.eval(expr.args[1], ctx)
            if not isinstance(left, float) or not isinstance(right, float):
                raise self._bad_argument(expr, f"{expr.name} expected numbers on both sides.")
            return _COMPARISONS[name](left, right)
        raise _RuntimeFailure(
            error(
                UNSUPPORTED_PRIMITIVE,
                f"{expr.name.upper()} can't be evaluated from the command center.",
                expr.span,
                related=(name,),
            )
        )

    def _one_of(self, expr: ReporterCall, ctx) -> Value:
        target = self.eval(expr.args[0], ctx)
        if not isinstance(target, AgentsetRef):
            raise self._bad_argument(expr, "ONE-OF expected an agentset.")
        if target.kind is AgentContext.TURTLE:
            ids = sorted(self.world.turtles)
            if not ids:
                return NOBODY
            return TurtleRef(ids[self.world.rng.below(len(ids))])
        if target.kind is AgentContext.PATCH:
            bounds = self.world.bounds
            index = self.world.rng.below(bounds.width * bounds.height)
            x = bounds.min_x + index % bounds.width
            y = bounds.max_y - index // bounds.width
            return PatchRef(x, y)
        raise self._bad_argument(expr, "ONE-OF can't pick from that agentset here.")

    def _arith(self, name: str, left: Value, right: Value, expr: ReporterCall) -> float:
        if not isinstance(left, float) or not isinstance(right, float) \
                or isinstance(left, bool) or isinstance(right, bool):
            raise self._bad_argument(expr, f"{expr.name} expected numbers on both sides.")
        if name == "+":
            return left + right
        if name == "-":
            return left - right
        if name == "*":
            return left * right
        if right == 0.0:
            raise _RuntimeFailure(
                error(DIVISION_BY_ZERO, "Division by zero.", expr.span, related=("/",))
            )
        return left / right

    def _bad_argument(self, node, message: str) -> _RuntimeFailure:
        name = getattr(node, "name", "")
        return _RuntimeFailure(
            error(BAD_ARGUMENT, message, node.span, related=(name.lower(),) if name else ())
        )


_COMMANDS = {
    "print": _Interpreter._cmd_print,
    "ask": _Interpreter._cmd_ask,
    "create-turtles": _Interpreter._cmd_create_turtles,
    "clear-all": _Interpreter._cmd_clear_all,
    "fd": _Interpreter._cmd_fd,
    "right": _Interpreter._cmd_right,
    "left": _Interpreter._cmd_left,
    "setxy": _Interpreter._cmd_setxy,
    "die": _Interpreter._cmd_die,
    "set": _Interpreter._cmd_set,
}

_SETTERS = {
    "color": _Interpreter._set_color,
    "pcolor": _Interpreter._set_pcolor,
    "heading": _Interpreter._set_heading,
    "xcor": _Interpreter._set_xcor,
    "ycor": _Interpreter._set_ycor,
}

_ARITHMETIC = {"+", "-", "*", "/"}

_COMPARISONS = {
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
    "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
}

# Primitives the fuzzer may generate: every command and reporter the
# interpreter actually implements.
IMPLEMENTED_COMMANDS = frozenset(_COMMANDS)
IMPLEMENTED_REPORTERS = frozenset(
    {"turtles", "patches", "random", "random-xcor", "random-ycor", "one-of",
     "color", "pcolor", "heading", "xcor", "ycor"} | _ARITHMETIC | set(_COMPARISONS) | {"=", "!="}
)
