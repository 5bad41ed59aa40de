"""Seeded program generators for the round-trip and soundness fuzz tests.

Trees are built straight from the registry's arities with dummy spans
(spans don't participate in equality). The soundness generator tracks the
agent context it is generating for, so most of its output passes
check_context; the checker still filters, the generator just keeps the
pass rate useful.
"""

from __future__ import annotations

import random

from turtletalk.primitives import AgentContext, default_registry
from turtletalk.spans import Span
from turtletalk.syntax import (
    Block,
    ColorName,
    CommandCall,
    Identifier,
    Number,
    Program,
    ReporterCall,
    StringLit,
)

_SPAN = Span(0, 0)

_COLOR_NAMES = ("red", "blue", "green", "yellow", "white", "gray", "orange", "black")

_COMMENTS = (
    "move the turtles",
    "paint the ground",
    "try a few steps",
    "set things up",
    'use the name "turtles"',
)


class ProgramGenerator:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)
        self.registry = default_registry()

    # -- numbers and atoms ----------------------------------------------

    def number(self) -> Number:
        roll = self.rng.random()
        if roll < 0.5:
            value = float(self.rng.randint(0, 100))
        elif roll < 0.8:
            value = self.rng.randint(0, 400) / 4.0
        elif roll < 0.95:
            value = self.rng.randint(1, 10**6) / 8.0
        else:
            value = float(self.rng.randint(10**17, 10**19))  # prints in exponent form
        return Number(value, _SPAN)

    def string(self) -> StringLit:
        words = self.rng.sample(["hello", "world", "ants", "sky", "logo", "go"],
                                k=self.rng.randint(1, 3))
        return StringLit(" ".join(words), _SPAN)

    def color(self) -> ColorName:
        name = self.rng.choice(_COLOR_NAMES)
        return ColorName(name, self.registry.color_value(name), _SPAN)

    def number_expr(self, ctx: AgentContext, depth: int = 0):
        choices = ["literal", "literal", "random", "arith"]
        if ctx is AgentContext.TURTLE:
            choices += ["turtle-var", "random-cor"]
        if depth >= 2:
            choices = ["literal"]
        kind = self.rng.choice(choices)
        if kind == "literal":
            return self.number()
        if kind == "random":
            return ReporterCall("random", (self.number_expr(ctx, depth + 1),), _SPAN)
        if kind == "arith":
            op = self.rng.choice(["+", "-", "*"])
            return ReporterCall(
                op,
                (self.number_expr(ctx, depth + 1), self.number_expr(ctx, depth + 1)),
                _SPAN,
                infix=True,
            )
        if kind == "turtle-var":
            return Identifier(self.rng.choice(["heading", "xcor", "ycor", "color"]), _SPAN)
        return Identifier(self.rng.choice(["random-xcor", "random-ycor"]), _SPAN)

    def value_expr(self, ctx: AgentContext):
        roll = self.rng.random()
        if roll < 0.4:
            return self.number_expr(ctx)
        if roll < 0.6:
            return self.string()
        if roll < 0.8:
            return self.color()
        op = self.rng.choice(["<", ">", "=", "<=", ">=", "!="])
        return ReporterCall(op, (self.number(), self.number()), _SPAN, infix=True)

    # -- statements ------------------------------------------------------

    def comments(self) -> tuple[str, ...]:
        if self.rng.random() < 0.25:
            return tuple(self.rng.sample(_COMMENTS, k=self.rng.randint(1, 2)))
        return ()

    def statement(self, ctx: AgentContext, depth: int) -> CommandCall:
        if ctx is AgentContext.OBSERVER:
            kind = self.rng.choice(
                ["create", "create-block", "ask-turtles", "ask-patches", "clear", "print"]
                if depth < 2 else ["create", "clear", "print"]
            )
        elif ctx is AgentContext.TURTLE:
            kind = self.rng.choice(
                ["fd", "right", "left", "setxy", "set-turtle", "set-pcolor", "print", "die"]
            )
        else:  # patch
            kind = self.rng.choice(["set-pcolor", "print"])

        comments = self.comments()
        if kind == "create":
            return CommandCall("create-turtles", (self.small_count(),), _SPAN, comments)
        if kind == "create-block":
            return CommandCall(
                "create-turtles",
                (self.small_count(), self.block(AgentContext.TURTLE, depth + 1)),
                _SPAN,
                comments,
            )
        if kind == "ask-turtles":
            return CommandCall(
                "ask",
                (Identifier("turtles", _SPAN), self.block(AgentContext.TURTLE, depth + 1)),
                _SPAN,
                comments,
            )
        if kind == "ask-patches":
            return CommandCall(
                "ask",
                (Identifier("patches", _SPAN), self.block(AgentContext.PATCH, depth + 1)),
                _SPAN,
                comments,
            )
        if kind == "clear":
            return CommandCall("clear-all", (), _SPAN, comments)
        if kind == "print":
            return CommandCall("print", (self.value_expr(ctx),), _SPAN, comments)
        if kind == "fd":
            return CommandCall("fd", (self.number_expr(ctx),), _SPAN, comments)
        if kind in ("right", "left"):
            return CommandCall(kind, (self.number_expr(ctx),), _SPAN, comments)
        if kind == "setxy":
            return CommandCall(
                "setxy", (self.number_expr(ctx), self.number_expr(ctx)), _SPAN, comments
            )
        if kind == "set-turtle":
            var = self.rng.choice(["color", "heading", "xcor", "ycor"])
            value = self.color() if var == "color" and self.rng.random() < 0.5 \
                else self.number_expr(ctx)
            return CommandCall("set", (Identifier(var, _SPAN), value), _SPAN, comments)
        if kind == "set-pcolor":
            value = self.color() if self.rng.random() < 0.6 else self.number_expr(ctx)
            return CommandCall("set", (Identifier("pcolor", _SPAN), value), _SPAN, comments)
        if kind == "die":
            return CommandCall("die", (), _SPAN, comments)
        raise AssertionError(kind)

    def small_count(self) -> Number:
        return Number(float(self.rng.randint(0, 12)), _SPAN)

    def block(self, ctx: AgentContext, depth: int) -> Block:
        statements = tuple(
            self.statement(ctx, depth) for _ in range(self.rng.randint(1, 3))
        )
        return Block(statements, _SPAN)

    def program(self, max_statements: int = 4) -> Program:
        statements = tuple(
            self.statement(AgentContext.OBSERVER, 0)
            for _ in range(self.rng.randint(1, max_statements))
        )
        trailing = (self.rng.choice(_COMMENTS),) if self.rng.random() < 0.1 else ()
        return Program(statements, _SPAN, trailing)

    # A variant that deliberately mixes in context mistakes so the checker
    # has something to reject.
    def messy_program(self) -> Program:
        program = self.program()
        if self.rng.random() < 0.3:
            name = self.rng.choice(["fd", "die", "setxy"])
            args = {"fd": (self.number(),), "die": (),
                    "setxy": (self.number(), self.number())}[name]
            bad = CommandCall(name, args, _SPAN)
            ask_args = (Identifier("patches", _SPAN), Block((bad,), _SPAN))
            mixed = program.statements + (CommandCall("ask", ask_args, _SPAN),)
            return Program(mixed, _SPAN, program.trailing_comments)
        return program
