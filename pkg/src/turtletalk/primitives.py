"""Primitive metadata: arity, agent-context legality, help text, colors.

The registry is the single source of truth the parser, context checker,
runtime, and help feature all consult. It loads from a declarative JSON
file (see data/primitives.json and the README for the format), so the
dialect can grow without code changes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping


class AgentContext(Enum):
    OBSERVER = "observer"
    TURTLE = "turtle"
    PATCH = "patch"
    LINK = "link"


# Fixed rendering order: "Turtles, Links", "turtle/link", never the reverse.
CONTEXT_ORDER = (AgentContext.OBSERVER, AgentContext.TURTLE, AgentContext.PATCH, AgentContext.LINK)

_PLURAL_TITLE = {
    AgentContext.OBSERVER: "Observer",
    AgentContext.TURTLE: "Turtles",
    AgentContext.PATCH: "Patches",
    AgentContext.LINK: "Links",
}


def contexts_title(contexts: Iterable[AgentContext]) -> str:
    """Render a context set as in help headers: "Turtles, Links"."""
    ordered = [c for c in CONTEXT_ORDER if c in set(contexts)]
    return ", ".join(_PLURAL_TITLE[c] for c in ordered)


def contexts_slash(contexts: Iterable[AgentContext]) -> str:
    """Render a context set as in error messages: "turtle/link"."""
    ordered = [c for c in CONTEXT_ORDER if c in set(contexts)]
    return "/".join(c.value for c in ordered)


class PrimitiveKind(Enum):
    COMMAND = "command"
    REPORTER = "reporter"


class SemanticType(Enum):
    NUMBER = "number"
    AGENTSET = "agentset"
    AGENT = "agent"
    BLOCK = "block"
    VALUE = "value"
    VARIABLE_NAME = "variable-name"
    BOOLEAN = "boolean"


@dataclass(frozen=True)
class Param:
    type: SemanticType
    optional: bool = False  # only meaningful for a trailing block


@dataclass(frozen=True)
class PrimitiveSpec:
    name: str
    kind: PrimitiveKind
    params: tuple[Param, ...]
    result: SemanticType | None
    contexts: frozenset[AgentContext]
    help_summary: str
    see_also: tuple[str, ...] = ()
    settable: bool = False
    infix: bool = False
    precedence: int = 0
    agent_kind: AgentContext | None = None  # for agentset reporters (turtles -> turtle)

    def __post_init__(self) -> None:
        if self.kind is PrimitiveKind.COMMAND and self.result is not None:
            raise ValueError(f"command {self.name} must not declare a result")
        if self.kind is PrimitiveKind.REPORTER and self.result is None:
            raise ValueError(f"reporter {self.name} must declare a result")
        if not self.contexts:
            raise ValueError(f"{self.name} must be legal in at least one context")

    @property
    def arity(self) -> int:
        return sum(1 for p in self.params if not p.optional)


class RegistryError(ValueError):
    """Raised when the primitive data file is malformed or inconsistent."""


class PrimitiveRegistry:
    """Immutable, case-insensitive map of primitive names to their specs,
    plus the color-constant table."""

    def __init__(self, specs: Iterable[PrimitiveSpec], colors: Mapping[str, float]):
        self._specs: dict[str, PrimitiveSpec] = {}
        for spec in specs:
            key = spec.name.lower()
            if key in self._specs:
                raise RegistryError(f"duplicate primitive {spec.name}")
            self._specs[key] = spec
        self._colors = {name.lower(): float(value) for name, value in colors.items()}
        self._validate()

    def _validate(self) -> None:
        for spec in self._specs.values():
            for ref in spec.see_also:
                if ref.lower() not in self._specs:
                    raise RegistryError(f"{spec.name} see-also references unknown name {ref}")
        for name, value in self._colors.items():
            if not 0 <= value < 140:
                raise RegistryError(f"color constant {name}={value} outside [0, 140)")

    def lookup(self, name: str) -> PrimitiveSpec | None:
        return self._specs.get(name.lower())

    def is_color(self, name: str) -> bool:
        return name.lower() in self._colors

    def color_value(self, name: str) -> float:
        return self._colors[name.lower()]

    @property
    def colors(self) -> Mapping[str, float]:
        return dict(self._colors)

    def names(self) -> list[str]:
        return sorted(self._specs)

    def commands(self) -> list[PrimitiveSpec]:
        return [s for s in self._specs.values() if s.kind is PrimitiveKind.COMMAND]

    def reporters(self) -> list[PrimitiveSpec]:
        return [s for s in self._specs.values() if s.kind is PrimitiveKind.REPORTER]

    @classmethod
    def from_dict(cls, data: Mapping) -> PrimitiveRegistry:
        specs = [_spec_from_record(record) for record in data.get("primitives", ())]
        return cls(specs, data.get("colors", {}))

    @classmethod
    def from_file(cls, path: str | Path) -> PrimitiveRegistry:
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


_ALL_CONTEXTS = frozenset(AgentContext)


def _spec_from_record(record: Mapping) -> PrimitiveSpec:
    try:
        params = tuple(_parse_param(p) for p in record.get("params", ()))
        contexts = record["contexts"]
        if contexts == "all":
            context_set = _ALL_CONTEXTS
        else:
            context_set = frozenset(AgentContext(c) for c in contexts)
        result = record.get("result")
        return PrimitiveSpec(
            name=record["name"],
            kind=PrimitiveKind(record["kind"]),
            params=params,
            result=SemanticType(result) if result else None,
            contexts=context_set,
            help_summary=record["help"],
            see_also=tuple(record.get("see_also", ())),
            settable=record.get("settable", False),
            infix=record.get("infix", False),
            precedence=record.get("precedence", 0),
            agent_kind=AgentContext(record["agent_kind"]) if "agent_kind" in record else None,
        )
    except (KeyError, ValueError) as exc:
        raise RegistryError(f"bad primitive record {record.get('name', '?')}: {exc}") from exc


def _parse_param(raw: str) -> Param:
    if raw.endswith("?"):
        return Param(SemanticType(raw[:-1]), optional=True)
    return Param(SemanticType(raw))


@lru_cache(maxsize=1)
def default_registry() -> PrimitiveRegistry:
    """The registry built from the packaged data file."""
    data = resources.files("turtletalk").joinpath("data/primitives.json").read_text("utf-8")
    return PrimitiveRegistry.from_dict(json.loads(data))


@dataclass(frozen=True)
class HelpEntry:
    """One help card, rendered as three lines in the command center."""

    name: str
    contexts_label: str
    summary: str
    see_also: tuple[str, ...]

    def render(self) -> str:
        lines = [
            f"{self.name} - {self.contexts_label}",
            f"{self.summary} (full text)",
            "See also: " + ", ".join(self.see_also),
        ]
        return "\n".join(lines)


def help_entry(name: str, registry: PrimitiveRegistry) -> HelpEntry | None:
    """Help card for a primitive, or None for unknown names."""
    spec = registry.lookup(name)
    if spec is None:
        return None
    return HelpEntry(
        name=spec.name,
        contexts_label=contexts_title(spec.contexts),
        summary=spec.help_summary,
        see_also=spec.see_also,
    )
