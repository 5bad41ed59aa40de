"""Language-model backends behind one narrow contract.

Everything the engine needs from a model is `complete(turns) -> text`;
backends are interchangeable and the deterministic mock ships as the
default so the whole suite runs offline. The HTTP adapter speaks the
common chat-completions wire shape and is configured, never hardcoded,
to a vendor.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Protocol, Sequence

import httpx

Role = str  # "system" | "user" | "assistant"


@dataclass(frozen=True)
class ChatTurn:
    role: Role
    content: str

    def __post_init__(self) -> None:
        if self.role not in ("system", "user", "assistant"):
            raise ValueError(f"unknown chat role {self.role!r}")
        if self.role in ("user", "assistant") and not self.content:
            raise ValueError(f"{self.role} turns must have content")


@dataclass(frozen=True)
class GenerationParams:
    temperature: float = 0.0
    max_tokens: int = 1024


class BackendError(RuntimeError):
    """Raised when a backend cannot produce a completion."""


class ModelBackend(Protocol):
    name: str
    model: str

    def complete(self, turns: Sequence[ChatTurn], params: GenerationParams = GenerationParams()) -> str:
        ...


@dataclass(frozen=True)
class MockRule:
    """Fires when every `contains` fragment appears in the last user turn."""

    contains: tuple[str, ...]
    response: str


_FALLBACK_RESPONSE = "Could you tell me a bit more about what you want to make?"


class MockBackend:
    """Deterministic test double: a pure function from the last user turn
    to a canned response, driven by the packaged matcher table."""

    name = "mock"

    def __init__(self, rules: Sequence[MockRule] | None = None, model: str = "mock-1"):
        self.model = model
        self.rules = tuple(rules) if rules is not None else _load_mock_rules()

    def complete(self, turns: Sequence[ChatTurn], params: GenerationParams = GenerationParams()) -> str:
        last_user = next((t.content for t in reversed(turns) if t.role == "user"), "")
        for rule in self.rules:
            if all(fragment in last_user for fragment in rule.contains):
                return rule.response
        return _FALLBACK_RESPONSE


def _load_mock_rules() -> tuple[MockRule, ...]:
    raw = resources.files("turtletalk").joinpath("data/mock_responses.json").read_text("utf-8")
    records = json.loads(raw)
    return tuple(
        MockRule(contains=tuple(r["contains"]), response=r["response"]) for r in records
    )


@dataclass
class HttpChatBackend:
    """Adapter for any chat-completions style HTTP endpoint.

    Ships untested against live services on purpose; the contract is the
    payload shape, which is unit-tested offline.
    """

    endpoint: str
    model: str
    api_key: str | None = None
    timeout: float = 60.0
    name: str = "http"
    _client: httpx.Client | None = field(default=None, repr=False)

    def build_payload(self, turns: Sequence[ChatTurn], params: GenerationParams) -> dict:
        return {
            "model": self.model,
            "messages": [{"role": t.role, "content": t.content} for t in turns],
            "temperature": params.temperature,
            "max_tokens": params.max_tokens,
        }

    def complete(self, turns: Sequence[ChatTurn], params: GenerationParams = GenerationParams()) -> str:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        client = self._client or httpx.Client(timeout=self.timeout)
        try:
            response = client.post(self.endpoint, json=self.build_payload(turns, params), headers=headers)
            response.raise_for_status()
            body = response.json()
            return body["choices"][0]["message"]["content"]
        except (httpx.HTTPError, KeyError, IndexError, ValueError) as exc:
            raise BackendError(f"chat completion failed: {exc}") from exc


def parse_intents(response: str, limit: int = 4) -> list[str]:
    """Extract intent labels from a clarify response, one per bullet line."""
    intents: list[str] = []
    for line in response.splitlines():
        match = re.match(r"^\s*(?:[-*]|\d+[.)])\s+(.*\S)\s*$", line)
        if match:
            intents.append(match.group(1))
        if len(intents) >= limit:
            break
    return intents
