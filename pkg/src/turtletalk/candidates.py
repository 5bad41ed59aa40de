"""Code candidates: model-produced drafts, re-validated before anyone can
run them.

The engine never trusts model output. Every candidate is parsed and
context-checked, and the diagnostics travel with it so the presentation
layer can draw squiggles and gate the Run button.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from .context_check import check_context
from .diagnostics import Diagnostic
from .parser import parse_source
from .primitives import AgentContext, PrimitiveRegistry
from .syntax import Program

logger = logging.getLogger(__name__)

_FENCE = re.compile(r"```[^\n`]*\n(.*?)```", re.DOTALL)


@dataclass(frozen=True)
class CodeCandidate:
    source: str
    ast: Program | None
    diagnostics: tuple[Diagnostic, ...]
    version: int

    def __post_init__(self) -> None:
        if self.version < 1:
            raise ValueError("candidate versions start at 1")

    @property
    def runnable(self) -> bool:
        return self.ast is not None and not self.diagnostics


def validate_source(source: str, registry: PrimitiveRegistry,
                    context: AgentContext = AgentContext.OBSERVER) -> tuple[Program | None, tuple[Diagnostic, ...]]:
    """Parse + context-check; exactly what candidate diagnostics contain."""
    result = parse_source(source, registry)
    if result.ast is None:
        return None, tuple(result.diagnostics)
    context_diags = check_context(result.ast, context, registry)
    if context_diags:
        return None, tuple(context_diags)
    return result.ast, ()


def extract_candidate(response: str, version: int,
                      registry: PrimitiveRegistry) -> CodeCandidate | None:
    """Take the first fenced code block of a model response, validated.

    Returns None when the response carries no code block. Extra blocks
    are ignored (with a warning) to avoid multi-step code dumps.
    """
    blocks = _FENCE.findall(response)
    if not blocks:
        return None
    if len(blocks) > 1:
        logger.warning("model response had %d code blocks; using the first", len(blocks))
    source = blocks[0].strip("\n").rstrip()
    ast, diagnostics = validate_source(source, registry)
    return CodeCandidate(source=source, ast=ast, diagnostics=diagnostics, version=version)
