"""Byte-offset source spans shared by tokens, AST nodes, and diagnostics."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Span:
    """Half-open [start, end) byte range into the UTF-8 encoding of a source."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"invalid span [{self.start}, {self.end})")

    @property
    def length(self) -> int:
        return self.end - self.start

    def contains(self, other: Span) -> bool:
        return self.start <= other.start and other.end <= self.end

    def slice_of(self, source: str) -> str:
        """Return the source text this span covers."""
        return source.encode("utf-8")[self.start : self.end].decode("utf-8")


def cover(first: Span, last: Span) -> Span:
    """Smallest span containing both arguments."""
    return Span(min(first.start, last.start), max(first.end, last.end))
