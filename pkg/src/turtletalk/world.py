"""The turtle/patch world: the mutable simulation state behind the view.

The patch grid is stored row-major starting at the top-left corner
(min x, max y), x varying fastest — the same order the view model uses.
Turtle ids are unique for the life of a session and never reused, even
after clear-all.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .rng import DEFAULT_STREAM, Pcg32

BLACK = 0.0
COLOR_WHEEL = 140.0

# One of these is drawn for each newly created turtle (the hue families
# of the color wheel at full saturation).
BASE_COLORS = tuple(5.0 + 10.0 * i for i in range(14))


@dataclass(frozen=True)
class Bounds:
    min_x: int
    max_x: int
    min_y: int
    max_y: int

    def __post_init__(self) -> None:
        if self.min_x > self.max_x or self.min_y > self.max_y:
            raise ValueError(f"inverted world bounds {self}")

    @property
    def width(self) -> int:
        return self.max_x - self.min_x + 1

    @property
    def height(self) -> int:
        return self.max_y - self.min_y + 1


DEFAULT_BOUNDS = Bounds(-16, 16, -16, 16)


@dataclass
class Turtle:
    id: int
    xcor: float = 0.0
    ycor: float = 0.0
    heading: float = 0.0
    color: float = 0.0


@dataclass
class World:
    bounds: Bounds
    patches: list[float]
    turtles: dict[int, Turtle]
    next_turtle_id: int
    rng: Pcg32
    output: list[str] = field(default_factory=list)

    def patch_index(self, x: int, y: int) -> int:
        col = (x - self.bounds.min_x) % self.bounds.width
        row = (self.bounds.max_y - y) % self.bounds.height
        return row * self.bounds.width + col

    def wrap_x(self, x: float) -> float:
        lo = self.bounds.min_x - 0.5
        return (x - lo) % self.bounds.width + lo

    def wrap_y(self, y: float) -> float:
        lo = self.bounds.min_y - 0.5
        return (y - lo) % self.bounds.height + lo

    def spawn_turtle(self) -> Turtle:
        """Create one turtle in the center with a random base color, then a
        random integer heading. Draw order is part of the seed contract."""
        turtle = Turtle(id=self.next_turtle_id)
        self.next_turtle_id += 1
        turtle.color = BASE_COLORS[self.rng.below(len(BASE_COLORS))]
        turtle.heading = float(self.rng.below(360))
        self.turtles[turtle.id] = turtle
        return turtle

    def clear(self) -> None:
        self.turtles.clear()
        self.patches = [BLACK] * (self.bounds.width * self.bounds.height)


def new_world(bounds: Bounds = DEFAULT_BOUNDS, seed: int = 0, stream: int = DEFAULT_STREAM) -> World:
    """A fresh world: no turtles, all patches black, RNG seeded."""
    return World(
        bounds=bounds,
        patches=[BLACK] * (bounds.width * bounds.height),
        turtles={},
        next_turtle_id=0,
        rng=Pcg32(seed, stream),
    )


@dataclass(frozen=True)
class TurtleView:
    id: int
    x: float
    y: float
    heading: float
    color: float


@dataclass(frozen=True)
class ViewModel:
    """Serializable scene for the UI canvas and golden-file tests.

    Field order in the wire format is fixed: bounds, patches (row-major
    from the top-left, x fastest), then turtles ordered by id.
    """

    min_x: int
    max_x: int
    min_y: int
    max_y: int
    patches: tuple[float, ...]
    turtles: tuple[TurtleView, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "bounds": {"min_x": self.min_x, "max_x": self.max_x,
                       "min_y": self.min_y, "max_y": self.max_y},
            "patches": list(self.patches),
            "turtles": [
                {"id": t.id, "x": t.x, "y": t.y, "heading": t.heading, "color": t.color}
                for t in self.turtles
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ViewModel:
        bounds = data["bounds"]
        return cls(
            min_x=bounds["min_x"],
            max_x=bounds["max_x"],
            min_y=bounds["min_y"],
            max_y=bounds["max_y"],
            patches=tuple(data["patches"]),
            turtles=tuple(
                TurtleView(t["id"], t["x"], t["y"], t["heading"], t["color"])
                for t in data["turtles"]
            ),
        )


def snapshot(world: World) -> ViewModel:
    """An immutable view of the world's visible state."""
    return ViewModel(
        min_x=world.bounds.min_x,
        max_x=world.bounds.max_x,
        min_y=world.bounds.min_y,
        max_y=world.bounds.max_y,
        patches=tuple(world.patches),
        turtles=tuple(
            TurtleView(t.id, t.xcor, t.ycor, t.heading, t.color)
            for _, t in sorted(world.turtles.items())
        ),
    )
