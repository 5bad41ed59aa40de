"""Headless world rendering: patches as filled cells, turtles as oriented
triangles, saved to image files from the CLI.

Colors use the dialect's 0-140 wheel. The mapping to RGB approximates the
reference palette: each decade is a hue family whose base shade sits at
x5, darkening toward x0 and lightening toward x9.9.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .world import ViewModel

# Base RGB (at shade x5) for each hue family of the color wheel.
_FAMILY_RGB = (
    (0.55, 0.55, 0.55),  # gray family (also hosts black/white endpoints)
    (0.84, 0.16, 0.16),  # red
    (0.93, 0.53, 0.18),  # orange
    (0.62, 0.42, 0.22),  # brown
    (0.93, 0.93, 0.18),  # yellow
    (0.23, 0.72, 0.23),  # green
    (0.43, 0.88, 0.30),  # lime
    (0.13, 0.75, 0.62),  # turquoise
    (0.33, 0.84, 0.84),  # cyan
    (0.37, 0.65, 0.88),  # sky
    (0.23, 0.32, 0.85),  # blue
    (0.55, 0.33, 0.83),  # violet
    (0.80, 0.27, 0.80),  # magenta
    (0.90, 0.49, 0.72),  # pink
)


def wheel_to_rgb(color: float) -> tuple[float, float, float]:
    """Approximate RGB for a color-wheel value in [0, 140)."""
    color = color % 140.0
    family = int(color // 10.0)
    offset = (color - family * 10.0) - 5.0  # [-5, 4.9]
    base = _FAMILY_RGB[family]
    if offset < 0:
        factor = 1.0 + offset / 5.0  # toward black
        return tuple(channel * factor for channel in base)
    factor = offset / 5.0  # toward white
    return tuple(channel + (1.0 - channel) * factor for channel in base)


def render_view(view: ViewModel, ax=None):
    """Draw a view model onto a matplotlib axes; returns the figure."""
    if ax is None:
        fig, ax = plt.subplots(figsize=(6, 6))
    else:
        fig = ax.figure

    width = view.max_x - view.min_x + 1
    height = view.max_y - view.min_y + 1
    grid = np.empty((height, width, 3))
    for index, pcolor in enumerate(view.patches):
        row, col = divmod(index, width)
        grid[row, col] = wheel_to_rgb(pcolor)
    extent = (view.min_x - 0.5, view.max_x + 0.5, view.min_y - 0.5, view.max_y + 0.5)
    ax.imshow(grid, origin="upper", extent=extent, interpolation="nearest")

    for turtle in view.turtles:
        # marker rotation is counterclockwise; headings are clockwise from north
        marker = (3, 0, -turtle.heading)
        ax.plot(
            [turtle.x], [turtle.y],
            marker=marker,
            markersize=9,
            linestyle="none",
            markerfacecolor=wheel_to_rgb(turtle.color),
            markeredgecolor="none",
        )

    ax.set_xlim(extent[0], extent[1])
    ax.set_ylim(extent[2], extent[3])
    ax.set_xticks([])
    ax.set_yticks([])
    ax.set_aspect("equal")
    return fig


def save_view(view: ViewModel, path: str | Path, dpi: int = 120) -> Path:
    """Render a view model to an image file; returns the path written."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig = render_view(view)
    try:
        fig.savefig(path, dpi=dpi, bbox_inches="tight")
    finally:
        plt.close(fig)
    return path
