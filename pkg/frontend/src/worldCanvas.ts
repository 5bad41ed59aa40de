/**
 * 2D canvas rendering of the world: patches as filled cells, turtles as
 * triangles rotated by heading (0 = up/north, clockwise).
 */

import { wheelToCss } from "./palette.js";
import type { ViewModel } from "./protocol.js";

export function renderWorld(view: ViewModel, canvas: HTMLCanvasElement): void {
  const context = canvas.getContext("2d");
  if (!context) return;

  const width = view.bounds.max_x - view.bounds.min_x + 1;
  const height = view.bounds.max_y - view.bounds.min_y + 1;
  const cell = Math.min(canvas.width / width, canvas.height / height);

  context.clearRect(0, 0, canvas.width, canvas.height);

  // patches arrive row-major from the top-left (min x, max y), x fastest
  for (let index = 0; index < view.patches.length; index += 1) {
    const row = Math.floor(index / width);
    const col = index % width;
    context.fillStyle = wheelToCss(view.patches[index]);
    context.fillRect(col * cell, row * cell, cell + 0.5, cell + 0.5);
  }

  for (const turtle of view.turtles) {
    drawTurtle(context, view, turtle.x, turtle.y, turtle.heading, turtle.color, cell);
  }
}

function drawTurtle(
  context: CanvasRenderingContext2D,
  view: ViewModel,
  x: number,
  y: number,
  heading: number,
  color: number,
  cell: number,
): void {
  const px = (x - (view.bounds.min_x - 0.5)) * cell;
  const py = ((view.bounds.max_y + 0.5) - y) * cell; // canvas y grows downward
  const size = cell * 0.9;

  context.save();
  context.translate(px, py);
  context.rotate((heading * Math.PI) / 180); // headings are clockwise from north
  context.fillStyle = wheelToCss(color);
  context.beginPath();
  context.moveTo(0, -size * 0.66);
  context.lineTo(size * 0.5, size * 0.5);
  context.lineTo(-size * 0.5, size * 0.5);
  context.closePath();
  context.fill();
  context.restore();
}
