/**
 * The dialect's 0-140 color wheel, approximated as CSS colors. Each
 * decade is a hue family with its base shade at x5, darkening toward x0
 * and lightening toward x9.9 (matching the server-side renderer).
 */

const FAMILY_RGB: [number, number, number][] = [
  [0.55, 0.55, 0.55], // gray family (black/white live at its ends)
  [0.84, 0.16, 0.16], // red
  [0.93, 0.53, 0.18], // orange
  [0.62, 0.42, 0.22], // brown
  [0.93, 0.93, 0.18], // yellow
  [0.23, 0.72, 0.23], // green
  [0.43, 0.88, 0.3], // lime
  [0.13, 0.75, 0.62], // turquoise
  [0.33, 0.84, 0.84], // cyan
  [0.37, 0.65, 0.88], // sky
  [0.23, 0.32, 0.85], // blue
  [0.55, 0.33, 0.83], // violet
  [0.8, 0.27, 0.8], // magenta
  [0.9, 0.49, 0.72], // pink
];

export function wheelToRgb(color: number): [number, number, number] {
  const wrapped = ((color % 140) + 140) % 140;
  const family = Math.floor(wrapped / 10);
  const offset = wrapped - family * 10 - 5;
  const base = FAMILY_RGB[family];
  if (offset < 0) {
    const factor = 1 + offset / 5;
    return [base[0] * factor, base[1] * factor, base[2] * factor];
  }
  const factor = offset / 5;
  return [
    base[0] + (1 - base[0]) * factor,
    base[1] + (1 - base[1]) * factor,
    base[2] + (1 - base[2]) * factor,
  ];
}

export function wheelToCss(color: number): string {
  const [r, g, b] = wheelToRgb(color).map((channel) => Math.round(channel * 255));
  return `rgb(${r}, ${g}, ${b})`;
}
