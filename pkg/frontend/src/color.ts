/** Dark-to-bright perceptual ramp (viridis anchor points, linear RGB lerp). */

const STOPS: [number, number, number][] = [
  [0x44, 0x01, 0x54],
  [0x48, 0x28, 0x78],
  [0x3e, 0x49, 0x89],
  [0x31, 0x68, 0x8e],
  [0x26, 0x82, 0x8e],
  [0x1f, 0x9e, 0x89],
  [0x35, 0xb7, 0x79],
  [0x6e, 0xce, 0x58],
  [0xb5, 0xde, 0x2b],
  [0xfd, 0xe7, 0x25],
];

export function rampColor(u: number): string {
  const clamped = Math.min(1, Math.max(0, u));
  const pos = clamped * (STOPS.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.min(lo + 1, STOPS.length - 1);
  const frac = pos - lo;
  const mix = STOPS[lo]!.map((c, k) => Math.round(c + frac * (STOPS[hi]![k]! - c)));
  return "#" + mix.map((c) => c.toString(16).padStart(2, "0")).join("");
}

/** Relative luminance in [0, 1] of a #rrggbb color (sRGB weights). */
export function luminance(hex: string): number {
  const r = parseInt(hex.slice(1, 3), 16) / 255;
  const g = parseInt(hex.slice(3, 5), 16) / 255;
  const b = parseInt(hex.slice(5, 7), 16) / 255;
  return 0.2126 * r + 0.7152 * g + 0.0722 * b;
}
