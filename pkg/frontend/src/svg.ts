/** Tiny SVG assembly helpers; no drawing library, just strings. */

export function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function fmt(x: number): string {
  if (x === 0) return "0";
  const abs = Math.abs(x);
  if (abs >= 1e4 || abs < 1e-3) return x.toExponential(2);
  return String(Number(x.toPrecision(6)));
}

/** Round-valued tick positions covering [lo, hi], about `count` of them. */
export function ticks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / Math.max(1, count - 1);
  const mag = 10 ** Math.floor(Math.log10(rawStep));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * mag);
  const step = candidates.find((s) => s >= rawStep) ?? candidates[candidates.length - 1]!;
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    // snap away accumulated float error so labels stay short
    out.push(Number(v.toPrecision(12)));
  }
  return out.length > 0 ? out : [lo];
}

export interface Mapper {
  (value: number): number;
}

/** Affine map from data range to pixel range. */
export function scale(dataLo: number, dataHi: number, pxLo: number, pxHi: number): Mapper {
  const span = dataHi - dataLo;
  if (span === 0) return () => (pxLo + pxHi) / 2;
  return (v: number) => pxLo + ((v - dataLo) / span) * (pxHi - pxLo);
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n` +
    body +
    "</svg>\n"
  );
}
