/** (mu, delta) heatmap with a natural-log color scale.
 *
 * Color encodes ln(value).  Cells whose value is zero, negative,
 * non-finite, or flagged are pinned to the scale floor ln(1e-12), so
 * exact gap zeros and clamped underflows render as the darkest color
 * instead of breaking the scale.
 */

import { rampColor } from "./color.js";
import { buildGrid, selectQuantity, SweepRow } from "./schema.js";
import { esc, fmt, scale, svgDocument, ticks } from "./svg.js";

export const LN_FLOOR = Math.log(1e-12);

export interface Heatmap {
  svg: string;
  mus: number[];
  deltas: number[];
  /** lnValues[i][j]: floored ln at deltas[i], mus[j]. */
  lnValues: number[][];
  /** cellColors[i][j]: fill actually used for that cell. */
  cellColors: string[][];
}

export function cellLn(row: SweepRow): number {
  if (row.flags.length > 0) return LN_FLOOR;
  if (!Number.isFinite(row.value) || row.value <= 0) return LN_FLOOR;
  return Math.max(Math.log(row.value), LN_FLOOR);
}

const MARGIN = { left: 64, right: 88, top: 40, bottom: 48 };

export function buildHeatmap(rows: SweepRow[], quantity: string): Heatmap {
  const selected = selectQuantity(rows, quantity);
  const grid = buildGrid(selected);
  const lnValues = grid.values.map((line) => line.map(cellLn));

  let lo = Infinity;
  let hi = -Infinity;
  for (const line of lnValues) {
    for (const v of line) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  const span = hi - lo;
  const unit = (v: number) => (span === 0 ? 0.5 : (v - lo) / span);
  const cellColors = lnValues.map((line) => line.map((v) => rampColor(unit(v))));

  const cols = grid.mus.length;
  const lines = grid.deltas.length;
  const cellPx = Math.max(4, Math.min(24, Math.floor(480 / Math.max(cols, lines))));
  const plotW = cellPx * cols;
  const plotH = cellPx * lines;
  const width = MARGIN.left + plotW + MARGIN.right;
  const height = MARGIN.top + plotH + MARGIN.bottom;

  const parts: string[] = [];
  const first = grid.values[0]![0]!;
  parts.push(
    `<text x="${MARGIN.left}" y="22" font-size="14">` +
      esc(`ln(${quantity}), ${first.model} n=${first.n}, t=${fmt(first.t)}`) +
      "</text>\n",
  );

  // cells: delta increases upward, mu to the right
  for (let i = 0; i < lines; i++) {
    const y = MARGIN.top + plotH - (i + 1) * cellPx;
    for (let j = 0; j < cols; j++) {
      const x = MARGIN.left + j * cellPx;
      parts.push(
        `<rect x="${x}" y="${y}" width="${cellPx}" height="${cellPx}" fill="${cellColors[i]![j]!}"/>\n`,
      );
    }
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="black" stroke-width="1"/>\n`,
  );

  // axis labels: tick at the center of the nearest cell
  const muLo = grid.mus[0]!;
  const muHi = grid.mus[cols - 1]!;
  const xOf = scale(muLo, muHi, MARGIN.left + cellPx / 2, MARGIN.left + plotW - cellPx / 2);
  for (const v of cols > 1 ? ticks(muLo, muHi) : [muLo]) {
    const x = xOf(v);
    parts.push(`<line x1="${x}" y1="${MARGIN.top + plotH}" x2="${x}" y2="${MARGIN.top + plotH + 4}" stroke="black"/>\n`);
    parts.push(`<text x="${x}" y="${MARGIN.top + plotH + 18}" text-anchor="middle">${esc(fmt(v))}</text>\n`);
  }
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${height - 10}" text-anchor="middle">mu</text>\n`,
  );

  const dLo = grid.deltas[0]!;
  const dHi = grid.deltas[lines - 1]!;
  const yOf = scale(dLo, dHi, MARGIN.top + plotH - cellPx / 2, MARGIN.top + cellPx / 2);
  for (const v of lines > 1 ? ticks(dLo, dHi) : [dLo]) {
    const y = yOf(v);
    parts.push(`<line x1="${MARGIN.left - 4}" y1="${y}" x2="${MARGIN.left}" y2="${y}" stroke="black"/>\n`);
    parts.push(`<text x="${MARGIN.left - 8}" y="${y + 4}" text-anchor="end">${esc(fmt(v))}</text>\n`);
  }
  parts.push(
    `<text x="16" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">delta</text>\n`,
  );

  // colorbar with end labels
  const barX = MARGIN.left + plotW + 24;
  const barW = 14;
  const steps = 64;
  for (let k = 0; k < steps; k++) {
    const y = MARGIN.top + plotH - ((k + 1) * plotH) / steps;
    parts.push(
      `<rect x="${barX}" y="${y}" width="${barW}" height="${plotH / steps + 0.5}" ` +
        `fill="${rampColor(k / (steps - 1))}"/>\n`,
    );
  }
  parts.push(
    `<rect x="${barX}" y="${MARGIN.top}" width="${barW}" height="${plotH}" fill="none" stroke="black"/>\n`,
  );
  parts.push(`<text x="${barX + barW + 4}" y="${MARGIN.top + plotH}" font-size="11">${esc(fmt(lo))}</text>\n`);
  parts.push(`<text x="${barX + barW + 4}" y="${MARGIN.top + 10}" font-size="11">${esc(fmt(hi))}</text>\n`);

  return {
    svg: svgDocument(width, height, parts.join("")),
    mus: grid.mus,
    deltas: grid.deltas,
    lnValues,
    cellColors,
  };
}
