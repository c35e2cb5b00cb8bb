/** Size-scaling plot: one marker per size, dashed least-squares overlay.
 *
 * The fit kind picks the coordinates: loglog fits ln(value) against
 * ln(n), semilog fits ln(value) against n, none draws raw values with
 * no overlay.  Fits need at least three usable points; with fewer the
 * plot is still drawn and the fit is suppressed with a warning.
 */

import { FitResult, linearFit } from "./fit.js";
import { SchemaError, selectQuantity, SweepRow } from "./schema.js";
import { esc, fmt, scale, svgDocument, ticks } from "./svg.js";

export type FitKind = "loglog" | "semilog" | "none";

export interface ScalingPlot {
  svg: string;
  sizes: number[];
  values: number[];
  fit: FitResult | null;
  warnings: string[];
}

const MARGIN = { left: 72, right: 24, top: 40, bottom: 48 };
const PLOT_W = 420;
const PLOT_H = 300;

export function buildScalingPlot(rows: SweepRow[], quantity: string, kind: FitKind): ScalingPlot {
  const selected = selectQuantity(rows, quantity).slice().sort((a, b) => a.n - b.n);
  for (let i = 1; i < selected.length; i++) {
    if (selected[i]!.n === selected[i - 1]!.n) {
      throw new SchemaError(`duplicate size n=${selected[i]!.n} for quantity ${quantity}`);
    }
  }
  const warnings: string[] = [];
  const logY = kind !== "none";
  let points = selected.map((r) => ({ n: r.n, value: r.value }));
  if (logY) {
    const dropped = points.filter((p) => !(p.value > 0) || !Number.isFinite(p.value));
    if (dropped.length > 0) {
      warnings.push(
        `dropped ${dropped.length} non-positive value(s) from the log-scale plot: ` +
          dropped.map((p) => `n=${p.n}`).join(", "),
      );
      points = points.filter((p) => p.value > 0 && Number.isFinite(p.value));
    }
  }
  if (points.length === 0) throw new SchemaError("no plottable points");

  const xs = points.map((p) => (kind === "loglog" ? Math.log(p.n) : p.n));
  const ys = points.map((p) => (logY ? Math.log(p.value) : p.value));

  let fit: FitResult | null = null;
  if (kind !== "none") {
    if (points.length < 3) {
      warnings.push(`only ${points.length} size(s); fit suppressed (need 3)`);
    } else {
      fit = linearFit(xs, ys);
    }
  }

  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yLo = Math.min(...ys);
  const yHi = Math.max(...ys);
  const pad = (hi: number, lo: number) => (hi === lo ? Math.max(1e-12, Math.abs(hi) * 0.05 + 0.5) : (hi - lo) * 0.08);
  const xPad = pad(xHi, xLo);
  const yPad = pad(yHi, yLo);
  const xOf = scale(xLo - xPad, xHi + xPad, MARGIN.left, MARGIN.left + PLOT_W);
  const yOf = scale(yLo - yPad, yHi + yPad, MARGIN.top + PLOT_H, MARGIN.top);

  const width = MARGIN.left + PLOT_W + MARGIN.right;
  const height = MARGIN.top + PLOT_H + MARGIN.bottom;
  const parts: string[] = [];

  const first = selected[0]!;
  const yName = logY ? `ln(${quantity})` : quantity;
  const xName = kind === "loglog" ? "ln(n)" : "n";
  parts.push(
    `<text x="${MARGIN.left}" y="22" font-size="14">` +
      esc(`${yName} vs ${xName}, ${first.model}, mu=${fmt(first.mu)}, delta=${fmt(first.delta)}`) +
      "</text>\n",
  );
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${PLOT_W}" height="${PLOT_H}" ` +
      `fill="none" stroke="black"/>\n`,
  );

  for (const v of ticks(xLo - xPad, xHi + xPad)) {
    const x = xOf(v);
    if (x < MARGIN.left - 0.5 || x > MARGIN.left + PLOT_W + 0.5) continue;
    parts.push(`<line x1="${x}" y1="${MARGIN.top + PLOT_H}" x2="${x}" y2="${MARGIN.top + PLOT_H + 4}" stroke="black"/>\n`);
    parts.push(`<text x="${x}" y="${MARGIN.top + PLOT_H + 18}" text-anchor="middle">${esc(fmt(v))}</text>\n`);
  }
  parts.push(`<text x="${MARGIN.left + PLOT_W / 2}" y="${height - 10}" text-anchor="middle">${esc(xName)}</text>\n`);

  for (const v of ticks(yLo - yPad, yHi + yPad)) {
    const y = yOf(v);
    if (y < MARGIN.top - 0.5 || y > MARGIN.top + PLOT_H + 0.5) continue;
    parts.push(`<line x1="${MARGIN.left - 4}" y1="${y}" x2="${MARGIN.left}" y2="${y}" stroke="black"/>\n`);
    parts.push(`<text x="${MARGIN.left - 8}" y="${y + 4}" text-anchor="end">${esc(fmt(v))}</text>\n`);
  }
  parts.push(
    `<text x="18" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 18 ${MARGIN.top + PLOT_H / 2})">${esc(yName)}</text>\n`,
  );

  if (fit !== null) {
    const x1 = xLo;
    const x2 = xHi;
    const y1 = fit.slope * x1 + fit.intercept;
    const y2 = fit.slope * x2 + fit.intercept;
    parts.push(
      `<line x1="${xOf(x1)}" y1="${yOf(y1)}" x2="${xOf(x2)}" y2="${yOf(y2)}" ` +
        `stroke="#d62728" stroke-width="1.5" stroke-dasharray="6 4"/>\n`,
    );
    parts.push(
      `<text x="${MARGIN.left + PLOT_W - 8}" y="${MARGIN.top + 18}" text-anchor="end" fill="#d62728">` +
        esc(`${kind} fit: slope=${fit.slope.toPrecision(4)}, R2=${fit.r2.toPrecision(5)}`) +
        "</text>\n",
    );
  }

  for (let i = 0; i < points.length; i++) {
    parts.push(
      `<circle cx="${xOf(xs[i]!)}" cy="${yOf(ys[i]!)}" r="3.5" fill="#1f77b4" stroke="black" stroke-width="0.5"/>\n`,
    );
  }

  return {
    svg: svgDocument(width, height, parts.join("")),
    sizes: points.map((p) => p.n),
    values: points.map((p) => p.value),
    fit,
    warnings,
  };
}
