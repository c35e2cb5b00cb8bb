#!/usr/bin/env node
/** Command line renderer for sweep-schema CSV tables.
 *
 * heatmap CSV QUANTITY OUT.svg        ln-scale parameter-plane heatmap
 * scaling CSV OUT.svg [options]       size-scaling plot with optional fit
 *
 * Exit codes: 0 on success, 1 on schema or I/O failure, 2 on usage errors.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { buildHeatmap } from "./heatmap.js";
import { buildScalingPlot, FitKind } from "./scaling.js";
import { parseSweepCsv, SchemaError } from "./schema.js";

const USAGE = `usage: fermivac-plots <command> ...

commands:
  heatmap CSV QUANTITY OUT.svg
      render one quantity of a parameter-plane sweep as an ln-scale heatmap
  scaling CSV OUT.svg [--quantity NAME] [--fit loglog|semilog|none]
      render a size-scaling table as a marker plot with a dashed fit line
      (default quantity gap, default fit loglog)
`;

class UsageError extends Error {}

function parseScalingArgs(args: string[]): { csv: string; out: string; quantity: string; fit: FitKind } {
  const positional: string[] = [];
  let quantity = "gap";
  let fit: FitKind = "loglog";
  for (let i = 0; i < args.length; i++) {
    const a = args[i]!;
    if (a === "--quantity" || a === "--fit") {
      const v = args[i + 1];
      if (v === undefined) throw new UsageError(`${a} needs a value`);
      i++;
      if (a === "--quantity") quantity = v;
      else if (v === "loglog" || v === "semilog" || v === "none") fit = v;
      else throw new UsageError(`--fit must be loglog, semilog, or none, got ${v}`);
    } else if (a.startsWith("--")) {
      throw new UsageError(`unknown option ${a}`);
    } else {
      positional.push(a);
    }
  }
  if (positional.length !== 2) throw new UsageError("scaling needs CSV and OUT.svg arguments");
  return { csv: positional[0]!, out: positional[1]!, quantity, fit };
}

export function main(argv: string[]): number {
  try {
    const [command, ...rest] = argv;
    if (command === undefined || command === "--help" || command === "-h") {
      process.stdout.write(USAGE);
      return command === undefined ? 2 : 0;
    }
    if (command === "heatmap") {
      if (rest.length !== 3) throw new UsageError("heatmap needs CSV, QUANTITY, and OUT.svg arguments");
      const [csvPath, quantity, outPath] = rest;
      const rows = parseSweepCsv(readFileSync(csvPath!, "utf8"));
      const plot = buildHeatmap(rows, quantity!);
      writeFileSync(outPath!, plot.svg);
      process.stdout.write(`wrote ${outPath}\n`);
      return 0;
    }
    if (command === "scaling") {
      const opts = parseScalingArgs(rest);
      const rows = parseSweepCsv(readFileSync(opts.csv, "utf8"));
      const plot = buildScalingPlot(rows, opts.quantity, opts.fit);
      for (const w of plot.warnings) process.stderr.write(`warning: ${w}\n`);
      writeFileSync(opts.out, plot.svg);
      process.stdout.write(`wrote ${opts.out}\n`);
      return 0;
    }
    throw new UsageError(`unknown command ${command}`);
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(`error: ${err.message}\n${USAGE}`);
      return 2;
    }
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      return 1;
    }
    if (err instanceof Error && "code" in err) {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
}

if (process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
