/** Strict reader for the sweep CSV schema shared with the fermivac CLI.
 *
 * Header: model,n,t,mu,delta,quantity,value,flags.  Values are plain
 * float literals plus the Python repr spellings "inf", "-inf", "nan";
 * flags are ";"-joined lowercase tokens.  Anything else is a schema
 * violation and raises SchemaError, which the CLI turns into a nonzero
 * exit.
 */

export const CSV_HEADER = ["model", "n", "t", "mu", "delta", "quantity", "value", "flags"];

export interface SweepRow {
  model: string;
  n: number;
  t: number;
  mu: number;
  delta: number;
  quantity: string;
  value: number;
  flags: string[];
}

export class SchemaError extends Error {}

const FLOAT_RE = /^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$/;
const TOKEN_RE = /^[a-z0-9_]+$/;

function parseFloatField(token: string, field: string, line: number): number {
  if (token === "inf") return Infinity;
  if (token === "-inf") return -Infinity;
  if (token === "nan") return NaN;
  if (!FLOAT_RE.test(token)) {
    throw new SchemaError(`line ${line}: ${field} is not a float: ${JSON.stringify(token)}`);
  }
  return Number(token);
}

function parseFiniteField(token: string, field: string, line: number): number {
  const value = parseFloatField(token, field, line);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`line ${line}: ${field} must be finite, got ${token}`);
  }
  return value;
}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/);
  while (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) throw new SchemaError("empty file");
  if (lines[0] !== CSV_HEADER.join(",")) {
    throw new SchemaError(
      `bad header: expected ${JSON.stringify(CSV_HEADER.join(","))}, got ${JSON.stringify(lines[0])}`,
    );
  }
  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = i + 1;
    const raw = lines[i]!;
    const fields = raw.split(",");
    if (fields.length !== CSV_HEADER.length) {
      throw new SchemaError(`line ${line}: expected ${CSV_HEADER.length} columns, got ${fields.length}`);
    }
    const [model, nTok, tTok, muTok, deltaTok, quantity, valueTok, flagsTok] = fields as [
      string, string, string, string, string, string, string, string,
    ];
    if (!TOKEN_RE.test(model)) throw new SchemaError(`line ${line}: bad model ${JSON.stringify(model)}`);
    if (!/^\d+$/.test(nTok)) throw new SchemaError(`line ${line}: n must be a positive integer, got ${JSON.stringify(nTok)}`);
    const n = Number(nTok);
    if (n < 1) throw new SchemaError(`line ${line}: n must be >= 1`);
    if (!TOKEN_RE.test(quantity)) {
      throw new SchemaError(`line ${line}: bad quantity ${JSON.stringify(quantity)}`);
    }
    const flags = flagsTok === "" ? [] : flagsTok.split(";");
    for (const flag of flags) {
      if (!TOKEN_RE.test(flag)) throw new SchemaError(`line ${line}: bad flag ${JSON.stringify(flag)}`);
    }
    rows.push({
      model,
      n,
      t: parseFiniteField(tTok, "t", line),
      mu: parseFiniteField(muTok, "mu", line),
      delta: parseFiniteField(deltaTok, "delta", line),
      quantity,
      value: parseFloatField(valueTok, "value", line),
      flags,
    });
  }
  return rows;
}

/** Rows of one quantity; errors if the quantity does not appear at all. */
export function selectQuantity(rows: SweepRow[], quantity: string): SweepRow[] {
  const selected = rows.filter((r) => r.quantity === quantity);
  if (selected.length === 0) {
    const present = [...new Set(rows.map((r) => r.quantity))].sort().join(", ");
    throw new SchemaError(`quantity ${JSON.stringify(quantity)} not present (file has: ${present})`);
  }
  return selected;
}

export interface Grid {
  mus: number[];
  deltas: number[];
  /** values[i][j] is the row at deltas[i], mus[j]. */
  values: SweepRow[][];
}

/** Arrange one quantity's rows as a complete (mu, delta) grid. */
export function buildGrid(rows: SweepRow[]): Grid {
  const mus = [...new Set(rows.map((r) => r.mu))].sort((a, b) => a - b);
  const deltas = [...new Set(rows.map((r) => r.delta))].sort((a, b) => a - b);
  const index = new Map<string, SweepRow>();
  for (const row of rows) {
    const key = `${row.mu}|${row.delta}`;
    if (index.has(key)) throw new SchemaError(`duplicate grid point mu=${row.mu} delta=${row.delta}`);
    index.set(key, row);
  }
  if (index.size !== mus.length * deltas.length) {
    throw new SchemaError(
      `incomplete grid: ${index.size} points for ${mus.length} mu x ${deltas.length} delta values`,
    );
  }
  const values = deltas.map((d) =>
    mus.map((m) => {
      const row = index.get(`${m}|${d}`);
      if (row === undefined) throw new SchemaError(`missing grid point mu=${m} delta=${d}`);
      return row;
    }),
  );
  return { mus, deltas, values };
}
