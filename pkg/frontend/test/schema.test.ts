import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";
import { buildGrid, CSV_HEADER, parseSweepCsv, SchemaError, selectQuantity } from "../src/schema.js";

const HEADER = CSV_HEADER.join(",");

const fixture = (name: string): string =>
  readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf8");

describe("parseSweepCsv", () => {
  it("parses well-formed rows with typed fields", () => {
    const text = [
      HEADER,
      "kitaev,24,1.0,0.5,1.0,gap,0.123,",
      "kitaev,24,1.0,0.5,1.0,eta_site,0.9,flag_a;flag_b",
    ].join("\n");
    const rows = parseSweepCsv(text);
    expect(rows).toHaveLength(2);
    expect(rows[0]).toEqual({
      model: "kitaev",
      n: 24,
      t: 1.0,
      mu: 0.5,
      delta: 1.0,
      quantity: "gap",
      value: 0.123,
      flags: [],
    });
    expect(rows[1]!.flags).toEqual(["flag_a", "flag_b"]);
  });

  it("accepts inf, -inf, and nan spellings in the value column", () => {
    const text = [
      HEADER,
      "kitaev,2,1.0,0.0,0.0,cost_site,inf,",
      "kitaev,2,1.0,0.0,0.0,eta_site,nan,",
      "kitaev,2,1.0,0.0,0.0,gap,-inf,",
    ].join("\n");
    const rows = parseSweepCsv(text);
    expect(rows[0]!.value).toBe(Infinity);
    expect(Number.isNaN(rows[1]!.value)).toBe(true);
    expect(rows[2]!.value).toBe(-Infinity);
  });

  it("parses scientific notation and a trailing newline", () => {
    const rows = parseSweepCsv(`${HEADER}\nglobal,8,1.0,-0.5,0.0,gap,3.18e-22,\n`);
    expect(rows).toHaveLength(1);
    expect(rows[0]!.value).toBeCloseTo(3.18e-22, 30);
  });

  it("reads the flagged fixture produced by the sweep writer", () => {
    const rows = parseSweepCsv(fixture("flagged.csv"));
    expect(rows).toHaveLength(2);
    expect(rows[0]!.flags).toEqual(["degenerate_gap"]);
    expect(rows[1]!.value).toBe(Infinity);
    expect(rows[1]!.flags).toEqual(["degenerate_gap", "infinite_cost"]);
  });

  it("rejects a wrong header", () => {
    expect(() => parseSweepCsv("model,n,t,mu,delta,quantity,value\nx")).toThrow(SchemaError);
    expect(() => parseSweepCsv("Model,N,T,MU,DELTA,QUANTITY,VALUE,FLAGS")).toThrow(/bad header/);
  });

  it("rejects an empty file", () => {
    expect(() => parseSweepCsv("")).toThrow(/empty file/);
    expect(() => parseSweepCsv("\n\n")).toThrow(/empty file/);
  });

  it("rejects rows with the wrong column count, naming the line", () => {
    expect(() => parseSweepCsv(`${HEADER}\nkitaev,24,1.0,0.5,1.0,gap,0.1`)).toThrow(/line 2/);
    expect(() => parseSweepCsv(`${HEADER}\nkitaev,24,1.0,0.5,1.0,gap,0.1,,extra`)).toThrow(
      /expected 8 columns, got 9/,
    );
  });

  it("rejects malformed floats", () => {
    expect(() => parseSweepCsv(`${HEADER}\nkitaev,24,abc,0.5,1.0,gap,0.1,`)).toThrow(
      /t is not a float/,
    );
    expect(() => parseSweepCsv(`${HEADER}\nkitaev,24,1.0,0.5,1.0,gap,1.0e,`)).toThrow(SchemaError);
  });

  it("rejects non-finite parameter columns while allowing them in value", () => {
    expect(() => parseSweepCsv(`${HEADER}\nkitaev,24,inf,0.5,1.0,gap,0.1,`)).toThrow(
      /t must be finite/,
    );
    expect(() => parseSweepCsv(`${HEADER}\nkitaev,24,1.0,nan,1.0,gap,0.1,`)).toThrow(
      /mu must be finite/,
    );
  });

  it("rejects bad n fields", () => {
    for (const n of ["0", "-3", "2.5", ""]) {
      expect(() => parseSweepCsv(`${HEADER}\nkitaev,${n},1.0,0.5,1.0,gap,0.1,`)).toThrow(SchemaError);
    }
  });

  it("rejects flag tokens outside the lowercase token alphabet", () => {
    expect(() => parseSweepCsv(`${HEADER}\nkitaev,24,1.0,0.5,1.0,gap,0.1,BadFlag`)).toThrow(
      /bad flag/,
    );
    expect(() => parseSweepCsv(`${HEADER}\nkitaev,24,1.0,0.5,1.0,gap,0.1,a;`)).toThrow(/bad flag/);
  });

  it("rejects bad model and quantity tokens", () => {
    expect(() => parseSweepCsv(`${HEADER}\nKitaev,24,1.0,0.5,1.0,gap,0.1,`)).toThrow(/bad model/);
    expect(() => parseSweepCsv(`${HEADER}\nkitaev,24,1.0,0.5,1.0,Gap,0.1,`)).toThrow(/bad quantity/);
  });
});

describe("selectQuantity", () => {
  it("filters to one quantity and errors on absent names", () => {
    const rows = parseSweepCsv(fixture("flagged.csv"));
    expect(selectQuantity(rows, "gap")).toHaveLength(1);
    expect(() => selectQuantity(rows, "eta_half")).toThrow(/file has: cost_site, gap/);
  });
});

describe("buildGrid", () => {
  const row = (mu: number, delta: number, value = 1.0) =>
    `kitaev,8,1.0,${mu},${delta},gap,${value},`;

  it("arranges rows by sorted mu and delta regardless of input order", () => {
    const rows = parseSweepCsv(
      [HEADER, row(1, 0), row(0, 1), row(1, 1), row(0, 0, 7.0)].join("\n"),
    );
    const grid = buildGrid(rows);
    expect(grid.mus).toEqual([0, 1]);
    expect(grid.deltas).toEqual([0, 1]);
    expect(grid.values[0]![0]!.value).toBe(7.0);
  });

  it("rejects duplicate grid points", () => {
    const rows = parseSweepCsv([HEADER, row(0, 0), row(0, 0)].join("\n"));
    expect(() => buildGrid(rows)).toThrow(/duplicate grid point/);
  });

  it("rejects incomplete grids", () => {
    const rows = parseSweepCsv([HEADER, row(0, 0), row(1, 0), row(0, 1)].join("\n"));
    expect(() => buildGrid(rows)).toThrow(/incomplete grid/);
  });
});
