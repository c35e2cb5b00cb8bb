import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { main } from "../src/main.js";

const fixturesDir = fileURLToPath(new URL("./fixtures", import.meta.url));
const workDir = mkdtempSync(join(tmpdir(), "fermivac-plots-"));

let stdoutLines: string[] = [];
let stderrLines: string[] = [];

beforeEach(() => {
  stdoutLines = [];
  stderrLines = [];
  vi.spyOn(process.stdout, "write").mockImplementation((chunk) => {
    stdoutLines.push(String(chunk));
    return true;
  });
  vi.spyOn(process.stderr, "write").mockImplementation((chunk) => {
    stderrLines.push(String(chunk));
    return true;
  });
});

afterEach(() => {
  vi.restoreAllMocks();
});

afterAll(() => {
  rmSync(workDir, { recursive: true, force: true });
});

describe("heatmap command", () => {
  it("renders the full sweep fixture and reports the output path", () => {
    const out = join(workDir, "gap72.svg");
    expect(main(["heatmap", join(fixturesDir, "gap72.csv"), "gap", out])).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg).toContain("ln(gap)");
    expect(stdoutLines.join("")).toContain(`wrote ${out}`);
  });

  it("fails with exit 1 on a schema violation", () => {
    const bad = join(workDir, "bad-header.csv");
    writeFileSync(bad, "model,n,t,mu\nkitaev,8,1.0,0.5\n");
    expect(main(["heatmap", bad, "gap", join(workDir, "never.svg")])).toBe(1);
    expect(stderrLines.join("")).toContain("schema error");
  });

  it("fails with exit 1 when the quantity is absent", () => {
    expect(
      main(["heatmap", join(fixturesDir, "gap72.csv"), "nope", join(workDir, "never.svg")]),
    ).toBe(1);
    expect(stderrLines.join("")).toContain("not present");
  });

  it("fails with exit 1 when the input file does not exist", () => {
    expect(main(["heatmap", join(workDir, "missing.csv"), "gap", join(workDir, "never.svg")])).toBe(1);
  });
});

describe("scaling command", () => {
  it("renders a fitted scaling plot", () => {
    const out = join(workDir, "mu1.svg");
    expect(main(["scaling", join(fixturesDir, "scaling_mu1.csv"), out])).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain("stroke-dasharray");
    expect(svg).toContain("loglog fit");
  });

  it("accepts --fit and --quantity options", () => {
    const out = join(workDir, "mu05.svg");
    expect(
      main(["scaling", join(fixturesDir, "scaling_mu05.csv"), out, "--fit", "semilog", "--quantity", "gap"]),
    ).toBe(0);
    expect(readFileSync(out, "utf8")).toContain("semilog fit");
  });

  it("prints fit-suppression warnings on stderr but still succeeds", () => {
    const short = join(workDir, "short.csv");
    writeFileSync(
      short,
      "model,n,t,mu,delta,quantity,value,flags\nkitaev,8,1.0,0.5,1.0,gap,0.4,\nkitaev,16,1.0,0.5,1.0,gap,0.2,\n",
    );
    const out = join(workDir, "short.svg");
    expect(main(["scaling", short, out])).toBe(0);
    expect(stderrLines.join("")).toContain("fit suppressed");
    expect(readFileSync(out, "utf8")).toContain("<circle");
  });
});

describe("usage handling", () => {
  it("exits 2 with usage text when called without a command", () => {
    expect(main([])).toBe(2);
    expect(stdoutLines.join("")).toContain("usage: fermivac-plots");
  });

  it("prints help with exit 0", () => {
    expect(main(["--help"])).toBe(0);
    expect(stdoutLines.join("")).toContain("heatmap CSV QUANTITY OUT.svg");
  });

  it("exits 2 on malformed invocations", () => {
    expect(main(["frobnicate"])).toBe(2);
    expect(main(["heatmap", "only.csv"])).toBe(2);
    expect(main(["scaling", "a.csv"])).toBe(2);
    expect(main(["scaling", "a.csv", "b.svg", "--fit", "cubic"])).toBe(2);
    expect(main(["scaling", "a.csv", "b.svg", "--fit"])).toBe(2);
    expect(main(["scaling", "a.csv", "b.svg", "--what"])).toBe(2);
    expect(stderrLines.join("")).toContain("usage: fermivac-plots");
  });
});
