import { execFileSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

const HERE = dirname(fileURLToPath(import.meta.url));
const CLI = join(HERE, "..", "dist", "cli.js");

const MAP_HEADER =
  "variant,point,eps,lb,lbx,lby,n_total,n_decided,n_absorbed,n_undecided,absorptivity,stderr";

interface Result {
  code: number;
  stdout: string;
  stderr: string;
}

function run(args: string[]): Result {
  try {
    const stdout = execFileSync("node", [CLI, ...args], { encoding: "utf-8" });
    return { code: 0, stdout, stderr: "" };
  } catch (err) {
    const e = err as { status: number; stdout: string; stderr: string };
    return { code: e.status, stdout: e.stdout ?? "", stderr: e.stderr ?? "" };
  }
}

function tinyMap(): string {
  const dir = mkdtempSync(join(tmpdir(), "clitest-"));
  const rows = [];
  let point = 0;
  for (const eps of [-40, -70]) {
    for (const [lb, x, y] of [[5, 5, 0], [10, 0, 10], [8, -6, 5]]) {
      rows.push(`trivariate,${point},${eps}.0,${lb}.0,${x}.0,${y}.0,` +
        `100,100,${20 + point},0,0.${21 + point},0.04`);
      point += 1;
    }
  }
  const p = join(dir, "absorptivity_map.csv");
  writeFileSync(p, `${MAP_HEADER}\n${rows.join("\n")}\n`);
  return p;
}

describe("render CLI", () => {
  it("renders a figure and reports the output path", () => {
    const input = tinyMap();
    const out = join(dirname(input), "fig.svg");
    const res = run(["--kind", "disk-slices", "--in", input, "--out", out]);
    expect(res.code).toBe(0);
    expect(res.stdout).toContain(`wrote ${out}`);
    expect(existsSync(out)).toBe(true);
    expect(readFileSync(out, "utf-8")).toContain("<svg");
  });

  it("is idempotent across reruns", () => {
    const input = tinyMap();
    const out = join(dirname(input), "fig.svg");
    run(["--kind", "disk-slices", "--in", input, "--out", out]);
    const first = readFileSync(out);
    run(["--kind", "disk-slices", "--in", input, "--out", out]);
    expect(readFileSync(out).equals(first)).toBe(true);
  });

  it("rejects an unknown kind with usage", () => {
    const res = run(["--kind", "pie", "--in", "x.csv", "--out", "y.svg"]);
    expect(res.code).toBe(2);
    expect(res.stderr).toContain("unknown kind");
    expect(res.stderr).toContain("usage:");
  });

  it("requires all three arguments", () => {
    const res = run(["--kind", "disk-slices"]);
    expect(res.code).toBe(2);
  });

  it("fails cleanly on a missing input file", () => {
    const res = run(["--kind", "contours", "--in", "/no/such.csv",
      "--out", join(tmpdir(), "x.svg")]);
    expect(res.code).toBe(3);
    expect(res.stderr).toContain("cannot read");
  });

  it("fails cleanly on a schema mismatch", () => {
    const input = tinyMap();
    const out = join(dirname(input), "fig.svg");
    // histogram kind pointed at an absorptivity map
    const res = run(["--kind", "outcome-hist", "--in", input, "--out", out]);
    expect(res.code).toBe(3);
    expect(res.stderr).toContain("expected [eps_lo");
  });

  it("prints help on request", () => {
    const res = run(["--help"]);
    expect(res.code).toBe(0);
    expect(res.stdout).toContain("disk-slices");
  });
});
