import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { num, readTable, SchemaError } from "../src/csv.js";
import { readComparison, readHist, readMap } from "../src/tables.js";

function write(name: string, content: string): string {
  const dir = mkdtempSync(join(tmpdir(), "figtest-"));
  const p = join(dir, name);
  writeFileSync(p, content);
  return p;
}

const MAP_HEADER =
  "variant,point,eps,lb,lbx,lby,n_total,n_decided,n_absorbed,n_undecided,absorptivity,stderr";

describe("readTable", () => {
  it("parses rows against the expected header", () => {
    const p = write("t.csv", "a,b\n1,2\n3,4\n");
    const t = readTable(p, ["a", "b"]);
    expect(t.rows).toEqual([["1", "2"], ["3", "4"]]);
  });

  it("rejects a wrong header with both column lists", () => {
    const p = write("t.csv", "a,c\n1,2\n");
    expect(() => readTable(p, ["a", "b"])).toThrow(SchemaError);
    expect(() => readTable(p, ["a", "b"])).toThrow(/\[a, c\].*\[a, b\]/);
  });

  it("rejects a ragged row with its position", () => {
    const p = write("t.csv", "a,b\n1,2\n7\n");
    expect(() => readTable(p, ["a", "b"])).toThrow(/row 2 has 1 fields/);
  });

  it("rejects a missing file", () => {
    expect(() => readTable("/no/such/file.csv", ["a"])).toThrow(SchemaError);
  });
});

describe("num", () => {
  it("parses shortest-repr floats exactly", () => {
    expect(num("0.09583333333333334")).toBe(0.09583333333333334);
  });

  it("maps empty fields to NaN", () => {
    expect(num("")).toBeNaN();
  });

  it("rejects garbage", () => {
    expect(() => num("abc")).toThrow(SchemaError);
  });
});

describe("typed loaders", () => {
  it("reads an absorptivity map and keeps the verbatim field", () => {
    const p = write("map.csv",
      `${MAP_HEADER}\n` +
      "trivariate,0,-40.0,10.0,8.0,6.0,400,398,52,2,0.1306532663316583,0.016887\n" +
      "trivariate,1,-40.0,5.0,5.0,0.0,400,0,0,400,,\n");
    const rows = readMap(p);
    expect(rows).toHaveLength(2);
    expect(rows[0]!.absorptivity).toBeCloseTo(0.1306532663316583, 15);
    expect(rows[0]!.absorptivityRaw).toBe("0.1306532663316583");
    expect(rows[1]!.absorptivity).toBeNaN();
    expect(rows[1]!.absorptivityRaw).toBe("");
  });

  it("reads a histogram with blank density as NaN", () => {
    const p = write("h.csv",
      "eps_lo,eps_hi,l_lo,l_hi,count,area,density\n" +
      "-150.0,-147.0,1.5,3.2,0,0.0,\n" +
      "-147.0,-144.0,1.5,3.2,12,5.1,2.35\n");
    const rows = readHist(p);
    expect(rows[0]!.density).toBeNaN();
    expect(rows[1]!.count).toBe(12);
  });

  it("reads a comparison table with the included flag", () => {
    const p = write("c.csv",
      "eps_center,l_center,measured,predicted,measured_scaled,predicted_scaled,ratio,count,included\n" +
      "-100.0,10.0,1.5,1.4,1.1,1.05,0.9545,40,1\n" +
      "-100.0,20.0,0.2,,,,,3,0\n");
    const rows = readComparison(p);
    expect(rows[0]!.included).toBe(true);
    expect(rows[1]!.included).toBe(false);
    expect(rows[1]!.predicted).toBeNaN();
  });
});
