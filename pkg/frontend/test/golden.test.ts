/**
 * Renders over the repository's golden desk-scale pipeline outputs.
 *
 * These exercise the real schemas rather than synthetic fixtures: every
 * figure kind must build, the ℰ_max annotations must quote the data
 * files verbatim, and re-rendering must reproduce the bytes.
 */

import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { buildFigure, render, KINDS, type FigureKind } from "../src/render.js";
import { readMap, type MapPoint } from "../src/tables.js";

const HERE = dirname(fileURLToPath(import.meta.url));
const GOLDEN = join(HERE, "..", "..", "golden");

const INPUT: Record<FigureKind, string> = {
  "disk-slices": join(GOLDEN, "trivariate_map.csv"),
  "contours": join(GOLDEN, "bivariate_map.csv"),
  "prediction": join(GOLDEN, "comparison.csv"),
  "ratio": join(GOLDEN, "comparison.csv"),
  "outcome-hist": join(GOLDEN, "outcome_hist.csv"),
};

function maxRow(points: MapPoint[]): MapPoint {
  let best: MapPoint | undefined;
  for (const p of points) {
    if (Number.isFinite(p.absorptivity) &&
        (best === undefined || p.absorptivity > best.absorptivity)) {
      best = p;
    }
  }
  if (best === undefined) throw new Error("no finite absorptivity");
  return best;
}

describe("golden renders", () => {
  it("builds every figure kind from the golden files", () => {
    for (const kind of KINDS) {
      const svg = buildFigure(kind, INPUT[kind]);
      expect(svg.startsWith("<svg")).toBe(true);
      expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
      expect(svg.length).toBeGreaterThan(2000);
      expect(svg.includes("NaN")).toBe(false);
    }
  });

  it("disk slices quote each level's maximum verbatim", () => {
    const points = readMap(INPUT["disk-slices"]);
    const svg = buildFigure("disk-slices", INPUT["disk-slices"]);
    const levels = [...new Set(points.map((p) => p.eps))];
    expect(levels.length).toBe(5);
    for (const eps of levels) {
      const best = maxRow(points.filter((p) => p.eps === eps));
      expect(svg).toContain(`ℰ_max = ${best.absorptivityRaw}`);
    }
  });

  it("contours quote the global maximum verbatim", () => {
    const points = readMap(INPUT["contours"]);
    const svg = buildFigure("contours", INPUT["contours"]);
    expect(svg).toContain(`ℰ_max = ${maxRow(points).absorptivityRaw}`);
  });

  it("re-rendering reproduces the bytes", () => {
    const dir = mkdtempSync(join(tmpdir(), "golden-"));
    for (const kind of KINDS) {
      const first = join(dir, `${kind}-1.svg`);
      const second = join(dir, `${kind}-2.svg`);
      render({ kind, inputs: [INPUT[kind]], output: first });
      render({ kind, inputs: [INPUT[kind]], output: second });
      expect(readFileSync(second, "utf-8")).toBe(readFileSync(first, "utf-8"));
    }
  });
});
