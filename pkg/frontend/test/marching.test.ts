import { describe, expect, it } from "vitest";

import { contourSegments, logLevels, type Grid } from "../src/marching.js";

function gridOf(
  xs: number[], ys: number[], f: (x: number, y: number) => number
): Grid {
  return { xs, ys, values: ys.map((y) => xs.map((x) => f(x, y))) };
}

describe("contourSegments", () => {
  it("places a straight contour of a linear field exactly", () => {
    // f = x, level 0.5: every segment lies on the vertical line x = 0.5
    const grid = gridOf([0, 1], [0, 1], (x) => x);
    const segs = contourSegments(grid, 0.5);
    expect(segs).toHaveLength(1);
    for (const [[xa], [xb]] of segs) {
      expect(xa).toBeCloseTo(0.5, 12);
      expect(xb).toBeCloseTo(0.5, 12);
    }
  });

  it("interpolates the crossing position linearly", () => {
    // f = y over rows at 0 and 4, level 1 -> crossing at y = 1
    const grid = gridOf([0, 1], [0, 4], (_x, y) => y);
    const segs = contourSegments(grid, 1);
    expect(segs[0]![0][1]).toBeCloseTo(1, 12);
  });

  it("rings a central bump with a closed chain of segments", () => {
    const xs = [-2, -1, 0, 1, 2];
    const grid = gridOf(xs, xs, (x, y) => Math.exp(-(x * x + y * y)));
    const segs = contourSegments(grid, 0.5);
    expect(segs.length).toBeGreaterThanOrEqual(4);
    // endpoints appear an even number of times in a closed chain
    const seen = new Map<string, number>();
    for (const seg of segs) {
      for (const [x, y] of seg) {
        const key = `${x.toFixed(9)},${y.toFixed(9)}`;
        seen.set(key, (seen.get(key) ?? 0) + 1);
      }
    }
    for (const count of seen.values()) expect(count % 2).toBe(0);
  });

  it("emits nothing for a constant field", () => {
    const grid = gridOf([0, 1, 2], [0, 1], () => 3);
    expect(contourSegments(grid, 0.5)).toHaveLength(0);
    expect(contourSegments(grid, 3)).toHaveLength(0);
  });

  it("skips cells with a NaN corner", () => {
    const grid = gridOf([0, 1, 2], [0, 1], (x) => x);
    (grid.values[0] as number[])[2] = NaN;
    const segs = contourSegments(grid, 1.5); // only the masked cell crosses
    expect(segs).toHaveLength(0);
  });

  it("resolves both diagonals of a saddle cell", () => {
    const grid: Grid = { xs: [0, 1], ys: [0, 1], values: [[1, 0], [0, 1]] };
    expect(contourSegments(grid, 0.5)).toHaveLength(2);
  });
});

describe("logLevels", () => {
  it("spaces levels geometrically between the bounds", () => {
    const lvls = logLevels(0.01, 1, 3);
    expect(lvls[0]).toBeCloseTo(0.01, 12);
    expect(lvls[1]).toBeCloseTo(0.1, 12);
    expect(lvls[2]).toBeCloseTo(1, 12);
  });

  it("rejects non-positive bounds", () => {
    expect(() => logLevels(0, 1, 4)).toThrow();
    expect(() => logLevels(-1, 1, 4)).toThrow();
  });
});
