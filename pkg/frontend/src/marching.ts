/**
 * Marching-squares contour extraction on a regular grid.
 *
 * Cells touching a NaN corner are skipped, which lets callers mask the
 * outside of an irregularly bounded domain.  Output is a flat list of
 * line segments in data coordinates; for plotting there is no need to
 * chain them into closed paths.
 */

export interface Grid {
  xs: number[]; // ascending sample coordinates
  ys: number[];
  values: number[][]; // values[iy][ix]
}

export type Segment = [[number, number], [number, number]];

type Edge = "bottom" | "right" | "top" | "left";

// edge pairs cut by the contour for each corner-occupancy case; saddle
// cases 5 and 10 are resolved by the cell-center mean
const CASES: ReadonlyArray<ReadonlyArray<[Edge, Edge]>> = [
  [], // 0
  [["left", "bottom"]], // 1
  [["bottom", "right"]], // 2
  [["left", "right"]], // 3
  [["right", "top"]], // 4
  [], // 5 saddle
  [["bottom", "top"]], // 6
  [["left", "top"]], // 7
  [["top", "left"]], // 8
  [["top", "bottom"]], // 9
  [], // 10 saddle
  [["right", "top"]], // 11
  [["right", "left"]], // 12
  [["bottom", "right"]], // 13
  [["left", "bottom"]], // 14
  [], // 15
];

export function contourSegments(grid: Grid, level: number): Segment[] {
  const { xs, ys, values } = grid;
  const segments: Segment[] = [];
  for (let iy = 0; iy + 1 < ys.length; iy++) {
    for (let ix = 0; ix + 1 < xs.length; ix++) {
      const v00 = values[iy]?.[ix] ?? NaN; // bottom-left
      const v10 = values[iy]?.[ix + 1] ?? NaN; // bottom-right
      const v11 = values[iy + 1]?.[ix + 1] ?? NaN; // top-right
      const v01 = values[iy + 1]?.[ix] ?? NaN; // top-left
      if ([v00, v10, v11, v01].some(Number.isNaN)) continue;

      const x0 = xs[ix] as number;
      const x1 = xs[ix + 1] as number;
      const y0 = ys[iy] as number;
      const y1 = ys[iy + 1] as number;

      const mask =
        (v00 > level ? 1 : 0) |
        (v10 > level ? 2 : 0) |
        (v11 > level ? 4 : 0) |
        (v01 > level ? 8 : 0);
      if (mask === 0 || mask === 15) continue;

      const cross = (a: number, b: number): number => (level - a) / (b - a);
      const point = (edge: Edge): [number, number] => {
        switch (edge) {
          case "bottom":
            return [x0 + cross(v00, v10) * (x1 - x0), y0];
          case "top":
            return [x0 + cross(v01, v11) * (x1 - x0), y1];
          case "left":
            return [x0, y0 + cross(v00, v01) * (y1 - y0)];
          case "right":
            return [x1, y0 + cross(v10, v11) * (y1 - y0)];
        }
      };

      let pairs = CASES[mask] as Array<[Edge, Edge]>;
      if (mask === 5 || mask === 10) {
        const centerAbove = (v00 + v10 + v11 + v01) / 4 > level;
        if (mask === 5) {
          pairs = centerAbove
            ? [["left", "top"], ["bottom", "right"]]
            : [["left", "bottom"], ["right", "top"]];
        } else {
          pairs = centerAbove
            ? [["left", "bottom"], ["right", "top"]]
            : [["left", "top"], ["bottom", "right"]];
        }
      }
      for (const [a, b] of pairs) {
        segments.push([point(a), point(b)]);
      }
    }
  }
  return segments;
}

/** Logarithmically spaced contour levels between two positive bounds. */
export function logLevels(lo: number, hi: number, count: number): number[] {
  if (!(lo > 0) || !(hi > lo) || count < 2) {
    throw new Error(`cannot place ${count} log levels in [${lo}, ${hi}]`);
  }
  const out: number[] = [];
  for (let i = 0; i < count; i++) {
    out.push(lo * Math.pow(hi / lo, i / (count - 1)));
  }
  return out;
}
