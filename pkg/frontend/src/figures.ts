/**
 * The five figure builders.  Each consumes parsed table rows and
 * returns a complete SVG document string; nothing here re-runs physics
 * or recomputes statistics beyond scaling colors.
 *
 * Annotation convention for absorptivity panels: the binding-energy
 * label sits top-left and the panel's maximum absorptivity top-right,
 * quoted verbatim from the data file.
 */

import { diverging, heat } from "./color.js";
import { contourSegments, logLevels, type Grid } from "./marching.js";
import {
  circle, document as svgDocument, fmt, line, path, rect, text,
} from "./svg.js";
import type { CompareCell, HistCell, MapPoint } from "./tables.js";

// ---------------------------------------------------------------------------
// Shared frame helpers
// ---------------------------------------------------------------------------

interface Frame {
  x0: number; // left edge of the plot area, px
  y0: number; // top edge, px
  w: number;
  h: number;
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

function toX(f: Frame, v: number): number {
  return f.x0 + ((v - f.xMin) / (f.xMax - f.xMin)) * f.w;
}

function toY(f: Frame, v: number): number {
  return f.y0 + f.h - ((v - f.yMin) / (f.yMax - f.yMin)) * f.h;
}

function niceTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((n) => n >= rough) ?? rough;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 0.01; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function frameAxes(f: Frame, xLabel: string, yLabel: string): string[] {
  const parts: string[] = [];
  parts.push(
    `<rect x="${fmt(f.x0)}" y="${fmt(f.y0)}" width="${fmt(f.w)}" height="${fmt(f.h)}" fill="none" stroke="#333" stroke-width="1"/>`
  );
  for (const t of niceTicks(f.xMin, f.xMax, 6)) {
    if (t < f.xMin || t > f.xMax) continue;
    const x = toX(f, t);
    parts.push(line(x, f.y0 + f.h, x, f.y0 + f.h + 4, "#333"));
    parts.push(text(x, f.y0 + f.h + 15, String(t), { anchor: "middle", size: 10 }));
  }
  for (const t of niceTicks(f.yMin, f.yMax, 5)) {
    if (t < f.yMin || t > f.yMax) continue;
    const y = toY(f, t);
    parts.push(line(f.x0 - 4, y, f.x0, y, "#333"));
    parts.push(text(f.x0 - 7, y + 3, String(t), { anchor: "end", size: 10 }));
  }
  parts.push(text(f.x0 + f.w / 2, f.y0 + f.h + 30, xLabel, { anchor: "middle" }));
  parts.push(text(f.x0 - 38, f.y0 - 8, yLabel, { anchor: "start" }));
  return parts;
}

function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

function maxFinite(values: number[]): number {
  let best = NaN;
  for (const v of values) {
    if (Number.isFinite(v) && !(v <= best)) best = v;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Disk slices of the trivariate absorptivity map
// ---------------------------------------------------------------------------

/**
 * One half-disk panel per binding-energy level, nodes colored relative
 * to the panel's own maximum so the shrinking absorbing region stays
 * visible as the overall level drops.
 */
export function diskSlices(points: MapPoint[]): string {
  const levels = uniqueSorted(points.map((p) => p.eps)).reverse();
  if (levels.length === 0) throw new Error("absorptivity map holds no points");
  const panelW = 225;
  const panelH = 150;
  const margin = 18;
  const width = margin + levels.length * panelW + margin;
  const height = 205;
  const parts: string[] = [];

  levels.forEach((eps, i) => {
    const rows = points.filter((p) => p.eps === eps);
    const radius = Math.max(...rows.map((p) => p.lb));
    const panelMax = maxFinite(rows.map((p) => p.absorptivity));
    const maxRow = rows.find((p) => p.absorptivity === panelMax);

    const cx = margin + i * panelW + panelW / 2;
    const cy = 175;
    const rPx = Math.min(panelW / 2 - 14, 125);
    const scale = rPx / radius;
    const dot = rPx * 0.09;

    parts.push(path(
      `M ${fmt(cx - rPx)} ${fmt(cy)} A ${fmt(rPx)} ${fmt(rPx)} 0 0 1 ${fmt(cx + rPx)} ${fmt(cy)} Z`,
      "#999"
    ));
    for (const p of rows) {
      const x = cx + p.lbx * scale;
      const y = cy - p.lby * scale;
      const color = Number.isFinite(p.absorptivity) && panelMax > 0
        ? heat(p.absorptivity / panelMax)
        : "#dddddd";
      parts.push(circle(x, y, dot, color));
    }
    parts.push(text(cx - panelW / 2 + 10, 22, `ε_B = ${eps}`, { size: 12 }));
    parts.push(text(
      cx + panelW / 2 - 10, 22,
      `ℰ_max = ${maxRow ? maxRow.absorptivityRaw : "n/a"}`,
      { anchor: "end", size: 12 }
    ));
    parts.push(text(cx, cy + 16, "l_Bx →", { anchor: "middle", size: 10, fill: "#666" }));
  });
  return svgDocument(width, height, parts);
}

// ---------------------------------------------------------------------------
// Bivariate absorptivity contours
// ---------------------------------------------------------------------------

/**
 * Contours of the bivariate absorptivity over the (ε_B, l_B) plane,
 * logarithmically spaced in ℰ.  Each measured column is interpolated
 * onto a common l lattice; l values a column never reached stay masked.
 */
export function absorptivityContours(points: MapPoint[]): string {
  const levels = uniqueSorted(points.map((p) => p.eps));
  if (levels.length < 2) {
    throw new Error("need at least two binding-energy levels for contours");
  }
  const finite = points.filter((p) => Number.isFinite(p.absorptivity));
  const mapMax = maxFinite(finite.map((p) => p.absorptivity));
  const maxRow = finite.find((p) => p.absorptivity === mapMax);

  const lLo = Math.min(...finite.map((p) => p.lb));
  const lHi = Math.max(...finite.map((p) => p.lb));
  const lattice: number[] = [];
  const nLat = 80;
  for (let i = 0; i < nLat; i++) lattice.push(lLo + ((lHi - lLo) * i) / (nLat - 1));

  const values: number[][] = lattice.map(() => levels.map(() => NaN));
  levels.forEach((eps, ix) => {
    const column = finite
      .filter((p) => p.eps === eps)
      .sort((a, b) => a.lb - b.lb);
    lattice.forEach((l, iy) => {
      for (let j = 0; j + 1 < column.length; j++) {
        const a = column[j] as MapPoint;
        const b = column[j + 1] as MapPoint;
        if (l >= a.lb && l <= b.lb) {
          const t = (l - a.lb) / (b.lb - a.lb);
          (values[iy] as number[])[ix] =
            a.absorptivity + t * (b.absorptivity - a.absorptivity);
          break;
        }
      }
    });
  });
  const grid: Grid = { xs: levels, ys: lattice, values };

  const f: Frame = {
    x0: 60, y0: 35, w: 420, h: 280,
    xMin: levels[0] as number, xMax: levels[levels.length - 1] as number,
    yMin: lLo, yMax: lHi,
  };
  const parts = frameAxes(f, "ε_B", "l_B");
  const contourLevels = logLevels(mapMax / 50, mapMax, 8);
  contourLevels.forEach((lvl, i) => {
    const color = heat(i / (contourLevels.length - 1));
    for (const [[xa, ya], [xb, yb]] of contourSegments(grid, lvl)) {
      parts.push(line(toX(f, xa), toY(f, ya), toX(f, xb), toY(f, yb), color, 1.4));
    }
  });
  for (const p of finite) {
    parts.push(circle(toX(f, p.eps), toY(f, p.lb), 1.5, "#bbbbbb"));
  }
  parts.push(text(
    f.x0 + f.w - 6, f.y0 - 8,
    `ℰ_max = ${maxRow ? maxRow.absorptivityRaw : "n/a"}`,
    { anchor: "end", size: 12 }
  ));
  return svgDocument(540, 370, parts);
}

// ---------------------------------------------------------------------------
// Cell-grid helpers for the comparison table
// ---------------------------------------------------------------------------

interface CellGrid {
  eps: number[];
  l: number[];
  cellW: (f: Frame) => number;
  cellH: (f: Frame) => number;
  frame: (x0: number, y0: number, w: number, h: number) => Frame;
}

function compareGrid(cells: CompareCell[]): CellGrid {
  const eps = uniqueSorted(cells.map((c) => c.epsCenter));
  const l = uniqueSorted(cells.map((c) => c.lCenter));
  if (eps.length < 2 || l.length < 2) {
    throw new Error("comparison table does not form a grid");
  }
  const dEps = (eps[1] as number) - (eps[0] as number);
  const dL = (l[1] as number) - (l[0] as number);
  return {
    eps,
    l,
    cellW: (f) => (dEps / (f.xMax - f.xMin)) * f.w,
    cellH: (f) => (dL / (f.yMax - f.yMin)) * f.h,
    frame: (x0, y0, w, h) => ({
      x0, y0, w, h,
      xMin: (eps[0] as number) - dEps / 2,
      xMax: (eps[eps.length - 1] as number) + dEps / 2,
      yMin: (l[0] as number) - dL / 2,
      yMax: (l[l.length - 1] as number) + dL / 2,
    }),
  };
}

function heatCells(
  f: Frame, grid: CellGrid, cells: CompareCell[],
  value: (c: CompareCell) => number, vMax: number
): string[] {
  const parts: string[] = [];
  const w = grid.cellW(f);
  const h = grid.cellH(f);
  for (const c of cells) {
    const v = value(c);
    const x = toX(f, c.epsCenter) - w / 2;
    const y = toY(f, c.lCenter) - h / 2;
    if (c.included && Number.isFinite(v)) {
      parts.push(rect(x, y, w, h, heat(vMax > 0 ? v / vMax : 0)));
    } else if (Number.isFinite(c.measured)) {
      parts.push(rect(x, y, w, h, "#e8e8e8")); // data there, masked out
    }
  }
  return parts;
}

// ---------------------------------------------------------------------------
// Predicted and measured densities side by side
// ---------------------------------------------------------------------------

export function predictionPanels(cells: CompareCell[]): string {
  const grid = compareGrid(cells);
  const included = cells.filter((c) => c.included);
  if (included.length === 0) throw new Error("comparison has no included cells");
  const shared = Math.max(
    maxFinite(included.map((c) => c.measuredScaled)),
    maxFinite(included.map((c) => c.predictedScaled))
  );
  const parts: string[] = [];
  const panels: Array<[string, (c: CompareCell) => number]> = [
    ["measured", (c) => c.measuredScaled],
    ["predicted", (c) => c.predictedScaled],
  ];
  panels.forEach(([title, value], i) => {
    const f = grid.frame(60 + i * 300, 35, 250, 260);
    parts.push(...heatCells(f, grid, cells, value, shared));
    parts.push(...frameAxes(f, "ε_B", i === 0 ? "l_B" : ""));
    parts.push(text(f.x0 + f.w / 2, f.y0 - 10, title, { anchor: "middle", size: 13 }));
  });
  return svgDocument(670, 350, parts);
}

// ---------------------------------------------------------------------------
// Overlay and ratio maps
// ---------------------------------------------------------------------------

export function ratioPanels(cells: CompareCell[]): string {
  const grid = compareGrid(cells);
  const included = cells.filter((c) => c.included);
  if (included.length === 0) throw new Error("comparison has no included cells");
  const measMax = maxFinite(included.map((c) => c.measuredScaled));
  const parts: string[] = [];

  // left: measured density with predicted contours on top
  const fLeft = grid.frame(60, 35, 250, 260);
  parts.push(...heatCells(fLeft, grid, cells, (c) => c.measuredScaled, measMax));
  const values: number[][] = grid.l.map((lv) =>
    grid.eps.map((ev) => {
      const cell = cells.find((c) => c.epsCenter === ev && c.lCenter === lv);
      return cell && cell.included ? cell.predictedScaled : NaN;
    })
  );
  const predMax = maxFinite(included.map((c) => c.predictedScaled));
  for (const lvl of logLevels(predMax / 20, predMax, 5)) {
    for (const [[xa, ya], [xb, yb]] of contourSegments(
      { xs: grid.eps, ys: grid.l, values }, lvl
    )) {
      parts.push(line(
        toX(fLeft, xa), toY(fLeft, ya), toX(fLeft, xb), toY(fLeft, yb),
        "#ffffff", 1.2
      ));
    }
  }
  parts.push(...frameAxes(fLeft, "ε_B", "l_B"));
  parts.push(text(fLeft.x0 + fLeft.w / 2, fLeft.y0 - 10,
    "measured + predicted contours", { anchor: "middle", size: 12 }));

  // right: ratio of scaled prediction to scaled measurement
  const fRight = grid.frame(360, 35, 250, 260);
  const w = grid.cellW(fRight);
  const h = grid.cellH(fRight);
  for (const c of cells) {
    const x = toX(fRight, c.epsCenter) - w / 2;
    const y = toY(fRight, c.lCenter) - h / 2;
    if (c.included && Number.isFinite(c.ratio)) {
      parts.push(rect(x, y, w, h, diverging(c.ratio)));
    } else if (Number.isFinite(c.measured)) {
      parts.push(rect(x, y, w, h, "#e8e8e8"));
    }
  }
  parts.push(...frameAxes(fRight, "ε_B", ""));
  parts.push(text(fRight.x0 + fRight.w / 2, fRight.y0 - 10,
    "predicted / measured", { anchor: "middle", size: 12 }));
  [["0.5", diverging(0.5)], ["1", diverging(1)], ["2", diverging(2)]].forEach(
    ([label, color], i) => {
      const x = fRight.x0 + fRight.w - 90 + i * 32;
      parts.push(rect(x, fRight.y0 + fRight.h + 22, 10, 10, color as string));
      parts.push(text(x + 13, fRight.y0 + fRight.h + 31, label as string, { size: 10 }));
    }
  );
  return svgDocument(670, 350, parts);
}

// ---------------------------------------------------------------------------
// Outcome histogram
// ---------------------------------------------------------------------------

/** Boundary-corrected density of chaotic breakups over (ε_B, l_B). */
export function outcomeHistogram(cells: HistCell[]): string {
  if (cells.length === 0) throw new Error("histogram holds no cells");
  const epsEdges = uniqueSorted(cells.flatMap((c) => [c.epsLo, c.epsHi]));
  const lEdges = uniqueSorted(cells.flatMap((c) => [c.lLo, c.lHi]));
  const densMax = maxFinite(cells.map((c) => c.density));
  const samples = cells.reduce((acc, c) => acc + c.count, 0);

  const f: Frame = {
    x0: 60, y0: 35, w: 420, h: 280,
    xMin: epsEdges[0] as number, xMax: epsEdges[epsEdges.length - 1] as number,
    yMin: lEdges[0] as number, yMax: lEdges[lEdges.length - 1] as number,
  };
  const parts: string[] = [];
  for (const c of cells) {
    if (!Number.isFinite(c.density)) continue; // outside the allowed region
    const x = toX(f, c.epsLo);
    const y = toY(f, c.lHi);
    parts.push(rect(
      x, y, toX(f, c.epsHi) - x, toY(f, c.lLo) - y,
      heat(densMax > 0 ? c.density / densMax : 0)
    ));
  }
  parts.push(...frameAxes(f, "ε_B", "l_B"));
  parts.push(text(f.x0 + f.w - 6, f.y0 - 8, `samples = ${samples}`,
    { anchor: "end", size: 12 }));
  return svgDocument(540, 370, parts);
}
