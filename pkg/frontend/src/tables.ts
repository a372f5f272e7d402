/**
 * Typed loaders for the three record schemas the renderer understands:
 * absorptivity maps, outcome histograms, and prediction-vs-measurement
 * comparisons.
 */

import { num, readTable } from "./csv.js";

// ---------------------------------------------------------------------------
// Absorptivity map (bivariate or trivariate variant)
// ---------------------------------------------------------------------------

export interface MapPoint {
  variant: string;
  point: number;
  eps: number;
  lb: number;
  lbx: number;
  lby: number;
  nTotal: number;
  nDecided: number;
  nAbsorbed: number;
  nUndecided: number;
  absorptivity: number; // NaN when no realization was decided
  absorptivityRaw: string; // verbatim field, for annotations
  stderr: number;
}

const MAP_HEADER = [
  "variant", "point", "eps", "lb", "lbx", "lby",
  "n_total", "n_decided", "n_absorbed", "n_undecided",
  "absorptivity", "stderr",
];

export function readMap(path: string): MapPoint[] {
  const table = readTable(path, MAP_HEADER);
  return table.rows.map((f) => ({
    variant: f[0] ?? "",
    point: num(f[1]),
    eps: num(f[2]),
    lb: num(f[3]),
    lbx: num(f[4]),
    lby: num(f[5]),
    nTotal: num(f[6]),
    nDecided: num(f[7]),
    nAbsorbed: num(f[8]),
    nUndecided: num(f[9]),
    absorptivity: num(f[10]),
    absorptivityRaw: f[10] ?? "",
    stderr: num(f[11]),
  }));
}

// ---------------------------------------------------------------------------
// Outcome histogram
// ---------------------------------------------------------------------------

export interface HistCell {
  epsLo: number;
  epsHi: number;
  lLo: number;
  lHi: number;
  count: number;
  area: number;
  density: number; // NaN where the cell lies outside the allowed region
}

const HIST_HEADER = ["eps_lo", "eps_hi", "l_lo", "l_hi", "count", "area", "density"];

export function readHist(path: string): HistCell[] {
  const table = readTable(path, HIST_HEADER);
  return table.rows.map((f) => ({
    epsLo: num(f[0]),
    epsHi: num(f[1]),
    lLo: num(f[2]),
    lHi: num(f[3]),
    count: num(f[4]),
    area: num(f[5]),
    density: num(f[6]),
  }));
}

// ---------------------------------------------------------------------------
// Comparison table
// ---------------------------------------------------------------------------

export interface CompareCell {
  epsCenter: number;
  lCenter: number;
  measured: number;
  predicted: number;
  measuredScaled: number;
  predictedScaled: number;
  ratio: number;
  count: number;
  included: boolean;
}

const COMPARE_HEADER = [
  "eps_center", "l_center", "measured", "predicted",
  "measured_scaled", "predicted_scaled", "ratio", "count", "included",
];

export function readComparison(path: string): CompareCell[] {
  const table = readTable(path, COMPARE_HEADER);
  return table.rows.map((f) => ({
    epsCenter: num(f[0]),
    lCenter: num(f[1]),
    measured: num(f[2]),
    predicted: num(f[3]),
    measuredScaled: num(f[4]),
    predictedScaled: num(f[5]),
    ratio: num(f[6]),
    count: num(f[7]),
    included: f[8] === "1",
  }));
}
