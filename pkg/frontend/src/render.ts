/**
 * Figure dispatch: map a kind name plus input files onto a builder and
 * write the SVG.  Rendering is read-only over the inputs, so rerunning
 * a spec reproduces the output byte for byte.
 */

import { writeFileSync } from "node:fs";

import {
  absorptivityContours, diskSlices, outcomeHistogram, predictionPanels,
  ratioPanels,
} from "./figures.js";
import { readComparison, readHist, readMap } from "./tables.js";

export type FigureKind =
  | "disk-slices"
  | "contours"
  | "prediction"
  | "ratio"
  | "outcome-hist";

export const KINDS: ReadonlyArray<FigureKind> = [
  "disk-slices", "contours", "prediction", "ratio", "outcome-hist",
];

export const KIND_INPUTS: Record<FigureKind, string> = {
  "disk-slices": "trivariate absorptivity_map.csv",
  "contours": "bivariate absorptivity_map.csv",
  "prediction": "comparison.csv",
  "ratio": "comparison.csv",
  "outcome-hist": "outcome_hist.csv",
};

export interface FigureSpec {
  kind: FigureKind;
  inputs: string[];
  output: string;
}

export function buildFigure(kind: FigureKind, input: string): string {
  switch (kind) {
    case "disk-slices":
      return diskSlices(readMap(input));
    case "contours":
      return absorptivityContours(readMap(input));
    case "prediction":
      return predictionPanels(readComparison(input));
    case "ratio":
      return ratioPanels(readComparison(input));
    case "outcome-hist":
      return outcomeHistogram(readHist(input));
  }
}

export function render(spec: FigureSpec): void {
  if (spec.inputs.length !== 1) {
    throw new Error(
      `kind ${spec.kind} takes exactly one input (${KIND_INPUTS[spec.kind]}), ` +
        `got ${spec.inputs.length}`
    );
  }
  const svg = buildFigure(spec.kind, spec.inputs[0] as string);
  writeFileSync(spec.output, svg);
}
