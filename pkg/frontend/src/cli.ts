#!/usr/bin/env node
/**
 * render --kind <fig> --in <file> --out <svg>
 *
 * Kinds:
 *   disk-slices   half-disk absorptivity panels per binding-energy level
 *   contours      bivariate absorptivity contours, log-spaced levels
 *   prediction    measured and predicted densities side by side
 *   ratio         measured-with-overlay and ratio maps
 *   outcome-hist  chaotic outcome density histogram
 *
 * Exit codes: 0 rendered, 2 usage error, 3 unreadable or malformed input.
 */

import { parseArgs } from "node:util";

import { SchemaError } from "./csv.js";
import { KIND_INPUTS, KINDS, render, type FigureKind } from "./render.js";

function usage(): string {
  const kinds = KINDS.map((k) => `  ${k.padEnd(14)}${KIND_INPUTS[k]}`).join("\n");
  return `usage: render --kind <fig> --in <file> --out <svg>\n\nkinds:\n${kinds}\n`;
}

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        kind: { type: "string" },
        in: { type: "string", multiple: true },
        out: { type: "string" },
        help: { type: "boolean", short: "h" },
      },
    });
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n${usage()}`);
    return 2;
  }
  const { kind, in: inputs, out, help } = parsed.values;
  if (help) {
    process.stdout.write(usage());
    return 0;
  }
  if (!kind || !inputs || inputs.length === 0 || !out) {
    process.stderr.write(`error: --kind, --in and --out are required\n${usage()}`);
    return 2;
  }
  if (!(KINDS as readonly string[]).includes(kind)) {
    process.stderr.write(`error: unknown kind "${kind}"\n${usage()}`);
    return 2;
  }
  try {
    render({ kind: kind as FigureKind, inputs, output: out });
  } catch (err) {
    if (err instanceof SchemaError || err instanceof Error) {
      process.stderr.write(`error: ${(err as Error).message}\n`);
      return 3;
    }
    throw err;
  }
  process.stdout.write(`wrote ${out} (${kind})\n`);
  return 0;
}

process.exit(main(process.argv.slice(2)));
