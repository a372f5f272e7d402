/**
 * Minimal reader for the pipeline's columnar files.
 *
 * Every file the renderer consumes is plain comma-separated text with a
 * fixed header, float fields written as shortest round-trip decimals,
 * and empty fields for missing values.  No quoting ever appears, so a
 * split-based parser is exact.
 */

import { readFileSync } from "node:fs";

export class SchemaError extends Error {}

export interface Table {
  header: string[];
  rows: string[][];
}

export function readTable(path: string, expectedHeader: string[]): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new SchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  // the pipeline's csv writers terminate lines with \r\n
  const lines = text
    .split("\n")
    .map((line) => (line.endsWith("\r") ? line.slice(0, -1) : line))
    .filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError(`${path} is empty`);
  }
  const header = (lines[0] ?? "").split(",");
  if (header.join(",") !== expectedHeader.join(",")) {
    throw new SchemaError(
      `${path} has columns [${header.join(", ")}], ` +
        `expected [${expectedHeader.join(", ")}]`
    );
  }
  const rows = lines.slice(1).map((line, i) => {
    const fields = line.split(",");
    if (fields.length !== header.length) {
      throw new SchemaError(
        `${path} row ${i + 1} has ${fields.length} fields, ` +
          `expected ${header.length}`
      );
    }
    return fields;
  });
  return { header, rows };
}

/** Parse a float field; empty fields become NaN by convention. */
export function num(field: string | undefined): number {
  if (field === undefined || field === "") return NaN;
  const value = Number(field);
  if (Number.isNaN(value)) {
    throw new SchemaError(`not a number: "${field}"`);
  }
  return value;
}
