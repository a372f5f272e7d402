import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import {
  absorptivityContours, diskSlices, outcomeHistogram, predictionPanels,
  ratioPanels,
} from "../src/figures.js";
import { readComparison, readHist, readMap } from "../src/tables.js";

const MAP_HEADER =
  "variant,point,eps,lb,lbx,lby,n_total,n_decided,n_absorbed,n_undecided,absorptivity,stderr";
const COMPARE_HEADER =
  "eps_center,l_center,measured,predicted,measured_scaled,predicted_scaled,ratio,count,included";
const HIST_HEADER = "eps_lo,eps_hi,l_lo,l_hi,count,area,density";

function write(name: string, content: string): string {
  const dir = mkdtempSync(join(tmpdir(), "figtest-"));
  const p = join(dir, name);
  writeFileSync(p, content);
  return p;
}

function mapCsv(rows: Array<[string, number, number, number, number, string]>): string {
  const body = rows
    .map(([v, eps, lb, lbx, lby, absv], i) =>
      `${v},${i},${eps},${lb},${lbx},${lby},100,100,50,0,${absv},0.05`)
    .join("\n");
  return `${MAP_HEADER}\n${body}\n`;
}

function fills(svg: string, element: string): string[] {
  const out: string[] = [];
  const re = new RegExp(`<${element} [^>]*fill="(#[0-9a-f]{6})"`, "g");
  for (const m of svg.matchAll(re)) out.push(m[1] as string);
  return out;
}

// a trivariate-like map: two levels, four half-disk nodes each
function smallTrivariate(absv: (eps: number, i: number) => string): string {
  const rows: Array<[string, number, number, number, number, string]> = [];
  for (const eps of [-40, -70]) {
    [[5, 5, 0], [10, 0, 10], [10, -7, 7], [3, 2, 2]].forEach(([lb, x, y], i) => {
      rows.push(["trivariate", eps, lb as number, x as number, y as number,
        absv(eps, i)]);
    });
  }
  return mapCsv(rows);
}

describe("diskSlices", () => {
  it("renders one panel per level with exact max annotations", () => {
    const svg = diskSlices(readMap(write("m.csv", smallTrivariate(
      (eps, i) => eps === -40 ? ["0.5", "0.125", "0.25", "0.06"][i]! : "0.003"
    ))));
    expect(svg).toContain("ε_B = -40");
    expect(svg).toContain("ε_B = -70");
    expect(svg).toContain("ℰ_max = 0.5");
    expect(svg).toContain("ℰ_max = 0.003");
  });

  it("colors a constant map as a single-color disk", () => {
    const svg = diskSlices(readMap(write("m.csv", smallTrivariate(() => "0.25"))));
    const dots = fills(svg, "circle");
    expect(dots.length).toBe(8);
    expect(new Set(dots).size).toBe(1);
  });

  it("greys out nodes that never decided", () => {
    const csv = smallTrivariate(() => "0.25").replace(",0.25,0.05", ",,");
    const svg = diskSlices(readMap(write("m.csv", csv)));
    expect(fills(svg, "circle")).toContain("#dddddd");
  });
});

describe("absorptivityContours", () => {
  const bivariate = () => {
    const rows: Array<[string, number, number, number, number, string]> = [];
    for (const eps of [-120, -90, -60, -30]) {
      for (const lb of [5, 15, 25, 35]) {
        // smooth hill peaking at (-30, 5)
        const v = Math.exp(eps / 60) * Math.exp(-lb / 20);
        rows.push(["bivariate", eps, lb, lb, 0, String(v)]);
      }
    }
    return mapCsv(rows);
  };

  it("draws log-spaced contour line work", () => {
    const svg = absorptivityContours(readMap(write("m.csv", bivariate())));
    const lines = (svg.match(/<line /g) ?? []).length;
    expect(lines).toBeGreaterThan(20); // contours, plus axis ticks
  });

  it("quotes the map maximum verbatim", () => {
    const rows = readMap(write("m.csv", bivariate()));
    const max = Math.max(...rows.map((r) => r.absorptivity));
    const raw = rows.find((r) => r.absorptivity === max)!.absorptivityRaw;
    expect(absorptivityContours(rows)).toContain(`ℰ_max = ${raw}`);
  });

  it("needs two levels", () => {
    const one = mapCsv([["bivariate", -60, 5, 5, 0, "0.1"],
      ["bivariate", -60, 10, 10, 0, "0.2"]]);
    expect(() => absorptivityContours(readMap(write("m.csv", one))))
      .toThrow(/two binding-energy levels/);
  });
});

function compareCsv(
  cell: (eps: number, l: number) => string
): string {
  const lines = [COMPARE_HEADER];
  for (const eps of [-110, -90, -70, -50]) {
    for (const l of [10, 20, 30]) {
      lines.push(`${eps}.0,${l}.0,${cell(eps, l)}`);
    }
  }
  return lines.join("\n") + "\n";
}

describe("predictionPanels", () => {
  it("renders both panels with masked cells greyed", () => {
    const svg = predictionPanels(readComparison(write("c.csv", compareCsv(
      (eps, l) => eps === -50 && l === 30
        ? "0.4,,,,,5,0" // data present but excluded
        : "1.2,1.1,1.2,1.1,0.9167,40,1"
    ))));
    expect(svg).toContain(">measured</text>");
    expect(svg).toContain(">predicted</text>");
    expect(fills(svg, "rect")).toContain("#e8e8e8");
  });
});

describe("ratioPanels", () => {
  it("paints identical inputs as a flat field at unity", () => {
    const svg = ratioPanels(readComparison(write("c.csv", compareCsv(
      () => "1.5,1.5,1.0,1.0,1.0,40,1"
    ))));
    const cells = fills(svg, "rect");
    // twelve ratio cells plus the unity legend swatch at the midpoint
    expect(cells.filter((c) => c === "#f7f7f7")).toHaveLength(13);
    // the overlay panel is just as flat
    expect(cells.filter((c) => c === "#f0f921")).toHaveLength(12);
  });

  it("separates over- and under-prediction", () => {
    const svg = ratioPanels(readComparison(write("c.csv", compareCsv(
      (eps) => eps < -80
        ? "1.0,2.0,1.0,2.0,2.0,40,1"
        : "2.0,1.0,2.0,1.0,0.5,40,1"
    ))));
    const cells = new Set(fills(svg, "rect"));
    expect(cells.size).toBeGreaterThan(2);
  });
});

describe("outcomeHistogram", () => {
  const histCsv = () => {
    const lines = [HIST_HEADER];
    let count = 0;
    for (const [epsLo, epsHi] of [[-100, -75], [-75, -50]] as const) {
      for (const [lLo, lHi] of [[0, 20], [20, 40]] as const) {
        count += 1;
        const blocked = epsLo === -100 && lLo === 20; // outside allowed region
        lines.push(`${epsLo}.0,${epsHi}.0,${lLo}.0,${lHi}.0,` +
          (blocked ? "0,0.0," : `${count * 7},400.0,${count * 0.02}`));
      }
    }
    return lines.join("\n") + "\n";
  };

  it("skips cells outside the allowed region and counts samples", () => {
    const svg = outcomeHistogram(readHist(write("h.csv", histCsv())));
    // one background + three shaded cells; the blocked cell stays unpainted
    expect(fills(svg, "rect")).toHaveLength(4);
    // the blocked cell contributes zero counts: 7 + 21 + 28
    expect(svg).toContain("samples = 56");
  });
});

describe("idempotency", () => {
  it("rebuilds byte-identical output from the same input", () => {
    const p = write("m.csv", smallTrivariate((_, i) => String(0.1 * (i + 1))));
    const first = diskSlices(readMap(p));
    const second = diskSlices(readMap(p));
    expect(second).toBe(first);
  });
});
