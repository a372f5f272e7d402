/**
 * String-level SVG assembly.  Coordinates are emitted with three
 * decimals, which keeps files compact and makes reruns byte-identical.
 */

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function fmt(v: number): string {
  return v.toFixed(3).replace(/\.000$/, "");
}

export function rect(
  x: number, y: number, w: number, h: number, fill: string
): string {
  return `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`;
}

export function circle(
  cx: number, cy: number, r: number, fill: string
): string {
  return `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${fill}"/>`;
}

export function line(
  x1: number, y1: number, x2: number, y2: number,
  stroke: string, width = 1
): string {
  return `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${stroke}" stroke-width="${width}"/>`;
}

export function polyline(
  points: Array<[number, number]>, stroke: string, width = 1
): string {
  const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="${width}"/>`;
}

export function path(d: string, stroke: string, width = 1): string {
  return `<path d="${d}" fill="none" stroke="${stroke}" stroke-width="${width}"/>`;
}

export interface TextOpts {
  size?: number;
  anchor?: "start" | "middle" | "end";
  fill?: string;
  style?: "normal" | "italic";
}

export function text(
  x: number, y: number, content: string, opts: TextOpts = {}
): string {
  const size = opts.size ?? 11;
  const anchor = opts.anchor ?? "start";
  const fill = opts.fill ?? "#222";
  const style = opts.style ?? "normal";
  return (
    `<text x="${fmt(x)}" y="${fmt(y)}" font-family="Helvetica, Arial, sans-serif" ` +
    `font-size="${size}" font-style="${style}" text-anchor="${anchor}" ` +
    `fill="${fill}">${esc(content)}</text>`
  );
}

export function document(width: number, height: number, body: string[]): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n` +
    `<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>\n` +
    body.join("\n") +
    "\n</svg>\n"
  );
}
