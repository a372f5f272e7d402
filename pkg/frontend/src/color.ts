/**
 * Deterministic color ramps.  Anchor stops are interpolated linearly in
 * RGB; output is always a lowercase hex string so rerendering a figure
 * reproduces it byte for byte.
 */

export type Stop = [number, number, number];

// dark violet -> orange -> pale yellow, for magnitudes
const HEAT: Stop[] = [
  [13, 8, 135],
  [126, 3, 168],
  [204, 71, 120],
  [248, 149, 64],
  [240, 249, 33],
];

// blue -> white -> red, for ratio maps centered on unity
const DIVERGING: Stop[] = [
  [33, 102, 172],
  [247, 247, 247],
  [178, 24, 43],
];

function hex(channel: number): string {
  const byte = Math.max(0, Math.min(255, Math.round(channel)));
  return byte.toString(16).padStart(2, "0");
}

function ramp(stops: Stop[], t: number): string {
  const clamped = Math.max(0, Math.min(1, t));
  const scaled = clamped * (stops.length - 1);
  const low = Math.min(stops.length - 2, Math.floor(scaled));
  const frac = scaled - low;
  const a = stops[low] as Stop;
  const b = stops[low + 1] as Stop;
  return (
    "#" +
    hex(a[0] + frac * (b[0] - a[0])) +
    hex(a[1] + frac * (b[1] - a[1])) +
    hex(a[2] + frac * (b[2] - a[2]))
  );
}

/** Magnitude ramp over [0, 1]. */
export function heat(t: number): string {
  return ramp(HEAT, t);
}

/**
 * Diverging ramp for a ratio: log2(ratio) mapped onto [-1, 1] with
 * clipping, so ratio 1 sits at the white midpoint and factor-two
 * deviations saturate.
 */
export function diverging(ratio: number): string {
  const t = Math.max(-1, Math.min(1, Math.log2(ratio)));
  return ramp(DIVERGING, 0.5 * (t + 1));
}
