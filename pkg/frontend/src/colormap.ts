/** Cool-to-warm diverging colormap for token intensity. */

const STOPS: Array<[number, number, number]> = [
  [59, 76, 192],
  [144, 178, 254],
  [220, 221, 221],
  [245, 156, 125],
  [180, 4, 38],
];

/** Map t in [0, 1] to a CSS rgb() color along the ramp. */
export function coolWarm(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const scaled = clamped * (STOPS.length - 1);
  const lo = Math.floor(scaled);
  const hi = Math.min(lo + 1, STOPS.length - 1);
  const frac = scaled - lo;
  const mix = STOPS[lo].map((a, i) => Math.round(a + (STOPS[hi][i] - a) * frac));
  return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
}
