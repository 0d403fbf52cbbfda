// Dark-to-light color ramp over a [0, 1] scalar: higher values render
// lighter. Anchors follow the viridis table, which is perceptually
// uniform and monotone in lightness.

const ANCHORS: Array<[number, number, number]> = [
  [68, 1, 84],
  [72, 40, 120],
  [62, 74, 137],
  [49, 104, 142],
  [38, 130, 142],
  [31, 158, 137],
  [53, 183, 121],
  [109, 205, 89],
  [180, 222, 44],
  [253, 231, 37],
];

export function rampColor(scalar: number): string {
  const t = Math.min(1, Math.max(0, scalar));
  const pos = t * (ANCHORS.length - 1);
  const lo = Math.min(ANCHORS.length - 2, Math.floor(pos));
  const f = pos - lo;
  const a = ANCHORS[lo];
  const b = ANCHORS[lo + 1];
  const mix = (i: number) => Math.round(a[i] + f * (b[i] - a[i]));
  return `rgb(${mix(0)},${mix(1)},${mix(2)})`;
}

// relative luminance (sRGB coefficients), used by tests to check the
// ramp really gets lighter
export function luminanceOf(rgb: string): number {
  const m = rgb.match(/rgb\((\d+),(\d+),(\d+)\)/);
  if (!m) throw new Error(`not an rgb() string: ${rgb}`);
  const [r, g, b] = [Number(m[1]), Number(m[2]), Number(m[3])];
  return 0.2126 * r + 0.7152 * g + 0.0722 * b;
}
