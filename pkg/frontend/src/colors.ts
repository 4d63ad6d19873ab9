import type { Category } from "./types.js";

/** Font/bar color per behavior (yellow, green, cyan, red, blue). */
export const CATEGORY_COLORS: Record<Category, string> = {
  hand_raising: "#d4a017",
  standing: "#2e9e4f",
  sleeping: "#00a6b6",
  yawning: "#d43d2a",
  smiling: "#2d6cdf",
};

const COLD: [number, number, number] = [33, 102, 172]; // #2166ac
const NEUTRAL: [number, number, number] = [247, 247, 247]; // #f7f7f7
const WARM: [number, number, number] = [178, 24, 43]; // #b2182b

function lerp(a: [number, number, number], b: [number, number, number], u: number): string {
  const c = a.map((v, i) => Math.round(v + (b[i] - v) * u));
  return `rgb(${c[0]}, ${c[1]}, ${c[2]})`;
}

/** Cold-to-warm colormap over [0, 1]: blue through neutral to red. */
export function engagementColor(value: number): string {
  const v = Math.min(1, Math.max(0, value));
  return v <= 0.5 ? lerp(COLD, NEUTRAL, v * 2) : lerp(NEUTRAL, WARM, (v - 0.5) * 2);
}
