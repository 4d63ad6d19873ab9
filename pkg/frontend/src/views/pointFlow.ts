import { CATEGORY_COLORS } from "../colors.js";
import type { Counts, FlowResponse } from "../types.js";
import { CATEGORIES } from "../types.js";

export function flowTotals(flow: FlowResponse): Counts {
  const totals = Object.fromEntries(CATEGORIES.map((c) => [c, 0])) as Counts;
  for (const sample of flow.samples) {
    for (const cat of CATEGORIES) {
      totals[cat] += sample.counts[cat];
    }
  }
  return totals;
}

const W = 860;
const H = 180;
const PAD = 28;

/** Aggregate behavior trend: one polyline of sample points per category,
 * with a per-moment breakdown in each point's tooltip. */
export function renderPointFlow(flow: FlowResponse): string {
  const n = flow.samples.length;
  if (n === 0) {
    return '<svg class="point-flow" viewBox="0 0 860 180"></svg>';
  }
  const peak = Math.max(
    1,
    ...flow.samples.map((s) => Math.max(...CATEGORIES.map((c) => s.counts[c]))),
  );
  const x = (i: number) => PAD + (i / Math.max(1, n - 1)) * (W - 2 * PAD);
  const y = (v: number) => H - PAD - (v / peak) * (H - 2 * PAD);

  const layers = CATEGORIES.map((cat) => {
    const pts = flow.samples.map((s, i) => `${x(i).toFixed(1)},${y(s.counts[cat]).toFixed(1)}`);
    const dots = flow.samples
      .filter((s) => s.counts[cat] > 0)
      .map((s) => {
        const breakdown = CATEGORIES.map((c) => `${c}: ${s.counts[c]}`).join(", ");
        return (
          `<circle class="flow-dot" cx="${x(s.index).toFixed(1)}" ` +
          `cy="${y(s.counts[cat]).toFixed(1)}" r="2.5" fill="${CATEGORY_COLORS[cat]}">` +
          `<title>t=${s.t.toFixed(0)}s — ${breakdown}</title></circle>`
        );
      })
      .join("");
    return (
      `<polyline fill="none" stroke="${CATEGORY_COLORS[cat]}" stroke-width="1" ` +
      `points="${pts.join(" ")}" opacity="0.75"></polyline>${dots}`
    );
  });
  return (
    `<svg class="point-flow" viewBox="0 0 ${W} ${H}">` +
    `<line x1="${PAD}" y1="${H - PAD}" x2="${W - PAD}" y2="${H - PAD}" stroke="#999"/>` +
    layers.join("") +
    `</svg>`
  );
}
