import { CATEGORY_COLORS } from "../colors.js";
import type { Category, GridCell, GridResponse } from "../types.js";
import { CATEGORIES } from "../types.js";

/** A cell to flash because its behavior fired in the latest snapshot. */
export interface SeatHighlight {
  seat: string;
  category: Category;
}

/** Cells whose counts grew between two snapshots, with the grown category
 * (the strongest growth wins when several categories fire together). */
export function diffGrid(prev: GridResponse | null, next: GridResponse): SeatHighlight[] {
  if (!prev) {
    return [];
  }
  const before = new Map(prev.cells.map((c) => [c.seat, c]));
  const out: SeatHighlight[] = [];
  for (const cell of next.cells) {
    const old = before.get(cell.seat);
    if (!old) {
      continue;
    }
    let best: Category | null = null;
    let bestGrowth = 0;
    for (const cat of CATEGORIES) {
      const growth = cell.counts[cat] - old.counts[cat];
      if (growth > bestGrowth) {
        bestGrowth = growth;
        best = cat;
      }
    }
    if (best) {
      out.push({ seat: cell.seat, category: best });
    }
  }
  return out;
}

function cellHtml(cell: GridCell, highlight: Category | undefined): string {
  const background = highlight
    ? CATEGORY_COLORS[highlight] + "55"
    : cell.occupied
      ? "#e3e3e3"
      : "#ffffff";
  const counts = CATEGORIES.map(
    (cat) =>
      `<span class="count count-${cat}" style="color: ${CATEGORY_COLORS[cat]}">` +
      `${cell.counts[cat]}</span>`,
  ).join(" ");
  const cls = cell.occupied ? "seat occupied" : "seat empty";
  return (
    `<td class="${cls}${highlight ? " firing" : ""}" data-seat="${cell.seat}" ` +
    `style="background: ${background}">` +
    `<div class="seat-label">${cell.seat}</div><div class="counts">${counts}</div></td>`
  );
}

/** The R x C seating table: occupied cells shaded, five per-category counts
 * in distinct colors, firing cells tinted with their category color. */
export function renderSeatingTable(
  grid: GridResponse,
  highlights: SeatHighlight[] = [],
): string {
  const byRow = new Map<number, GridCell[]>();
  for (const cell of grid.cells) {
    const row = byRow.get(cell.row) ?? [];
    row.push(cell);
    byRow.set(cell.row, row);
  }
  const firing = new Map(highlights.map((h) => [h.seat, h.category]));
  const rows: string[] = [];
  for (let r = 1; r <= grid.rows; r += 1) {
    const cells = (byRow.get(r) ?? []).sort((a, b) => a.col - b.col);
    rows.push(`<tr>${cells.map((c) => cellHtml(c, firing.get(c.seat))).join("")}</tr>`);
  }
  return `<table class="seating-table"><tbody>${rows.join("")}</tbody></table>`;
}
