import { CATEGORY_COLORS } from "../colors.js";
import type { GridCell, GridResponse, SequenceResponse, SortKey } from "../types.js";
import { CATEGORIES, totalCount } from "../types.js";

function sortValue(cell: GridCell, by: SortKey): number {
  return by === "total" ? totalCount(cell.counts) : cell.counts[by];
}

/** Occupied seats ordered by the chosen behavior count, descending;
 * ties keep a stable seat-label order. */
export function sortSeats(grid: GridResponse, by: SortKey): GridCell[] {
  return grid.cells
    .filter((c) => c.occupied)
    .sort((a, b) => sortValue(b, by) - sortValue(a, by) || a.seat.localeCompare(b.seat));
}

/** Horizontally stacked per-seat bars; every bar is clickable and links to
 * the seat's behavior sequence. */
export function renderLinkList(grid: GridResponse, by: SortKey): string {
  const cells = sortSeats(grid, by);
  const widest = Math.max(1, ...cells.map((c) => totalCount(c.counts)));
  const rows = cells.map((cell) => {
    const segments = CATEGORIES.filter((cat) => cell.counts[cat] > 0)
      .map((cat) => {
        const pct = (cell.counts[cat] / widest) * 100;
        return (
          `<span class="bar-seg" style="width: ${pct.toFixed(2)}%; ` +
          `background: ${CATEGORY_COLORS[cat]}" title="${cat}: ${cell.counts[cat]}"></span>`
        );
      })
      .join("");
    return (
      `<div class="bar-row" data-seat="${cell.seat}" role="button">` +
      `<span class="bar-label">${cell.seat}</span>` +
      `<span class="bar">${segments}</span>` +
      `<span class="bar-total">${totalCount(cell.counts)}</span></div>`
    );
  });
  return `<div class="link-list">${rows.join("")}</div>`;
}

/** Drill-down panel for one seat's time-ordered behavior sequence. */
export function renderSequencePanel(seq: SequenceResponse): string {
  if (seq.events.length === 0) {
    return (
      `<div class="sequence-panel" data-seat="${seq.seat}">` +
      `<h3>${seq.seat}</h3><p class="empty">no recorded behaviors</p></div>`
    );
  }
  const items = seq.events
    .map(
      (ev) =>
        `<li><span class="seq-t">${ev.t.toFixed(0)}s</span> ` +
        `<span class="seq-cat" style="color: ${CATEGORY_COLORS[ev.category]}">` +
        `${ev.category}</span></li>`,
    )
    .join("");
  return (
    `<div class="sequence-panel" data-seat="${seq.seat}">` +
    `<h3>${seq.seat}</h3><ol>${items}</ol></div>`
  );
}
