import { engagementColor } from "../colors.js";
import type { HeatmapResponse } from "../types.js";

/** Engagement heatmap: blue-to-red over [0, 1], empty seats neutral. */
export function renderHeatmap(data: HeatmapResponse): string {
  const rows: string[] = [];
  for (let r = 0; r < data.rows; r += 1) {
    const cells: string[] = [];
    for (let c = 0; c < data.cols; c += 1) {
      const score = data.scores[r][c];
      if (score === null) {
        cells.push('<td class="hm-cell vacant" style="background: #f4f4f4"></td>');
      } else {
        cells.push(
          `<td class="hm-cell" style="background: ${engagementColor(score)}" ` +
            `title="R${r + 1}C${c + 1}: ${score.toFixed(2)}">${score.toFixed(2)}</td>`,
        );
      }
    }
    rows.push(`<tr>${cells.join("")}</tr>`);
  }
  return (
    `<div class="hm-time">engagement at t = ${data.t.toFixed(0)} s</div>` +
    `<table class="heatmap"><tbody>${rows.join("")}</tbody></table>`
  );
}
