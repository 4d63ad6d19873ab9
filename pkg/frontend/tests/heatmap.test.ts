import { describe, expect, it } from "vitest";

import { engagementColor } from "../src/colors.js";
import { renderHeatmap } from "../src/views/heatmap.js";
import { heatmapFx } from "./fixtures.js";

describe("engagement colormap", () => {
  it("maps the neutral midpoint to the neutral color", () => {
    expect(engagementColor(0.5)).toBe("rgb(247, 247, 247)");
  });

  it("maps 1.0 to the warmest red and 0.0 to the coldest blue", () => {
    expect(engagementColor(1.0)).toBe("rgb(178, 24, 43)");
    expect(engagementColor(0.0)).toBe("rgb(33, 102, 172)");
  });

  it("clamps out-of-range scores", () => {
    expect(engagementColor(1.7)).toBe(engagementColor(1.0));
    expect(engagementColor(-0.2)).toBe(engagementColor(0.0));
  });
});

describe("heatmap view", () => {
  it("renders an R x C grid of scored cells", () => {
    const html = renderHeatmap(heatmapFx);
    expect((html.match(/<tr>/g) ?? []).length).toBe(heatmapFx.rows);
    expect((html.match(/<td/g) ?? []).length).toBe(heatmapFx.rows * heatmapFx.cols);
  });

  it("renders every neutral seat with the midpoint color", () => {
    const neutral = {
      t: 0,
      rows: 1,
      cols: 3,
      scores: [[0.5, 0.5, 0.5]],
    };
    const html = renderHeatmap(neutral);
    expect((html.match(/rgb\(247, 247, 247\)/g) ?? []).length).toBe(3);
  });

  it("renders unoccupied seats as neutral-empty", () => {
    const html = renderHeatmap({ t: 0, rows: 1, cols: 2, scores: [[null, 1.0]] });
    expect(html).toContain("vacant");
    expect(html).toContain("rgb(178, 24, 43)");
  });

  it("labels the snapshot time", () => {
    const html = renderHeatmap(heatmapFx);
    expect(html).toContain(`t = ${heatmapFx.t.toFixed(0)} s`);
  });

  it("shows warm cells for seats with positive events", () => {
    // the demo course ends with R2C7 at (2+1)/(2+2) = 0.75
    const html = renderHeatmap(heatmapFx);
    expect(html).toContain('title="R2C7: 0.75"');
  });
});
