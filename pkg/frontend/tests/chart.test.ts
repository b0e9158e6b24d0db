import { describe, expect, it } from "vitest";

import { buildSeries, renderChartSvg } from "../src/chart.js";
import { SessionEntry } from "../src/types.js";

const entry = (target: string, elapsedS: number): SessionEntry => ({
  target,
  typed: target,
  elapsed_ms: elapsedS * 1000,
  timestamp: "2026-08-11T12:00:00Z",
});

describe("buildSeries", () => {
  it("computes per-session mean with min/max whisker bounds", () => {
    // 20 chars in 30s -> 40 CPM; in 20s -> 60 CPM
    const history = [[entry("a".repeat(20), 30), entry("a".repeat(20), 20)]];
    const series = buildSeries("pm", "red", history);
    expect(series.points).toHaveLength(1);
    const p = series.points[0];
    expect(p.session).toBe(1);
    expect(p.min).toBeCloseTo(40, 9);
    expect(p.max).toBeCloseTo(60, 9);
    expect(p.mean).toBeCloseTo(50, 9);
  });

  it("a single session yields a single point", () => {
    const series = buildSeries("pm", "red", [[entry("abcde", 5)]]);
    expect(series.points).toHaveLength(1);
    expect(series.points[0].min).toBe(series.points[0].max);
  });

  it("skips empty sessions", () => {
    const series = buildSeries("pm", "red", [[], [entry("abcde", 5)]]);
    expect(series.points).toHaveLength(1);
  });
});

describe("renderChartSvg", () => {
  it("renders an empty-state message without data", () => {
    const svg = renderChartSvg([buildSeries("pm", "red", [])]);
    expect(svg).toContain("no sessions recorded yet");
  });

  it("overlays two layouts as two series", () => {
    const pm = buildSeries("pm", "#c0392b", [[entry("a".repeat(20), 30)]]);
    const abc = buildSeries("abc", "#2980b9", [[entry("a".repeat(20), 40)]]);
    const svg = renderChartSvg([pm, abc]);
    expect(svg.match(/class="progress"/g)).toHaveLength(2);
    expect(svg).toContain(">pm</text>");
    expect(svg).toContain(">abc</text>");
    expect(svg).toContain('class="whisker"');
  });
});
