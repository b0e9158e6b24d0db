/** Learning-progress chart: per-session mean CPM with min/max whiskers. */

import { scoreSession } from "./scoring.js";
import { SessionHistory } from "./storage.js";

export interface ChartPoint {
  session: number; // 1-based
  mean: number;
  min: number;
  max: number;
}

export interface ChartSeries {
  label: string;
  color: string;
  points: ChartPoint[];
}

export function buildSeries(label: string, color: string, history: SessionHistory): ChartSeries {
  const points = history
    .filter((session) => session.length > 0)
    .map((session, i) => {
      const cpms = session.map((entry) => scoreSession(entry).cpm);
      return {
        session: i + 1,
        mean: cpms.reduce((a, b) => a + b, 0) / cpms.length,
        min: Math.min(...cpms),
        max: Math.max(...cpms),
      };
    });
  return { label, color, points };
}

const WIDTH = 640;
const HEIGHT = 320;
const MARGIN = 40;

function scale(value: number, lo: number, hi: number, out0: number, out1: number): number {
  if (hi === lo) {
    return (out0 + out1) / 2;
  }
  return out0 + ((value - lo) / (hi - lo)) * (out1 - out0);
}

/** Render series as a standalone SVG string; overlays any number of series. */
export function renderChartSvg(seriesList: ChartSeries[]): string {
  const all = seriesList.flatMap((s) => s.points);
  if (all.length === 0) {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}">` +
      `<text x="${WIDTH / 2}" y="${HEIGHT / 2}" text-anchor="middle" fill="#666">` +
      "no sessions recorded yet</text></svg>"
    );
  }
  const maxSession = Math.max(...all.map((p) => p.session));
  const maxCpm = Math.max(...all.map((p) => p.max));
  const x = (session: number) => scale(session, 1, Math.max(maxSession, 2), MARGIN, WIDTH - MARGIN);
  const y = (cpm: number) => scale(cpm, 0, maxCpm * 1.05, HEIGHT - MARGIN, MARGIN);

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}">`,
    `<line x1="${MARGIN}" y1="${HEIGHT - MARGIN}" x2="${WIDTH - MARGIN}" y2="${HEIGHT - MARGIN}" stroke="#999"/>`,
    `<line x1="${MARGIN}" y1="${MARGIN}" x2="${MARGIN}" y2="${HEIGHT - MARGIN}" stroke="#999"/>`,
  ];
  seriesList.forEach((series, idx) => {
    if (series.points.length === 0) {
      return;
    }
    for (const p of series.points) {
      parts.push(
        `<line x1="${x(p.session)}" y1="${y(p.min)}" x2="${x(p.session)}" y2="${y(p.max)}" ` +
          `stroke="${series.color}" stroke-width="1" class="whisker"/>`,
      );
    }
    const path = series.points
      .map((p) => `${x(p.session)},${y(p.mean)}`)
      .join(" ");
    parts.push(
      `<polyline points="${path}" fill="none" stroke="${series.color}" stroke-width="2" class="progress"/>`,
    );
    parts.push(
      `<text x="${WIDTH - MARGIN}" y="${MARGIN + 16 * idx}" text-anchor="end" fill="${series.color}">` +
        `${series.label}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("");
}
