/** Pure rendering helpers: service JSON in, markup out. Numbers are only
 * formatted for display, never recomputed. */

import type { HdaJson, SimulationReportJson, SweepPointJson } from "./api.js";

export function formatProb(p: number): string {
  return p.toFixed(3);
}

export interface Bar {
  label: string;
  value: number;
  text: string;
  width: number; // 0..100, proportional to value
}

export function hdaBars(hda: HdaJson): Bar[] {
  const entries: [string, number][] = [
    ["home win", hda.home],
    ["draw", hda.draw],
    ["away win", hda.away],
  ];
  return entries.map(([label, value]) => ({
    label,
    value,
    text: formatProb(value),
    width: Math.round(value * 1000) / 10,
  }));
}

export function hdaBarsSvg(hda: HdaJson): string {
  const bars = hdaBars(hda);
  const rows = bars.map((bar, i) => {
    const y = 8 + i * 30;
    return (
      `<text x="0" y="${y + 13}" class="bar-label">${bar.label}</text>` +
      `<rect x="90" y="${y}" width="${bar.width * 2.4}" height="18" class="bar bar-${i}"></rect>` +
      `<text x="${94 + bar.width * 2.4}" y="${y + 13}" class="bar-value">${bar.text}</text>`
    );
  });
  return `<svg viewBox="0 0 360 100" role="img">${rows.join("")}</svg>`;
}

const GOAL_CATEGORIES = ["normal", "setpiece", "counter", "longshot", "special", "pnf"];

export function goalTable(report: SimulationReportJson): string {
  const header = GOAL_CATEGORIES.map((c) => `<th>${c}</th>`).join("");
  const row = (side: "home" | "away") => {
    const stats = report[side];
    const cells = GOAL_CATEGORIES
      .map((c) => `<td>${(stats.goal_means[c] ?? 0).toFixed(3)}</td>`)
      .join("");
    return `<tr><th>${side}</th>${cells}<td class="total">${stats.total_goals.mean.toFixed(3)}</td></tr>`;
  };
  return (
    `<table class="goals"><thead><tr><th></th>${header}<th>total</th></tr></thead>` +
    `<tbody>${row("home")}${row("away")}</tbody></table>`
  );
}

export interface SweepSeries {
  name: string;
  points: { x: number; y: number; low: number; high: number }[];
}

/** Win and lose curves with +-2 sigma Monte Carlo bands. The band half-width
 * uses the binomial standard error at the plotted probability. */
export function sweepSeries(points: SweepPointJson[], trials: number): SweepSeries[] {
  const build = (name: string, pick: (p: SweepPointJson) => number): SweepSeries => ({
    name,
    points: points.map((p) => {
      const y = pick(p);
      const sigma = Math.sqrt(Math.max(y * (1 - y), 0) / trials);
      return {
        x: typeof p.value === "number" ? p.value : Number(p.value),
        y,
        low: Math.max(0, y - 2 * sigma),
        high: Math.min(1, y + 2 * sigma),
      };
    }),
  });
  return [build("win", (p) => p.p_win), build("lose", (p) => p.p_lose)];
}

export function sweepChartSvg(points: SweepPointJson[], trials: number): string {
  if (points.length === 0) {
    return `<svg viewBox="0 0 420 240"></svg>`;
  }
  const series = sweepSeries(points, trials);
  const xs = series[0].points.map((p) => p.x);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const spanX = xMax - xMin || 1;
  const sx = (x: number) => 40 + ((x - xMin) / spanX) * 360;
  const sy = (y: number) => 210 - y * 190;

  const parts: string[] = [];
  parts.push(`<line x1="40" y1="210" x2="400" y2="210" class="axis"></line>`);
  parts.push(`<line x1="40" y1="20" x2="40" y2="210" class="axis"></line>`);
  for (const tick of [0, 0.25, 0.5, 0.75, 1]) {
    parts.push(`<text x="4" y="${sy(tick) + 4}" class="tick">${tick.toFixed(2)}</text>`);
  }
  series.forEach((s, idx) => {
    if (s.points.length > 1) {
      const band = [
        ...s.points.map((p) => `${sx(p.x)},${sy(p.high)}`),
        ...[...s.points].reverse().map((p) => `${sx(p.x)},${sy(p.low)}`),
      ].join(" ");
      parts.push(`<polygon points="${band}" class="band band-${idx}"></polygon>`);
    }
    const line = s.points.map((p) => `${sx(p.x)},${sy(p.y)}`).join(" ");
    parts.push(`<polyline points="${line}" class="curve curve-${idx}" fill="none"></polyline>`);
    for (const p of s.points) {
      parts.push(
        `<circle cx="${sx(p.x)}" cy="${sy(p.y)}" r="3" class="dot dot-${idx}">` +
        `<title>${s.name} @ ${p.x}: ${formatProb(p.y)}</title></circle>`,
      );
    }
  });
  return `<svg viewBox="0 0 420 240" role="img">${parts.join("")}</svg>`;
}
