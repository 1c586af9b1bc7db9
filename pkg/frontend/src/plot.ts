/**
 * Edge-ratio charts over sweep rows.
 *
 * One polyline per (construction, pattern, p) group; x is n on a log
 * scale, y is the chosen ratio, per-seed values drawn as scatter dots.
 * Every dot and every line vertex carries its exact numeric value in
 * data-* attributes so tests (and downstream tools) can recover the
 * series without rasterising anything.
 */

import { SweepRow } from "./csv.js";

export type RatioMode = "per_n" | "per_nlog";

export interface Series {
  key: string;
  points: { n: number; seed: number; ratio: number }[];
  line: { n: number; mean: number }[];
}

export function ratioOf(row: SweepRow, mode: RatioMode): number {
  if (mode === "per_n") {
    return row.edgesFinal / row.n;
  }
  // rho = 1/(1-p); divisor n * log_rho(n)
  const rho = 1 / (1 - row.p);
  return row.edgesFinal / ((row.n * Math.log(row.n)) / Math.log(rho));
}

export function buildSeries(rows: SweepRow[], mode: RatioMode): Series[] {
  const groups = new Map<string, SweepRow[]>();
  for (const row of rows) {
    if (row.verified.startsWith("error:")) continue;
    const key = `${row.construction}|${row.pattern}|${row.p}`;
    const bucket = groups.get(key) ?? [];
    bucket.push(row);
    groups.set(key, bucket);
  }
  const out: Series[] = [];
  for (const [key, bucket] of [...groups.entries()].sort()) {
    const points = bucket
      .map((r) => ({ n: r.n, seed: r.seed, ratio: ratioOf(r, mode) }))
      .sort((a, b) => a.n - b.n || a.seed - b.seed);
    const byN = new Map<number, number[]>();
    for (const pt of points) {
      const arr = byN.get(pt.n) ?? [];
      arr.push(pt.ratio);
      byN.set(pt.n, arr);
    }
    const line = [...byN.entries()]
      .map(([n, ratios]) => ({ n, mean: ratios.reduce((a, b) => a + b, 0) / ratios.length }))
      .sort((a, b) => a.n - b.n);
    out.push({ key, points, line });
  }
  return out;
}

const W = 720;
const H = 480;
const MARGIN = { left: 64, right: 16, top: 28, bottom: 44 };
const COLORS = ["#1f6fb2", "#c2452d", "#2e8b57", "#8a2be2", "#b8860b", "#444444"];

export function renderSvg(series: Series[], mode: RatioMode): string {
  const xs = series.flatMap((s) => s.points.map((p) => p.n));
  const ys = series.flatMap((s) => s.points.map((p) => p.ratio));
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(0, ...ys);
  const yMax = Math.max(...ys) * 1.05 || 1;
  const lx = (n: number) =>
    xMax === xMin
      ? (MARGIN.left + W - MARGIN.right) / 2
      : MARGIN.left +
        ((Math.log(n) - Math.log(xMin)) / (Math.log(xMax) - Math.log(xMin))) *
          (W - MARGIN.left - MARGIN.right);
  const ly = (r: number) =>
    H - MARGIN.bottom - ((r - yMin) / (yMax - yMin)) * (H - MARGIN.top - MARGIN.bottom);

  const bits: string[] = [];
  bits.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" ` +
      `viewBox="0 0 ${W} ${H}" data-mode="${mode}" data-groups="${series.length}">`,
  );
  bits.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  const yLabel = mode === "per_n" ? "edges / n" : "edges / (n log_rho n)";
  bits.push(
    `<text x="${W / 2}" y="${H - 8}" text-anchor="middle" font-size="13">n (log scale)</text>`,
  );
  bits.push(
    `<text x="16" y="${H / 2}" transform="rotate(-90 16 ${H / 2})" ` +
      `text-anchor="middle" font-size="13">${yLabel}</text>`,
  );
  // axes
  bits.push(
    `<line x1="${MARGIN.left}" y1="${H - MARGIN.bottom}" x2="${W - MARGIN.right}" ` +
      `y2="${H - MARGIN.bottom}" stroke="#222"/>`,
  );
  bits.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" ` +
      `y2="${H - MARGIN.bottom}" stroke="#222"/>`,
  );
  for (const n of [...new Set(xs)].sort((a, b) => a - b)) {
    bits.push(
      `<text x="${lx(n)}" y="${H - MARGIN.bottom + 16}" text-anchor="middle" ` +
        `font-size="11">${n}</text>`,
    );
  }
  series.forEach((s, i) => {
    const color = COLORS[i % COLORS.length];
    const lineAttr = s.line
      .map((pt) => `${pt.n}:${pt.mean}`)
      .join(";");
    const path = s.line.map((pt) => `${lx(pt.n)},${ly(pt.mean)}`).join(" ");
    bits.push(
      `<polyline fill="none" stroke="${color}" stroke-width="1.8" ` +
        `data-key="${s.key}" data-line="${lineAttr}" points="${path}"/>`,
    );
    for (const pt of s.points) {
      bits.push(
        `<circle cx="${lx(pt.n)}" cy="${ly(pt.ratio)}" r="3" fill="${color}" ` +
          `fill-opacity="0.55" data-key="${s.key}" data-n="${pt.n}" ` +
          `data-seed="${pt.seed}" data-ratio="${pt.ratio}"/>`,
      );
    }
    bits.push(
      `<text x="${W - MARGIN.right - 4}" y="${MARGIN.top + 16 * (i + 1)}" ` +
        `text-anchor="end" font-size="12" fill="${color}">${s.key}</text>`,
    );
  });
  bits.push("</svg>");
  return bits.join("\n");
}
