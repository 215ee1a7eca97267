/**
 * SVG chart builders. Every chart is a pure function from server payload
 * arrays to markup; the only arithmetic here is the mapping of data
 * coordinates onto pixels. Density grids, quantiles, divergences and
 * thresholds all arrive precomputed from the service.
 */

import type { CurvePayload, DivergenceRow, IntervalRow } from "./api.js";
import { escapeHtml, fmt } from "./format.js";

export interface ChartSize {
  width: number;
  height: number;
}

const MARGIN = { top: 12, right: 14, bottom: 26, left: 46 };

type Scale = (value: number) => number;

function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0;
  if (span === 0) return () => (r0 + r1) / 2;
  return value => r0 + ((value - d0) / span) * (r1 - r0);
}

function polyline(xs: number[], ys: number[], sx: Scale, sy: Scale): string {
  const points: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    points.push(`${sx(xs[i]).toFixed(2)},${sy(ys[i]).toFixed(2)}`);
  }
  return points.join(" ");
}

function frame(size: ChartSize, body: string, cls: string): string {
  return (
    `<svg class="chart ${cls}" viewBox="0 0 ${size.width} ${size.height}" ` +
    `width="${size.width}" height="${size.height}" role="img">${body}</svg>`
  );
}

function axes(size: ChartSize, xLabel: string, yLabel: string): string {
  const x0 = MARGIN.left;
  const x1 = size.width - MARGIN.right;
  const y0 = size.height - MARGIN.bottom;
  return (
    `<line class="axis" x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}"></line>` +
    `<line class="axis" x1="${x0}" y1="${MARGIN.top}" x2="${x0}" y2="${y0}"></line>` +
    `<text class="axis-label" x="${(x0 + x1) / 2}" y="${size.height - 6}" text-anchor="middle">` +
    `${escapeHtml(xLabel)}</text>` +
    `<text class="axis-label" x="12" y="${(MARGIN.top + y0) / 2}" text-anchor="middle" ` +
    `transform="rotate(-90 12 ${(MARGIN.top + y0) / 2})">${escapeHtml(yLabel)}</text>`
  );
}

export interface DensityMarker {
  x: number;
  label: string;
}

export interface DensityBand {
  lower: number;
  upper: number;
  label: string;
}

export interface DensityChartOptions extends Partial<ChartSize> {
  xLabel?: string;
  markers?: DensityMarker[];
  bands?: DensityBand[];
}

/** Density polyline over a server grid with optional quantile markers and
 *  central-interval bands. */
export function densityChart(
  grid: number[],
  density: number[],
  options: DensityChartOptions = {},
): string {
  const size = { width: options.width ?? 420, height: options.height ?? 190 };
  if (grid.length < 2 || grid.length !== density.length) {
    return frame(size, `<text x="12" y="24" class="chart-note">no curve data</text>`, "density");
  }
  const xs = linearScale(grid[0], grid[grid.length - 1], MARGIN.left, size.width - MARGIN.right);
  let top = 0;
  for (const value of density) if (value > top) top = value;
  const ys = linearScale(0, top === 0 ? 1 : top, size.height - MARGIN.bottom, MARGIN.top);
  const y0 = size.height - MARGIN.bottom;

  let body = axes(size, options.xLabel ?? "", "density");
  for (const band of options.bands ?? []) {
    const left = xs(band.lower);
    const right = xs(band.upper);
    body +=
      `<rect class="band" data-role="interval-band" x="${Math.min(left, right).toFixed(2)}" ` +
      `y="${MARGIN.top}" width="${Math.abs(right - left).toFixed(2)}" ` +
      `height="${(y0 - MARGIN.top).toFixed(2)}"><title>${escapeHtml(band.label)}</title></rect>`;
  }
  body += `<polyline class="curve" points="${polyline(grid, density, xs, ys)}"></polyline>`;
  for (const marker of options.markers ?? []) {
    const x = xs(marker.x).toFixed(2);
    body +=
      `<line class="marker" data-role="marker" x1="${x}" y1="${MARGIN.top}" ` +
      `x2="${x}" y2="${y0}"></line>` +
      `<text class="marker-label" x="${x}" y="${MARGIN.top + 10}" text-anchor="middle">` +
      `${escapeHtml(marker.label)}</text>`;
  }
  const ticks = [grid[0], grid[grid.length - 1]];
  for (const tick of ticks) {
    body +=
      `<text class="tick" x="${xs(tick).toFixed(2)}" y="${y0 + 14}" text-anchor="middle">` +
      `${fmt(tick, 3)}</text>`;
  }
  return frame(size, body, "density");
}

/** Markers for the curve payload of a marginal or conditional assessment:
 *  the server's median plus each reported quantile. */
export function curveMarkers(curve: CurvePayload): DensityMarker[] {
  const markers: DensityMarker[] = [{ x: curve.median, label: `median ${fmt(curve.median, 4)}` }];
  for (const key of Object.keys(curve.quantiles)) {
    markers.push({ x: curve.quantiles[key], label: `p=${fmt(Number(key), 3)}` });
  }
  return markers;
}

export function intervalBands(intervals: IntervalRow[]): DensityBand[] {
  return intervals.map(row => ({
    lower: row.lower,
    upper: row.upper,
    label: `central ${fmt(row.prob, 4)}: [${fmt(row.lower, 5)}, ${fmt(row.upper, 5)}]`,
  }));
}

export interface DivergenceChartOptions extends Partial<ChartSize> {
  chosenLevel?: number | null;
}

/** Divergence-by-truncation-level chart with the server's threshold drawn
 *  as a dashed reference line. */
export function divergenceChart(
  rows: DivergenceRow[],
  options: DivergenceChartOptions = {},
): string {
  const size = { width: options.width ?? 420, height: options.height ?? 200 };
  if (rows.length === 0) {
    return frame(size, `<text x="12" y="24" class="chart-note">no divergence data</text>`, "divergence");
  }
  const threshold = rows[0].threshold;
  const levels = rows.map(row => row.level);
  const values = rows.map(row => row.divergence);
  let top = threshold;
  for (const value of values) if (value > top) top = value;
  const xs = linearScale(
    levels[0],
    levels[levels.length - 1] === levels[0] ? levels[0] + 1 : levels[levels.length - 1],
    MARGIN.left,
    size.width - MARGIN.right,
  );
  const ys = linearScale(0, top * 1.08, size.height - MARGIN.bottom, MARGIN.top);
  const y0 = size.height - MARGIN.bottom;

  let body = axes(size, "truncation level", "divergence");
  const ty = ys(threshold).toFixed(2);
  body +=
    `<line class="threshold" data-role="threshold-line" x1="${MARGIN.left}" y1="${ty}" ` +
    `x2="${size.width - MARGIN.right}" y2="${ty}"></line>` +
    `<text class="threshold-label" data-role="threshold-label" x="${size.width - MARGIN.right}" ` +
    `y="${(Number(ty) - 4).toFixed(2)}" text-anchor="end">threshold ${fmt(threshold, 5)}</text>`;
  body += `<polyline class="curve" points="${polyline(levels, values, xs, ys)}"></polyline>`;
  for (const row of rows) {
    const cx = xs(row.level).toFixed(2);
    const cy = ys(row.divergence).toFixed(2);
    const flag = row.above_threshold ? " above" : "";
    const chosen = options.chosenLevel === row.level ? " chosen" : "";
    body +=
      `<circle class="dot${flag}${chosen}" data-level="${row.level}" cx="${cx}" cy="${cy}" r="4">` +
      `<title>level ${row.level}: ${fmt(row.divergence, 6)}</title></circle>` +
      `<text class="tick" x="${cx}" y="${y0 + 14}" text-anchor="middle">${row.level}</text>`;
  }
  return frame(size, body, "divergence");
}

// Color ramps for the progress grids. Presentation only: values are mapped
// to a unit interval against a fixed or data-driven domain for shading, and
// the cell label always shows the server number itself.

function clamp01(t: number): number {
  return t < 0 ? 0 : t > 1 ? 1 : t;
}

function divergingColor(t: number): string {
  // blue (0) through white (0.5) to red (1)
  const u = clamp01(t);
  if (u < 0.5) {
    const s = u / 0.5;
    return `rgb(${Math.round(49 + s * 206)},${Math.round(107 + s * 148)},${Math.round(176 + s * 79)})`;
  }
  const s = (u - 0.5) / 0.5;
  return `rgb(${Math.round(255 - s * 53)},${Math.round(255 - s * 231)},${Math.round(255 - s * 212)})`;
}

function sequentialColor(t: number): string {
  const u = clamp01(t);
  return `rgb(${Math.round(247 - u * 214)},${Math.round(251 - u * 147)},${Math.round(255 - u * 109)})`;
}

export interface HeatmapCell {
  value: number | null;
  label?: string;
  title?: string;
}

export interface HeatmapOptions {
  cellSize?: number;
  domain?: [number, number];
  diverging?: boolean;
  rowLabels?: string[];
  colLabels?: string[];
  digits?: number;
}

export function heatmap(cells: HeatmapCell[][], options: HeatmapOptions = {}): string {
  const cell = options.cellSize ?? 52;
  const rows = cells.length;
  const cols = rows === 0 ? 0 : cells[0].length;
  const left = 44;
  const top = 20;
  const size = { width: left + cols * cell + 8, height: top + rows * cell + 8 };
  let lo = Infinity;
  let hi = -Infinity;
  if (options.domain) {
    lo = options.domain[0];
    hi = options.domain[1];
  } else {
    for (const row of cells) {
      for (const entry of row) {
        if (entry.value === null) continue;
        if (entry.value < lo) lo = entry.value;
        if (entry.value > hi) hi = entry.value;
      }
    }
    if (lo > hi) {
      lo = 0;
      hi = 1;
    } else if (lo === hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  const ramp = options.diverging ? divergingColor : sequentialColor;
  let body = "";
  for (let j = 0; j < cols; j++) {
    const label = options.colLabels?.[j] ?? String(j);
    body +=
      `<text class="tick" x="${left + j * cell + cell / 2}" y="${top - 6}" text-anchor="middle">` +
      `${escapeHtml(label)}</text>`;
  }
  for (let i = 0; i < rows; i++) {
    const label = options.rowLabels?.[i] ?? String(i);
    body +=
      `<text class="tick" x="${left - 6}" y="${top + i * cell + cell / 2 + 4}" text-anchor="end">` +
      `${escapeHtml(label)}</text>`;
    for (let j = 0; j < cols; j++) {
      const entry = cells[i][j];
      const x = left + j * cell;
      const y = top + i * cell;
      if (entry.value === null) {
        body += `<rect class="cell empty" x="${x}" y="${y}" width="${cell}" height="${cell}"></rect>`;
        continue;
      }
      const t = (entry.value - lo) / (hi - lo);
      const fill = ramp(t);
      const title = entry.title ? `<title>${escapeHtml(entry.title)}</title>` : "";
      const text = entry.label ?? fmt(entry.value, options.digits ?? 3);
      const dark = options.diverging ? Math.abs(t - 0.5) > 0.36 : t > 0.62;
      body +=
        `<rect class="cell" x="${x}" y="${y}" width="${cell}" height="${cell}" fill="${fill}">` +
        `${title}</rect>` +
        `<text class="cell-label${dark ? " inverse" : ""}" x="${x + cell / 2}" ` +
        `y="${y + cell / 2 + 4}" text-anchor="middle">${escapeHtml(text)}</text>`;
    }
  }
  return frame(size, body, "heatmap");
}
