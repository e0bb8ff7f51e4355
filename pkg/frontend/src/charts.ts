/**
 * Pure SVG/HTML string builders. No DOM access, so every renderer runs in
 * node tests as-is. Displayed numbers always echo API payload values
 * verbatim (String(value), also mirrored in data-v attributes); the only
 * client-side arithmetic is geometric scaling onto pixel coordinates.
 */

import type { DendrogramNode } from "./types.js";

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** A numeric label that provably came from a payload value. */
export function num(value: number): string {
  const text = String(value);
  return `<span class="num" data-v="${text}">${text}</span>`;
}

function svgNum(value: number, x: number, y: number, cls = ""): string {
  const text = String(value);
  return `<text class="num ${cls}" data-v="${text}" x="${x.toFixed(1)}" y="${y.toFixed(1)}">${text}</text>`;
}

const FLOW_W = 320;
const FLOW_H = 64;
const PAD = 4;

export function flowPanel(
  label: string,
  color: string,
  progress: number[],
  series: number[],
): string {
  const points = series
    .map((value, i) => {
      const x = PAD + progress[i] * (FLOW_W - 2 * PAD);
      const y = FLOW_H - PAD - value * (FLOW_H - 2 * PAD);
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(" ");
  const last = series[series.length - 1];
  return `
  <figure class="flow-panel" data-dim="${esc(label)}">
    <figcaption>${esc(label)} <span class="flow-last">${num(last)}</span></figcaption>
    <svg viewBox="0 0 ${FLOW_W} ${FLOW_H}" preserveAspectRatio="none" role="img">
      <rect class="frame" x="0" y="0" width="${FLOW_W}" height="${FLOW_H}"/>
      <polyline fill="none" stroke="${color}" stroke-width="1.5" points="${points}"/>
    </svg>
  </figure>`;
}

export interface TimelineSegment {
  action: string;
  category: string;
  start: number;
  end: number;
}

export function timelineSvg(
  segments: TimelineSegment[],
  colorOf: (category: string) => string,
  gantt: boolean,
): string {
  const width = 640;
  if (!gantt) {
    const height = 36;
    const rects = segments
      .map((segment) => {
        const x = segment.start * width;
        const w = (segment.end - segment.start) * width;
        return (
          `<rect x="${x.toFixed(1)}" y="4" width="${w.toFixed(1)}" height="28" ` +
          `fill="${colorOf(segment.category)}" data-action="${esc(segment.action)}">` +
          `<title>${esc(segment.action)} (${esc(segment.category)})</title></rect>`
        );
      })
      .join("");
    return `<svg class="timeline" viewBox="0 0 ${width} ${height}" role="img">${rects}</svg>`;
  }
  const lanes: string[] = [];
  for (const segment of segments) {
    if (!lanes.includes(segment.category)) lanes.push(segment.category);
  }
  const laneHeight = 18;
  const height = lanes.length * laneHeight + 8;
  const rects = segments
    .map((segment) => {
      const x = segment.start * width;
      const w = (segment.end - segment.start) * width;
      const y = lanes.indexOf(segment.category) * laneHeight + 4;
      return (
        `<rect x="${x.toFixed(1)}" y="${y}" width="${w.toFixed(1)}" height="${laneHeight - 4}" ` +
        `fill="${colorOf(segment.category)}" data-action="${esc(segment.action)}">` +
        `<title>${esc(segment.action)} (${esc(segment.category)})</title></rect>`
      );
    })
    .join("");
  const labels = lanes
    .map(
      (lane, i) =>
        `<text class="lane" x="2" y="${i * laneHeight + laneHeight / 2 + 4}">${esc(lane)}</text>`,
    )
    .join("");
  return `<svg class="timeline gantt" viewBox="0 0 ${width} ${height}" role="img">${rects}${labels}</svg>`;
}

export interface RadarPolygon {
  label: string;
  color: string;
  values: number[]; // one per axis, in [0, 1]
  degenerate?: boolean;
}

export function radarSvg(
  axes: string[],
  polygons: RadarPolygon[],
  size = 180,
  showValues = false,
): string {
  const cx = size / 2;
  const cy = size / 2;
  const radius = size / 2 - 22;
  const angle = (i: number) => (Math.PI * 2 * i) / axes.length - Math.PI / 2;
  const ring = [1.0, 0.5]
    .map((r) => {
      const points = axes
        .map((_, i) => {
          const x = cx + Math.cos(angle(i)) * radius * r;
          const y = cy + Math.sin(angle(i)) * radius * r;
          return `${x.toFixed(1)},${y.toFixed(1)}`;
        })
        .join(" ");
      return `<polygon class="ring" points="${points}"/>`;
    })
    .join("");
  const axisLabels = axes
    .map((axis, i) => {
      const x = cx + Math.cos(angle(i)) * (radius + 12);
      const y = cy + Math.sin(angle(i)) * (radius + 12);
      return `<text class="axis" x="${x.toFixed(1)}" y="${y.toFixed(1)}" text-anchor="middle">${esc(axis)}</text>`;
    })
    .join("");
  const shapes = polygons
    .map((polygon) => {
      const points = polygon.values
        .map((value, i) => {
          const x = cx + Math.cos(angle(i)) * radius * value;
          const y = cy + Math.sin(angle(i)) * radius * value;
          return `${x.toFixed(1)},${y.toFixed(1)}`;
        })
        .join(" ");
      const values = showValues
        ? polygon.values
            .map((value, i) => {
              const x = cx + Math.cos(angle(i)) * radius * (value + 0.12);
              const y = cy + Math.sin(angle(i)) * radius * (value + 0.12);
              return svgNum(value, x, y, "vertex");
            })
            .join("")
        : "";
      return (
        `<g class="polygon" data-label="${esc(polygon.label)}">` +
        `<polygon points="${points}" fill="${polygon.color}" fill-opacity="0.25" ` +
        `stroke="${polygon.color}" stroke-width="1.5"/>${values}</g>`
      );
    })
    .join("");
  return `<svg class="radar" viewBox="0 0 ${size} ${size}" role="img">${ring}${axisLabels}${shapes}</svg>`;
}

export interface ScatterPoint {
  label: string;
  x: number;
  y: number;
  color: string;
}

export function scatterSvg(points: ScatterPoint[], size = 260): string {
  const pad = 28;
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const xMin = Math.min(...xs, 0);
  const xMax = Math.max(...xs, 0);
  const yMin = Math.min(...ys, 0);
  const yMax = Math.max(...ys, 0);
  const spanX = xMax - xMin || 1;
  const spanY = yMax - yMin || 1;
  const marks = points
    .map((point) => {
      const px = pad + ((point.x - xMin) / spanX) * (size - 2 * pad);
      const py = size - pad - ((point.y - yMin) / spanY) * (size - 2 * pad);
      return (
        `<g class="point" data-label="${esc(point.label)}" data-x="${String(point.x)}" data-y="${String(point.y)}">` +
        `<circle cx="${px.toFixed(1)}" cy="${py.toFixed(1)}" r="5" fill="${point.color}">` +
        `<title>${esc(point.label)}: (${String(point.x)}, ${String(point.y)})</title></circle>` +
        `<text x="${(px + 7).toFixed(1)}" y="${(py + 3).toFixed(1)}">${esc(point.label)}</text></g>`
      );
    })
    .join("");
  return `<svg class="scatter" viewBox="0 0 ${size} ${size}" role="img">${marks}</svg>`;
}

export function heatmapHtml(gameIds: string[], matrix: number[][]): string {
  const peak = Math.max(...matrix.flat(), 1e-12);
  const header = gameIds.map((g) => `<th>${esc(g)}</th>`).join("");
  const body = matrix
    .map((row, i) => {
      const cells = row
        .map((value) => {
          const intensity = value / peak;
          const background = `rgba(78, 121, 167, ${(intensity * 0.85).toFixed(3)})`;
          return `<td style="background:${background}">${num(value)}</td>`;
        })
        .join("");
      return `<tr><th>${esc(gameIds[i])}</th>${cells}</tr>`;
    })
    .join("");
  return `<table class="heatmap"><thead><tr><th></th>${header}</tr></thead><tbody>${body}</tbody></table>`;
}

function treeLeaves(node: DendrogramNode): string[] {
  if (typeof node === "string") return [node];
  return [...treeLeaves(node.children[0]), ...treeLeaves(node.children[1])];
}

function treeHeight(node: DendrogramNode): number {
  return typeof node === "string" ? 0 : node.merge_height;
}

export function dendrogramSvg(tree: DendrogramNode, size = 280): string {
  const leaves = treeLeaves(tree);
  const rowHeight = 24;
  const height = leaves.length * rowHeight + 10;
  const labelWidth = 110;
  const maxHeight = treeHeight(tree) || 1;
  const xOf = (h: number) => size - ((size - labelWidth) * h) / maxHeight;
  const parts: string[] = [];

  function layout(node: DendrogramNode): number {
    if (typeof node === "string") {
      const y = leaves.indexOf(node) * rowHeight + rowHeight / 2;
      parts.push(`<text class="leaf" x="2" y="${y + 4}">${esc(node)}</text>`);
      parts.push(
        `<line x1="${labelWidth}" y1="${y}" x2="${xOf(0)}" y2="${y}" class="branch"/>`,
      );
      return y;
    }
    const yA = layout(node.children[0]);
    const yB = layout(node.children[1]);
    const x = xOf(node.merge_height);
    const y = (yA + yB) / 2;
    parts.push(
      `<g class="merge" data-height="${String(node.merge_height)}">` +
        `<line x1="${x.toFixed(1)}" y1="${yA.toFixed(1)}" x2="${x.toFixed(1)}" y2="${yB.toFixed(1)}" class="branch"/>` +
        `<title>merge height ${String(node.merge_height)}</title></g>`,
    );
    return y;
  }

  layout(tree);
  return `<svg class="dendrogram" viewBox="0 0 ${size + 10} ${height}" role="img">${parts.join("")}</svg>`;
}

export interface BarRow {
  label: string;
  value: number;
  color: string;
}

export function barsHtml(rows: BarRow[]): string {
  const peak = Math.max(...rows.map((r) => r.value), 1);
  const items = rows
    .map((row) => {
      const width = ((row.value / peak) * 100).toFixed(1);
      return (
        `<div class="bar-row"><span class="bar-label">${esc(row.label)}</span>` +
        `<span class="bar" style="width:${width}%;background:${row.color}"></span>` +
        `${num(row.value)}</div>`
      );
    })
    .join("");
  return `<div class="bars">${items}</div>`;
}
