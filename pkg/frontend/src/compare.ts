/** Compare mode: cross-title views over the selected games. */

import { barsHtml, dendrogramSvg, esc, heatmapHtml, num, radarSvg, scatterSvg } from "./charts.js";
import { categoryColor, gameColor } from "./config.js";
import type {
  CentroidsDoc,
  DendrogramDoc,
  DistanceDoc,
  MotifsDoc,
  PcaDoc,
  RadarDoc,
  TopkDoc,
} from "./types.js";

export interface CompareData {
  radar: RadarDoc;
  smallMultiples: RadarDoc; // same endpoint, normalize per toggle
  centroids: CentroidsDoc;
  pca: PcaDoc | null;
  distance: DistanceDoc | null;
  dendrogram: DendrogramDoc | null;
  motifs: MotifsDoc;
  topk: TopkDoc;
}

export function renderRadarOverlay(doc: RadarDoc): string {
  const axes = doc.dimensions.map((d) => d.toUpperCase());
  const polygons = doc.polygons.map((polygon, i) => ({
    label: polygon.game_id,
    color: gameColor(i),
    values: doc.dimensions.map((d) => polygon.values[d]),
  }));
  const legend = doc.polygons
    .map(
      (polygon, i) =>
        `<span class="legend-item"><span class="swatch" style="background:${gameColor(i)}"></span>${esc(polygon.game_id)}</span>`,
    )
    .join("");
  return (
    `<section class="panel" id="radar-overlay" title="Mean mission vectors per title, overlaid.">` +
    `<h3>Combined radar <span class="hint">${esc(doc.centroid_kind)}-level</span></h3>` +
    radarSvg(axes, polygons, 240) +
    `<div class="legend">${legend}</div></section>`
  );
}

export function renderSmallMultiples(doc: RadarDoc, normalize: boolean): string {
  const axes = doc.dimensions.map((d) => d.toUpperCase());
  const cards = doc.polygons
    .map((polygon, i) => {
      const values = doc.dimensions.map((d) => polygon.values[d]);
      return (
        `<figure class="multiple" data-game="${esc(polygon.game_id)}">` +
        radarSvg(axes, [{ label: polygon.game_id, color: gameColor(i), values }], 150, true) +
        `<figcaption>${esc(polygon.game_id)}${polygon.degenerate ? " (all-zero)" : ""}</figcaption></figure>`
      );
    })
    .join("");
  const toggleLabel = normalize ? "normalized: on" : "normalized: off";
  return (
    `<section class="panel" id="small-multiples" title="One radar per title; Normalize rescales each to its own maximum.">` +
    `<h3>Per-game radars <button class="toggle" data-action="toggle-normalize">${toggleLabel}</button></h3>` +
    `<div class="multiples">${cards}</div></section>`
  );
}

export function renderPca(doc: PcaDoc | null, note?: string): string {
  if (!doc) {
    return (
      `<section class="panel disabled" id="pca"><h3>Similarity map</h3>` +
      `<p class="note">${esc(note ?? "Select at least two games to project titles.")}</p></section>`
    );
  }
  const points = doc.game_ids.map((game_id, i) => ({
    label: game_id,
    x: doc.coordinates[i][0],
    y: doc.coordinates[i][1],
    color: gameColor(i),
  }));
  const [r1, r2] = doc.explained_variance_ratio;
  return (
    `<section class="panel" id="pca" title="Titles projected onto the top two principal directions.">` +
    `<h3>Similarity map <span class="hint">variance ${num(r1)} + ${num(r2)}</span></h3>` +
    scatterSvg(points) +
    `</section>`
  );
}

export function renderDistance(doc: DistanceDoc | null): string {
  if (!doc) {
    return `<section class="panel disabled" id="distance"><h3>Distance matrix</h3><p class="note">Needs at least one game.</p></section>`;
  }
  return (
    `<section class="panel" id="distance" title="Pairwise distance between title centroids; darker is farther.">` +
    `<h3>Distance matrix</h3>` +
    heatmapHtml(doc.game_ids, doc.matrix) +
    `</section>`
  );
}

export function renderDendrogram(doc: DendrogramDoc | null, note?: string): string {
  if (!doc) {
    return (
      `<section class="panel disabled" id="dendrogram"><h3>Similarity tree</h3>` +
      `<p class="note">${esc(note ?? "Select at least two games to cluster titles.")}</p></section>`
    );
  }
  return (
    `<section class="panel" id="dendrogram" title="Agglomerative clustering; branch position encodes merge cost.">` +
    `<h3>Similarity tree <span class="hint">${esc(doc.linkage)}</span></h3>` +
    dendrogramSvg(doc.tree) +
    `</section>`
  );
}

export function renderMotifs(doc: MotifsDoc): string {
  const groups = doc.per_game
    .map((entry) => {
      const rows = entry.motifs.map((motif) => ({
        label: motif.motif.join(" > "),
        value: motif.support,
        color: categoryColor(motif.motif[0]),
      }));
      const bars = rows.length ? barsHtml(rows) : `<p class="note">no motifs</p>`;
      return `<div class="motif-group"><h4>${esc(entry.game_id)}</h4>${bars}</div>`;
    })
    .join("");
  return (
    `<section class="panel" id="motifs" title="Most frequent three-step runs per title.">` +
    `<h3>Frequent motifs <span class="hint">${esc(doc.level)}-level, top ${num(doc.k)}</span></h3>` +
    `<div class="motif-groups">${groups}</div></section>`
  );
}

export function renderTopk(doc: TopkDoc): string {
  const groups = doc.per_game
    .map((entry) => {
      const rows = entry.counts.map((count) => ({
        label: count.atom,
        value: count.count,
        color: doc.level === "category" ? categoryColor(count.atom) : "#4e79a7",
      }));
      const bars = rows.length ? barsHtml(rows) : `<p class="note">no steps</p>`;
      return `<div class="motif-group"><h4>${esc(entry.game_id)}</h4>${bars}</div>`;
    })
    .join("");
  return (
    `<section class="panel" id="topk" title="Step-occurrence counts of the most common atoms per title.">` +
    `<h3>Top atoms <span class="hint">${esc(doc.level)}-level, top ${num(doc.k)}</span></h3>` +
    `<div class="motif-groups">${groups}</div></section>`
  );
}

export function renderCentroidTable(doc: CentroidsDoc): string {
  const header = doc.dimensions.map((d) => `<th>${d.toUpperCase()}</th>`).join("");
  const rows = doc.rows
    .map((row) => {
      const means = doc.dimensions.map((d) => `<td>${num(row.centroid[d])}</td>`).join("");
      const pct = doc.dimensions
        .map((d) => `<td class="pct">${num(row.row_percent[d])}%</td>`)
        .join("");
      return (
        `<tr><th rowspan="2">${esc(row.game_id)}</th>${means}<td class="rowkind">mean</td></tr>` +
        `<tr>${pct}<td class="rowkind">row %</td></tr>`
      );
    })
    .join("");
  return (
    `<section class="panel" id="centroids">` +
    `<h3>Centroid table <span class="hint">${esc(doc.centroid_kind)}-level</span></h3>` +
    `<table class="centroid-table"><thead><tr><th>game</th>${header}<th></th></tr></thead>` +
    `<tbody>${rows}</tbody></table></section>`
  );
}

export function renderCompare(
  data: CompareData,
  opts: { normalize: boolean; motifLevel: string },
): string {
  return (
    `<div class="compare">` +
    renderRadarOverlay(data.radar) +
    renderSmallMultiples(data.smallMultiples, opts.normalize) +
    renderPca(data.pca) +
    renderDistance(data.distance) +
    renderDendrogram(data.dendrogram) +
    renderMotifs(data.motifs) +
    renderTopk(data.topk) +
    renderCentroidTable(data.centroids) +
    `</div>`
  );
}
