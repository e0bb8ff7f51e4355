/** Browse mode: one mission read closely, plus the game's action table. */

import { esc, flowPanel, num, timelineSvg } from "./charts.js";
import { categoryColor, GAME_PALETTE } from "./config.js";
import type { ActionsDoc, FlowDoc, MissionsDoc, StoryboardDoc, SummaryDoc, TimelineDoc } from "./types.js";

export interface BrowseData {
  actions: ActionsDoc;
  missions: MissionsDoc;
  flow: FlowDoc | null;
  timeline: TimelineDoc | null;
  storyboard: StoryboardDoc | null;
  summary: SummaryDoc | null;
}

export function renderActionTable(doc: ActionsDoc): string {
  const header = doc.dimensions.map((d) => `<th>${d.toUpperCase()}</th>`).join("");
  const rows = doc.actions
    .map((action) => {
      const cells = doc.dimensions.map((d) => `<td>${num(action.scores[d])}</td>`).join("");
      return (
        `<tr><td class="swatch" style="background:${categoryColor(action.category)}"></td>` +
        `<td>${esc(action.name)}</td><td>${esc(action.category)}</td>${cells}` +
        `<td class="desc">${esc(action.description)}</td></tr>`
      );
    })
    .join("");
  return (
    `<table class="action-table"><thead><tr><th></th><th>Action</th><th>Category</th>` +
    `${header}<th>Description</th></tr></thead><tbody>${rows}</tbody></table>`
  );
}

export function renderMissionList(doc: MissionsDoc, selected: string): string {
  const items = doc.missions
    .map((mission) => {
      const classes = [
        "mission-item",
        mission.mission_id === selected ? "selected" : "",
        mission.extracted ? "" : "unextracted",
      ]
        .filter(Boolean)
        .join(" ");
      const steps = mission.extracted ? `${num(mission.steps)} steps` : "unextracted";
      return (
        `<li class="${classes}" data-mission="${esc(mission.mission_id)}">` +
        `<span class="title">${esc(mission.title)}</span>` +
        `<span class="type">${esc(mission.quest_type)}</span>` +
        `<span class="steps">${steps}</span></li>`
      );
    })
    .join("");
  return `<ul class="mission-list">${items}</ul>`;
}

export function renderFlow(doc: FlowDoc): string {
  const panels = doc.dimensions
    .map((dim, i) =>
      flowPanel(doc.dimension_labels[i], GAME_PALETTE[i], doc.progress, doc.smoothed[dim]),
    )
    .join("");
  return (
    `<section class="panel" id="quality-flow" title="Six experiential traces over 0-100% mission progress; smoothing is display-only.">` +
    `<h3>Quality flow <span class="hint">sigma ${num(doc.sigma)}</span></h3>` +
    `<div class="flow-grid">${panels}</div>` +
    `<div class="axis-row"><span>0%</span><span>50%</span><span>100%</span></div></section>`
  );
}

export function renderTimeline(doc: TimelineDoc, gantt: boolean): string {
  const toggleLabel = gantt ? "bar view" : "gantt view";
  return (
    `<section class="panel" id="timeline" title="Every step as a colored segment over mission progress.">` +
    `<h3>Action timeline <button class="toggle" data-action="toggle-gantt">${toggleLabel}</button></h3>` +
    timelineSvg(doc.segments, categoryColor, gantt) +
    `<div class="axis-row"><span>0%</span><span>50%</span><span>100%</span></div></section>`
  );
}

export function renderStoryboard(doc: StoryboardDoc): string {
  const boxes = doc.boxes
    .map(
      (box) =>
        `<div class="board-box" style="border-color:${categoryColor(box.category)}">` +
        `<strong>${esc(box.category)}</strong><span class="len">x${num(box.length)}</span>` +
        `<div class="box-actions">${box.actions.map(esc).join(", ")}</div></div>`,
    )
    .join('<span class="arrow">&#8594;</span>');
  return (
    `<section class="panel" id="storyboard" title="Consecutive steps in the same category collapse into one box.">` +
    `<h3>Storyboard</h3><div class="board">${boxes}</div></section>`
  );
}

export function renderSummary(doc: SummaryDoc): string {
  const rows = doc.dimensions
    .map(
      (dim) =>
        `<tr><th>${dim.toUpperCase()}</th><td>${num(doc.mean[dim])}</td><td>${num(doc.sd[dim])}</td></tr>`,
    )
    .join("");
  return (
    `<section class="panel" id="summary"><h3>Raw summary <span class="hint">${num(doc.steps)} steps</span></h3>` +
    `<table class="summary-table"><thead><tr><th></th><th>mean</th><th>sd</th></tr></thead>` +
    `<tbody>${rows}</tbody></table></section>`
  );
}

export function errorPanel(context: string, message: string): string {
  return `<section class="panel error"><h3>${esc(context)}</h3><p>${esc(message)}</p></section>`;
}

export function renderBrowse(data: BrowseData, opts: { mission: string; gantt: boolean }): string {
  const missionPanels = data.flow
    ? [
        renderFlow(data.flow),
        data.timeline ? renderTimeline(data.timeline, opts.gantt) : "",
        data.storyboard ? renderStoryboard(data.storyboard) : "",
        data.summary ? renderSummary(data.summary) : "",
      ].join("")
    : `<section class="panel placeholder"><p>Select an extracted mission to read its flow.</p></section>`;
  return (
    `<div class="browse">` +
    `<aside class="sidebar">${renderMissionList(data.missions, opts.mission)}</aside>` +
    `<main class="content">${missionPanels}` +
    `<section class="panel" id="actions"><h3>Actions</h3>` +
    renderActionTable(data.actions) +
    `</section></main></div>`
  );
}
