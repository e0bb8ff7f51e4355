/** Browser entry: state wiring, data fetching, and event handling. */

import { ApiClient, ApiError, RequestGate } from "./api.js";
import { errorPanel, renderBrowse } from "./browse.js";
import { renderCompare } from "./compare.js";
import { esc } from "./charts.js";
import { decodeState, encodeState, stateProblems, ViewState } from "./state.js";
import type {
  ActionsDoc,
  CentroidsDoc,
  DendrogramDoc,
  DistanceDoc,
  FlowDoc,
  GamesDoc,
  MissionsDoc,
  MotifsDoc,
  PcaDoc,
  RadarDoc,
  StoryboardDoc,
  SummaryDoc,
  TimelineDoc,
  TopkDoc,
} from "./types.js";

const api = new ApiClient("", (url) => fetch(url));
const gate = new RequestGate();

let state: ViewState = decodeState(location.search);
let games: GamesDoc["games"] = [];

const root = () => document.getElementById("app")!;

function syncUrl(): void {
  history.replaceState(null, "", `?${encodeState(state)}`);
}

function setState(patch: Partial<ViewState>): void {
  state = { ...state, ...patch };
  syncUrl();
  void render();
}

function headerHtml(): string {
  const gameOptions = games
    .map(
      (game) =>
        `<option value="${esc(game.game_id)}" ${game.game_id === state.selectedGame ? "selected" : ""}>${esc(game.title)}</option>`,
    )
    .join("");
  const checkboxes = games
    .map(
      (game) =>
        `<label class="game-check"><input type="checkbox" data-game="${esc(game.game_id)}" ` +
        `${state.selectedGames.includes(game.game_id) ? "checked" : ""}/> ${esc(game.title)}</label>`,
    )
    .join("");
  const browseControls =
    `<select id="game-select" title="Pick the game to browse">${gameOptions}</select>` +
    `<label class="sigma">sigma <input id="sigma-input" type="number" min="0" step="0.5" value="${state.sigma}"/></label>`;
  const compareControls =
    `<span class="game-checks">${checkboxes}</span>` +
    `<label>motifs <select id="level-select">` +
    `<option value="category" ${state.motifLevel === "category" ? "selected" : ""}>category</option>` +
    `<option value="action" ${state.motifLevel === "action" ? "selected" : ""}>action</option>` +
    `</select></label>`;
  return (
    `<header class="topbar">` +
    `<h1>questlens</h1>` +
    `<nav class="tabs">` +
    `<button class="tab ${state.mode === "browse" ? "active" : ""}" data-mode="browse">Browse</button>` +
    `<button class="tab ${state.mode === "compare" ? "active" : ""}" data-mode="compare">Compare</button>` +
    `</nav>` +
    `<div class="controls">${state.mode === "browse" ? browseControls : compareControls}</div>` +
    `<button id="tour" title="Quick tour">?</button>` +
    `</header>`
  );
}

const TOUR_HTML =
  `<section class="panel tour"><h3>Quick tour</h3><ol>` +
  `<li>Browse: pick a game, then a mission; read the six quality-flow traces against the color-coded timeline below them.</li>` +
  `<li>The storyboard collapses consecutive same-category steps; the table lists every action's six scores.</li>` +
  `<li>Compare: tick titles to overlay radars; toggle Normalize to read shape instead of magnitude.</li>` +
  `<li>The map, heatmap, and tree all encode the same distances; motifs and top atoms expose recurring structure.</li>` +
  `</ol><p>Every number shown comes verbatim from the analytics API.</p></section>`;

let tourOpen = false;

async function fetchBrowse(ticket: number): Promise<string> {
  const game = state.selectedGame;
  const [actions, missions] = await Promise.all([
    api.get<ActionsDoc>(`/games/${game}/actions`),
    api.get<MissionsDoc>(`/games/${game}/missions`),
  ]);
  if (!gate.isCurrent(ticket)) return "";
  if (!state.selectedMission) {
    const firstExtracted = missions.data.missions.find((m) => m.extracted);
    if (firstExtracted) state.selectedMission = firstExtracted.mission_id;
    syncUrl();
  }
  let flow: FlowDoc | null = null;
  let timeline: TimelineDoc | null = null;
  let storyboard: StoryboardDoc | null = null;
  let summary: SummaryDoc | null = null;
  if (state.selectedMission) {
    const mission = state.selectedMission;
    try {
      [flow, timeline, storyboard, summary] = (
        await Promise.all([
          api.get<FlowDoc>(`/missions/${mission}/flow`, { sigma: String(state.sigma) }),
          api.get<TimelineDoc>(`/missions/${mission}/timeline`),
          api.get<StoryboardDoc>(`/missions/${mission}/storyboard`),
          api.get<SummaryDoc>(`/missions/${mission}/summary`),
        ])
      ).map((envelope) => envelope.data) as [FlowDoc, TimelineDoc, StoryboardDoc, SummaryDoc];
    } catch (error) {
      if (!gate.isCurrent(ticket)) return "";
      return (
        renderBrowse(
          { actions: actions.data, missions: missions.data, flow: null, timeline: null, storyboard: null, summary: null },
          { mission: state.selectedMission, gantt: state.gantt },
        ) + errorPanel("Mission data", error instanceof ApiError ? error.message : String(error))
      );
    }
  }
  if (!gate.isCurrent(ticket)) return "";
  return renderBrowse(
    { actions: actions.data, missions: missions.data, flow, timeline, storyboard, summary },
    { mission: state.selectedMission, gantt: state.gantt },
  );
}

async function fetchCompare(ticket: number): Promise<string> {
  const params: Record<string, string> = { games: state.selectedGames.join(",") };
  const single = state.selectedGames.length === 1;
  const [radarRaw, radarToggled, centroids, motifs, topk] = await Promise.all([
    api.get<RadarDoc>("/compare/radar", { ...params, kind: "mission", normalize: "0" }),
    api.get<RadarDoc>("/compare/radar", {
      ...params,
      kind: "mission",
      normalize: state.normalize ? "1" : "0",
    }),
    api.get<CentroidsDoc>("/compare/centroids", { ...params, kind: "action" }),
    api.get<MotifsDoc>("/compare/motifs", { ...params, level: state.motifLevel, k: "3" }),
    api.get<TopkDoc>("/compare/topk", { ...params, level: state.motifLevel, k: "5" }),
  ]);
  let pca: PcaDoc | null = null;
  let dendrogram: DendrogramDoc | null = null;
  let distance: DistanceDoc | null = null;
  if (!single) {
    const [pcaEnvelope, dendroEnvelope] = await Promise.all([
      api.get<PcaDoc>("/compare/pca", { ...params, kind: "action" }),
      api.get<DendrogramDoc>("/compare/dendrogram", { ...params, kind: "action" }),
    ]);
    pca = pcaEnvelope.data;
    dendrogram = dendroEnvelope.data;
  }
  const distanceEnvelope = await api.get<DistanceDoc>("/compare/distance", {
    ...params,
    kind: "action",
  });
  distance = distanceEnvelope.data;
  if (!gate.isCurrent(ticket)) return "";
  return renderCompare(
    {
      radar: radarRaw.data,
      smallMultiples: radarToggled.data,
      centroids: centroids.data,
      pca,
      distance,
      dendrogram,
      motifs: motifs.data,
      topk: topk.data,
    },
    { normalize: state.normalize, motifLevel: state.motifLevel },
  );
}

async function render(): Promise<void> {
  const ticket = gate.next();
  const problems = stateProblems(state);
  let body: string;
  if (problems.length) {
    body = `<section class="panel placeholder"><p>${esc(problems.join("; "))}</p></section>`;
  } else {
    try {
      body = state.mode === "browse" ? await fetchBrowse(ticket) : await fetchCompare(ticket);
    } catch (error) {
      body = errorPanel(
        "Fetch failed",
        error instanceof ApiError ? `${error.kind}: ${error.message}` : String(error),
      );
    }
  }
  if (!gate.isCurrent(ticket) || body === "") return;
  root().innerHTML = headerHtml() + `<div id="view">${body}</div>` + (tourOpen ? TOUR_HTML : "");
  wire();
}

function wire(): void {
  root().querySelectorAll<HTMLButtonElement>(".tab").forEach((tab) => {
    tab.addEventListener("click", () => {
      const mode = tab.dataset.mode as "browse" | "compare";
      if (mode === "compare" && state.selectedGames.length === 0) {
        setState({ mode, selectedGames: games.map((g) => g.game_id) });
      } else {
        setState({ mode });
      }
    });
  });
  const gameSelect = document.getElementById("game-select") as HTMLSelectElement | null;
  gameSelect?.addEventListener("change", () =>
    setState({ selectedGame: gameSelect.value, selectedMission: "" }),
  );
  const sigmaInput = document.getElementById("sigma-input") as HTMLInputElement | null;
  sigmaInput?.addEventListener("change", () => {
    const sigma = Number(sigmaInput.value);
    if (Number.isFinite(sigma) && sigma >= 0) setState({ sigma });
  });
  const levelSelect = document.getElementById("level-select") as HTMLSelectElement | null;
  levelSelect?.addEventListener("change", () =>
    setState({ motifLevel: levelSelect.value as "category" | "action" }),
  );
  root().querySelectorAll<HTMLInputElement>(".game-check input").forEach((box) => {
    box.addEventListener("change", () => {
      const game = box.dataset.game!;
      const selected = new Set(state.selectedGames);
      if (box.checked) selected.add(game);
      else selected.delete(game);
      setState({ selectedGames: games.map((g) => g.game_id).filter((g) => selected.has(g)) });
    });
  });
  root().querySelectorAll<HTMLLIElement>(".mission-item").forEach((item) => {
    item.addEventListener("click", () => setState({ selectedMission: item.dataset.mission! }));
  });
  root()
    .querySelector<HTMLButtonElement>('[data-action="toggle-gantt"]')
    ?.addEventListener("click", () => setState({ gantt: !state.gantt }));
  root()
    .querySelector<HTMLButtonElement>('[data-action="toggle-normalize"]')
    ?.addEventListener("click", () => setState({ normalize: !state.normalize }));
  document.getElementById("tour")?.addEventListener("click", () => {
    tourOpen = !tourOpen;
    void render();
  });
}

async function boot(): Promise<void> {
  try {
    const envelope = await api.get<GamesDoc>("/games");
    games = envelope.data.games;
  } catch (error) {
    root().innerHTML = errorPanel(
      "Cannot reach the analytics service",
      error instanceof ApiError ? error.message : String(error),
    );
    return;
  }
  if (!state.selectedGame && games.length) state.selectedGame = games[0].game_id;
  if (state.mode === "compare" && state.selectedGames.length === 0) {
    state.selectedGames = games.map((g) => g.game_id);
  }
  syncUrl();
  await render();
}

window.addEventListener("popstate", () => {
  state = decodeState(location.search);
  void render();
});

void boot();
