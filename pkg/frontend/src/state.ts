/** View state, fully round-trippable through the URL query string. */

export type Mode = "browse" | "compare";
export type MotifLevel = "category" | "action";

export interface ViewState {
  mode: Mode;
  selectedGame: string;
  selectedMission: string;
  selectedGames: string[];
  normalize: boolean;
  motifLevel: MotifLevel;
  sigma: number;
  gantt: boolean;
}

export const DEFAULT_STATE: ViewState = {
  mode: "browse",
  selectedGame: "",
  selectedMission: "",
  selectedGames: [],
  normalize: false,
  motifLevel: "category",
  sigma: 2,
  gantt: false,
};

export function encodeState(state: ViewState): string {
  const params = new URLSearchParams();
  params.set("mode", state.mode);
  if (state.selectedGame) params.set("game", state.selectedGame);
  if (state.selectedMission) params.set("mission", state.selectedMission);
  if (state.selectedGames.length) params.set("games", state.selectedGames.join(","));
  if (state.normalize) params.set("normalize", "1");
  if (state.motifLevel !== "category") params.set("level", state.motifLevel);
  if (state.sigma !== 2) params.set("sigma", String(state.sigma));
  if (state.gantt) params.set("gantt", "1");
  return params.toString();
}

export function decodeState(query: string): ViewState {
  const params = new URLSearchParams(query);
  const mode = params.get("mode") === "compare" ? "compare" : "browse";
  const sigmaRaw = Number(params.get("sigma") ?? "2");
  return {
    mode,
    selectedGame: params.get("game") ?? "",
    selectedMission: params.get("mission") ?? "",
    selectedGames: (params.get("games") ?? "").split(",").filter((g) => g.length > 0),
    normalize: params.get("normalize") === "1",
    motifLevel: params.get("level") === "action" ? "action" : "category",
    sigma: Number.isFinite(sigmaRaw) && sigmaRaw >= 0 ? sigmaRaw : 2,
    gantt: params.get("gantt") === "1",
  };
}

/** Browse needs a selected game; Compare needs at least one selected game. */
export function stateProblems(state: ViewState): string[] {
  const problems: string[] = [];
  if (state.mode === "browse" && !state.selectedGame) {
    problems.push("browse mode needs a selected game");
  }
  if (state.mode === "compare" && state.selectedGames.length < 1) {
    problems.push("compare mode needs at least one selected game");
  }
  return problems;
}
