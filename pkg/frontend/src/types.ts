/** Payload shapes of the analytics API. Mirrors the service documents. */

export type Dim = "u" | "c" | "n" | "e" | "p" | "a";

export interface Envelope<T> {
  status: "ok" | "error";
  data: T;
  params_echo: Record<string, string>;
  corpus_digest: string;
  error?: { kind: string; detail: string };
}

export interface GamesDoc {
  kind: "games";
  games: {
    game_id: string;
    title: string;
    actions: number;
    missions: number;
    extracted_missions: number;
  }[];
}

export interface ActionsDoc {
  kind: "actions";
  game_id: string;
  dimensions: Dim[];
  dimension_labels: string[];
  actions: {
    name: string;
    category: string;
    scores: Record<Dim, number>;
    description: string;
  }[];
}

export interface MissionsDoc {
  kind: "missions";
  game_id: string;
  missions: {
    mission_id: string;
    title: string;
    quest_type: string;
    steps: number;
    extracted: boolean;
    word_count: number;
  }[];
}

export interface FlowDoc {
  kind: "quality_flow";
  mission_id: string;
  game_id: string;
  title: string;
  sigma: number;
  dimensions: Dim[];
  dimension_labels: string[];
  steps: string[];
  progress: number[];
  raw: Record<Dim, number[]>;
  smoothed: Record<Dim, number[]>;
}

export interface TimelineDoc {
  kind: "timeline";
  mission_id: string;
  game_id: string;
  title: string;
  segments: { action: string; category: string; start: number; end: number }[];
}

export interface StoryboardDoc {
  kind: "storyboard";
  mission_id: string;
  game_id: string;
  boxes: { category: string; actions: string[]; length: number }[];
}

export interface SummaryDoc {
  kind: "summary";
  mission_id: string;
  game_id: string;
  steps: number;
  dimensions: Dim[];
  mean: Record<Dim, number>;
  sd: Record<Dim, number>;
}

export interface RadarDoc {
  kind: "radar";
  centroid_kind: string;
  normalize: boolean;
  dimensions: Dim[];
  dimension_labels: string[];
  polygons: { game_id: string; values: Record<Dim, number>; degenerate: boolean }[];
}

export interface CentroidsDoc {
  kind: "centroids";
  centroid_kind: string;
  dimensions: Dim[];
  rows: {
    game_id: string;
    centroid: Record<Dim, number>;
    row_percent: Record<Dim, number>;
  }[];
}

export interface PcaDoc {
  kind: "pca";
  centroid_kind: string;
  game_ids: string[];
  coordinates: [number, number][];
  explained_variance_ratio: [number, number];
  components: number[][];
  dimensions: Dim[];
}

export interface DistanceDoc {
  kind: "distance";
  centroid_kind: string;
  game_ids: string[];
  matrix: number[][];
}

export type DendrogramNode =
  | string
  | { children: [DendrogramNode, DendrogramNode]; merge_height: number };

export interface DendrogramDoc {
  kind: "dendrogram";
  centroid_kind: string;
  linkage: string;
  tree: DendrogramNode;
}

export interface MotifsDoc {
  kind: "motifs";
  level: string;
  k: number;
  per_game: { game_id: string; motifs: { motif: string[]; support: number }[] }[];
}

export interface TopkDoc {
  kind: "topk";
  level: string;
  k: number;
  per_game: { game_id: string; counts: { atom: string; count: number }[] }[];
}
