/** Display configuration. The palette is non-normative; swap freely. */

export const CATEGORY_PALETTE: Record<string, string> = {
  Traversal: "#4e79a7",
  Combat: "#59a14f",
  Stealth: "#e15759",
  "Puzzle & Investigation": "#76b7b2",
  "Social Interaction": "#f28e2b",
  "Environmental Interaction": "#8cd17d",
  "Special Ability": "#b07aa1",
  "Gadget Deployment": "#edc948",
  "Ranged Interaction": "#d37295",
};

export const FALLBACK_COLOR = "#bab0ac";

export const GAME_PALETTE = [
  "#4e79a7",
  "#f28e2b",
  "#59a14f",
  "#e15759",
  "#b07aa1",
  "#76b7b2",
  "#edc948",
  "#d37295",
  "#8cd17d",
];

export function categoryColor(category: string): string {
  return CATEGORY_PALETTE[category] ?? FALLBACK_COLOR;
}

export function gameColor(index: number): string {
  return GAME_PALETTE[index % GAME_PALETTE.length];
}
