"""Cross-title comparison: centroids, radar normalization, PCA, distances,
Ward clustering, motifs, and top-k counts over the demo corpus.

Run from the repo root:  python demos/02_compare_titles.py
"""
from pathlib import Path

from questlens import load_corpus
from questlens.analytics import (
    centroids,
    distance_matrix,
    motif_counts,
    normalize_radar,
    pca_map,
    top_counts,
    top_motifs,
    ward_dendrogram,
)
from questlens.corpus import DIMENSIONS

corpus = load_corpus(sorted(Path("fixtures/corpus").glob("*.json")))

print("=== action-level centroids (mean over each game's unique actions) ===")
rows = centroids(corpus, "action")
header = "game           " + " ".join(f"{d:>6}" for d in DIMENSIONS)
print(header)
for row in rows:
    cells = " ".join(f"{getattr(row.centroid, d):6.3f}" for d in DIMENSIONS)
    print(f"{row.game_id:<14} {cells}")
    pct = " ".join(f"{p:5.0f}%" for p in row.row_percent)
    print(f"{'':<14} {pct}   (row % of max)")

print("\n=== normalized radar polygons (max axis = 1) ===")
for row in centroids(corpus, "mission"):
    normalized, degenerate = normalize_radar(row.centroid)
    cells = " ".join(f"{getattr(normalized, d):.2f}" for d in DIMENSIONS)
    print(f"{row.game_id:<14} {cells}{'  (degenerate)' if degenerate else ''}")

print("\n=== similarity map (top-2 principal directions) ===")
projection = pca_map(rows)
r1, r2 = projection.explained_variance_ratio
print(f"explained variance: {r1:.1%} + {r2:.1%}")
for game_id, (x, y) in zip(projection.game_ids, projection.coordinates):
    print(f"  {game_id:<14} ({x:+.3f}, {y:+.3f})")

print("\n=== pairwise distances ===")
game_ids, matrix = distance_matrix(rows)
print(" " * 14 + " ".join(f"{g[:10]:>11}" for g in game_ids))
for i, game_id in enumerate(game_ids):
    print(f"{game_id:<14}" + " ".join(f"{matrix[i, j]:11.4f}" for j in range(len(game_ids))))


def render(node, indent=0):
    pad = "  " * indent
    if isinstance(node, str):
        print(f"{pad}- {node}")
        return
    print(f"{pad}merge @ {node.merge_height:.4f}")
    for child in node.children:
        render(child, indent + 1)


print("\n=== similarity tree (Ward linkage over action centroids) ===")
render(ward_dendrogram(rows))

print("\n=== frequent three-step category runs per game ===")
counts = motif_counts(corpus, level="category")
for game in corpus.games:
    print(f"{game.game_id}:")
    for motif in top_motifs(counts, game.game_id, k=3):
        print(f"  {' -> '.join(motif.motif)}   x{motif.support}")

print("\n=== top-5 action counts per game ===")
for game_id, ranked in top_counts(corpus, level="action", k=5).items():
    listing = ", ".join(f"{atom} x{count}" for atom, count in ranked)
    print(f"{game_id}: {listing}")
