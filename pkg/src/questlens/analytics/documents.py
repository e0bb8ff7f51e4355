"""Self-describing chart-data documents for the service, CLI, and dashboard.

Each builder returns a plain dict (series, labels, params) that serializes
deterministically via jsonio.canonical_dumps. The dashboard renders these
documents verbatim; it performs no numeric computation of its own.
"""
from __future__ import annotations

from ..corpus import Corpus, CorpusError, DIMENSIONS, DIMENSION_LABELS
from . import compare, flows


def games_document(corpus: Corpus) -> dict:
    return {
        "kind": "games",
        "games": [
            {
                "game_id": game.game_id,
                "title": game.title,
                "actions": len(game.library),
                "missions": len(game.missions),
                "extracted_missions": sum(1 for m in game.missions if m.extracted),
            }
            for game in corpus.games
        ],
    }


def actions_document(corpus: Corpus, game_id: str) -> dict:
    game = corpus.game(game_id)
    return {
        "kind": "actions",
        "game_id": game.game_id,
        "dimensions": list(DIMENSIONS),
        "dimension_labels": [DIMENSION_LABELS[d] for d in DIMENSIONS],
        "actions": [
            {
                "name": action.name,
                "category": action.category,
                "scores": {d: getattr(action.scores, d) for d in DIMENSIONS},
                "description": action.description,
            }
            for action in game.library.actions
        ],
    }


def missions_document(corpus: Corpus, game_id: str) -> dict:
    game = corpus.game(game_id)
    return {
        "kind": "missions",
        "game_id": game.game_id,
        "missions": [
            {
                "mission_id": record.mission_id,
                "title": record.title,
                "quest_type": record.quest_type,
                "steps": len(record.sequence) if record.sequence else 0,
                "extracted": record.extracted,
                "word_count": record.word_count,
            }
            for record in game.missions
        ],
    }


def _extracted_mission(corpus: Corpus, mission_id: str):
    game, record = corpus.find_mission(mission_id)
    if record.sequence is None:
        raise CorpusError(f"mission {mission_id!r} has no extracted sequence")
    return game, record


def flow_document(corpus: Corpus, mission_id: str, sigma: float = 2.0) -> dict:
    game, record = _extracted_mission(corpus, mission_id)
    flow = flows.quality_flow(record.sequence, game.library, sigma=sigma, mission_id=mission_id)
    return {
        "kind": "quality_flow",
        "mission_id": mission_id,
        "game_id": game.game_id,
        "title": record.title,
        "sigma": sigma,
        "dimensions": list(DIMENSIONS),
        "dimension_labels": [DIMENSION_LABELS[d] for d in DIMENSIONS],
        "steps": list(record.sequence.steps),
        "progress": list(flow.progress),
        "raw": {d: list(flow.raw[d]) for d in DIMENSIONS},
        "smoothed": {d: list(flow.smoothed[d]) for d in DIMENSIONS},
    }


def timeline_document(corpus: Corpus, mission_id: str) -> dict:
    game, record = _extracted_mission(corpus, mission_id)
    actions = record.sequence.resolve(game.library)
    n = len(actions)
    return {
        "kind": "timeline",
        "mission_id": mission_id,
        "game_id": game.game_id,
        "title": record.title,
        "segments": [
            {
                "action": action.name,
                "category": action.category,
                "start": i / n,
                "end": (i + 1) / n,
            }
            for i, action in enumerate(actions)
        ],
    }


def storyboard_document(corpus: Corpus, mission_id: str) -> dict:
    game, record = _extracted_mission(corpus, mission_id)
    boxes = flows.storyboard(record.sequence, game.library)
    return {
        "kind": "storyboard",
        "mission_id": mission_id,
        "game_id": game.game_id,
        "boxes": [
            {"category": box.category, "actions": list(box.actions), "length": box.length}
            for box in boxes
        ],
    }


def summary_document(corpus: Corpus, mission_id: str) -> dict:
    game, record = _extracted_mission(corpus, mission_id)
    summary = flows.mission_summary(record.sequence, game.library, mission_id=mission_id)
    return {
        "kind": "summary",
        "mission_id": mission_id,
        "game_id": game.game_id,
        "steps": summary.steps,
        "dimensions": list(DIMENSIONS),
        "mean": {d: summary.mean[d] for d in DIMENSIONS},
        "sd": {d: summary.sd[d] for d in DIMENSIONS},
    }


def radar_document(corpus: Corpus, kind: str = "mission", normalize: bool = False) -> dict:
    rows = compare.centroids(corpus, kind)
    polygons = []
    for row in rows:
        vector = row.centroid
        degenerate = False
        if normalize:
            vector, degenerate = compare.normalize_radar(vector)
        polygons.append(
            {
                "game_id": row.game_id,
                "values": {d: getattr(vector, d) for d in DIMENSIONS},
                "degenerate": degenerate,
            }
        )
    return {
        "kind": "radar",
        "centroid_kind": kind,
        "normalize": normalize,
        "dimensions": list(DIMENSIONS),
        "dimension_labels": [DIMENSION_LABELS[d] for d in DIMENSIONS],
        "polygons": polygons,
    }


def centroids_document(corpus: Corpus, kind: str = "action") -> dict:
    rows = compare.centroids(corpus, kind)
    return {
        "kind": "centroids",
        "centroid_kind": kind,
        "dimensions": list(DIMENSIONS),
        "rows": [
            {
                "game_id": row.game_id,
                "centroid": {d: getattr(row.centroid, d) for d in DIMENSIONS},
                "row_percent": {d: row.row_percent[i] for i, d in enumerate(DIMENSIONS)},
            }
            for row in rows
        ],
    }


def pca_document(corpus: Corpus, kind: str = "action") -> dict:
    rows = compare.centroids(corpus, kind)
    projection = compare.pca_map(rows)
    return {
        "kind": "pca",
        "centroid_kind": kind,
        "game_ids": list(projection.game_ids),
        "coordinates": [[x, y] for x, y in projection.coordinates],
        "explained_variance_ratio": list(projection.explained_variance_ratio),
        "components": [list(c) for c in projection.components],
        "dimensions": list(DIMENSIONS),
    }


def distance_document(corpus: Corpus, kind: str = "action") -> dict:
    rows = compare.centroids(corpus, kind)
    game_ids, matrix = compare.distance_matrix(rows)
    return {
        "kind": "distance",
        "centroid_kind": kind,
        "game_ids": list(game_ids),
        "matrix": [[float(v) for v in row] for row in matrix],
    }


def _dendrogram_node(node) -> dict | str:
    if isinstance(node, str):
        return node
    return {
        "children": [_dendrogram_node(child) for child in node.children],
        "merge_height": node.merge_height,
    }


def dendrogram_document(corpus: Corpus, kind: str = "action") -> dict:
    rows = compare.centroids(corpus, kind)
    tree = compare.ward_dendrogram(rows)
    return {
        "kind": "dendrogram",
        "centroid_kind": kind,
        "linkage": "ward",
        "tree": _dendrogram_node(tree),
    }


def motifs_document(corpus: Corpus, level: str = "category", k: int = 3) -> dict:
    counts = compare.motif_counts(corpus, level)
    return {
        "kind": "motifs",
        "level": level,
        "k": k,
        "per_game": [
            {
                "game_id": game.game_id,
                "motifs": [
                    {"motif": list(c.motif), "support": c.support}
                    for c in compare.top_motifs(counts, game.game_id, k)
                ],
            }
            for game in corpus.games
        ],
    }


def topk_document(corpus: Corpus, level: str = "category", k: int = 5) -> dict:
    ranked = compare.top_counts(corpus, level, k)
    return {
        "kind": "topk",
        "level": level,
        "k": k,
        "per_game": [
            {
                "game_id": game.game_id,
                "counts": [{"atom": atom, "count": count} for atom, count in ranked[game.game_id]],
            }
            for game in corpus.games
        ],
    }


def centroids_csv(corpus: Corpus, kind: str = "action") -> str:
    """Snapshot table: one row per game, raw means plus row percentages."""
    from ..jsonio import format_float

    rows = compare.centroids(corpus, kind)
    header = ["game_id"] + [f"{d}_mean" for d in DIMENSIONS] + [f"{d}_pct" for d in DIMENSIONS]
    lines = [",".join(header)]
    for row in rows:
        cells = [row.game_id]
        cells += [format_float(getattr(row.centroid, d)) for d in DIMENSIONS]
        cells += [format_float(p) for p in row.row_percent]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
