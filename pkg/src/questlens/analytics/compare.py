"""Cross-title analytics: centroids, projections, clustering, and motifs.

All functions are pure over an immutable corpus and deterministic: every
top-k uses a lexicographic tie-break and clustering ties resolve to the
smallest index pair, so repeated runs emit byte-stable documents.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Literal, NamedTuple

import numpy as np

from ..corpus import Corpus, CorpusError, DIMENSIONS, QualityVector

CentroidKind = Literal["action", "mission"]
MotifLevel = Literal["category", "action"]


@dataclass(frozen=True)
class CentroidRow:
    """One game's six-dimension centroid plus row-normalized percentages."""

    game_id: str
    kind: str
    centroid: QualityVector
    row_percent: tuple[float, float, float, float, float, float]


class RadarNormalization(NamedTuple):
    vector: QualityVector
    degenerate: bool


@dataclass(frozen=True)
class MotifCount:
    """Support of one three-step window within a game."""

    motif: tuple[str, str, str]
    game_id: str
    support: int


@dataclass(frozen=True)
class DendrogramNode:
    """Binary merge tree; leaves are game ids, heights are merge costs."""

    children: tuple["DendrogramNode | str", "DendrogramNode | str"]
    merge_height: float

    def leaves(self) -> list[str]:
        out: list[str] = []
        for child in self.children:
            if isinstance(child, str):
                out.append(child)
            else:
                out.extend(child.leaves())
        return out


def _mean_vector(vectors: Iterable[QualityVector]) -> QualityVector:
    rows = np.array([v.as_tuple() for v in vectors], dtype=float)
    return QualityVector(*(float(x) for x in rows.mean(axis=0)))


def _row_percent(vector: QualityVector) -> tuple[float, ...]:
    values = vector.as_tuple()
    peak = max(values)
    if peak == 0.0:
        return tuple(0.0 for _ in values)
    return tuple(100.0 * v / peak for v in values)


def centroids(corpus: Corpus, kind: CentroidKind) -> list[CentroidRow]:
    """Per-game centroid vectors.

    ``action``: unweighted mean over the game's unique library actions.
    ``mission``: mean over per-mission step-vector means; games with no
    extracted missions are excluded with a warning.
    """
    if kind not in ("action", "mission"):
        raise CorpusError(f"unknown centroid kind {kind!r}")
    rows: list[CentroidRow] = []
    for game in corpus.games:
        if kind == "action":
            centroid = _mean_vector(a.scores for a in game.library.actions)
        else:
            per_mission = []
            for record in game.missions:
                if record.sequence is None:
                    continue
                per_mission.append(
                    _mean_vector(a.scores for a in record.sequence.resolve(game.library))
                )
            if not per_mission:
                warnings.warn(
                    f"game {game.game_id!r} has no extracted missions; "
                    "excluded from mission-level centroids",
                    stacklevel=2,
                )
                continue
            centroid = _mean_vector(per_mission)
        rows.append(
            CentroidRow(
                game_id=game.game_id,
                kind=kind,
                centroid=centroid,
                row_percent=_row_percent(centroid),
            )
        )
    return rows


def normalize_radar(vector: QualityVector) -> RadarNormalization:
    """Scale so the maximum component is 1; all-zero input is flagged."""
    values = vector.as_tuple()
    peak = max(values)
    if peak == 0.0:
        return RadarNormalization(vector=vector, degenerate=True)
    return RadarNormalization(
        vector=QualityVector(*(v / peak for v in values)), degenerate=False
    )


@dataclass(frozen=True)
class PcaMap:
    """2-D projection of per-game centroids with explained-variance ratios."""

    game_ids: tuple[str, ...]
    coordinates: tuple[tuple[float, float], ...]
    explained_variance_ratio: tuple[float, float]
    components: tuple[tuple[float, ...], tuple[float, ...]]


def pca_map(rows: list[CentroidRow]) -> PcaMap:
    """Project centroids onto the top-2 principal directions.

    Data are mean-centered but not variance-scaled (all six dimensions share
    the [0, 1] scale). Component signs are fixed so the largest-magnitude
    loading of each direction is positive.
    """
    if len(rows) < 2:
        raise CorpusError("principal-component map needs at least 2 games")
    data = np.array([row.centroid.as_tuple() for row in rows], dtype=float)
    centered = data - data.mean(axis=0)
    # SVD of centered data == eigen-decomposition of its covariance.
    _, singular, vt = np.linalg.svd(centered, full_matrices=False)
    variances = (singular**2) / len(rows)
    total = float(variances.sum())
    components = []
    ratios = []
    for k in range(2):
        direction = vt[k] if k < vt.shape[0] else np.zeros(data.shape[1])
        pivot = int(np.argmax(np.abs(direction)))
        if direction[pivot] < 0:
            direction = -direction
        components.append(direction)
        var_k = float(variances[k]) if k < len(variances) else 0.0
        ratios.append(var_k / total if total > 0 else 0.0)
    coords = centered @ np.stack(components).T
    return PcaMap(
        game_ids=tuple(row.game_id for row in rows),
        coordinates=tuple((float(x), float(y)) for x, y in coords),
        explained_variance_ratio=(ratios[0], ratios[1]),
        components=(tuple(map(float, components[0])), tuple(map(float, components[1]))),
    )


def distance_matrix(rows: list[CentroidRow]) -> tuple[tuple[str, ...], np.ndarray]:
    """Pairwise Euclidean distances between game centroids in 6-D."""
    if not rows:
        raise CorpusError("distance matrix needs at least 1 game")
    data = np.array([row.centroid.as_tuple() for row in rows], dtype=float)
    diff = data[:, None, :] - data[None, :, :]
    matrix = np.sqrt((diff**2).sum(axis=2))
    # Exact zeros on the diagonal and exact symmetry, not just up to rounding.
    np.fill_diagonal(matrix, 0.0)
    matrix = (matrix + matrix.T) / 2.0
    return tuple(row.game_id for row in rows), matrix


def ward_dendrogram(rows: list[CentroidRow]) -> DendrogramNode:
    """Agglomerative clustering of games under the Ward criterion.

    Merge heights are the Ward merge cost (twice the within-cluster variance
    increase), computed with Lance-Williams updates over squared Euclidean
    distances. Ties resolve to the smallest (i, j) index pair, with clusters
    indexed by creation order, so the tree is deterministic.
    """
    if len(rows) < 2:
        raise CorpusError("dendrogram needs at least 2 games")
    data = [np.array(row.centroid.as_tuple(), dtype=float) for row in rows]
    nodes: list[DendrogramNode | str] = [row.game_id for row in rows]
    sizes = [1] * len(rows)
    active = list(range(len(rows)))
    dist: dict[tuple[int, int], float] = {}
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            dist[(i, j)] = float(((data[i] - data[j]) ** 2).sum())

    def d(i: int, j: int) -> float:
        return dist[(i, j) if i < j else (j, i)]

    last_height = 0.0
    while len(active) > 1:
        best = None
        for ai, i in enumerate(active):
            for j in active[ai + 1 :]:
                cand = (d(i, j), i, j)
                if best is None or cand < best:
                    best = cand
        height, i, j = best
        height = max(height, last_height)  # guard against fp jitter
        last_height = height
        merged = len(nodes)
        nodes.append(DendrogramNode(children=(nodes[i], nodes[j]), merge_height=height))
        sizes.append(sizes[i] + sizes[j])
        for k in active:
            if k in (i, j):
                continue
            # Ward update on squared distances.
            ni, nj, nk = sizes[i], sizes[j], sizes[k]
            dist[(k, merged)] = (
                (ni + nk) * d(i, k) + (nj + nk) * d(j, k) - nk * d(i, j)
            ) / (ni + nj + nk)
        active = [k for k in active if k not in (i, j)] + [merged]
    root = nodes[active[0]]
    assert isinstance(root, DendrogramNode)
    return root


def merge_heights(node: DendrogramNode | str) -> list[float]:
    if isinstance(node, str):
        return []
    heights = []
    for child in node.children:
        heights.extend(merge_heights(child))
    heights.append(node.merge_height)
    return heights


def _mission_atoms(corpus: Corpus, level: MotifLevel) -> Iterable[tuple[str, list[str]]]:
    if level not in ("category", "action"):
        raise CorpusError(f"unknown motif level {level!r}")
    for game in corpus.games:
        for record in game.missions:
            if record.sequence is None:
                continue
            if level == "action":
                atoms = list(record.sequence.steps)
            else:
                atoms = [game.library.get(s).category for s in record.sequence.steps]
            yield game.game_id, atoms


def motif_counts(corpus: Corpus, level: MotifLevel = "category", window: int = 3) -> list[MotifCount]:
    """Support of overlapping ``window``-length runs, tallied per game.

    Windows never cross mission boundaries; sequences shorter than the
    window contribute nothing.
    """
    if window < 1:
        raise CorpusError("window must be >= 1")
    support: dict[tuple[str, tuple[str, ...]], int] = {}
    for game_id, atoms in _mission_atoms(corpus, level):
        for i in range(len(atoms) - window + 1):
            key = (game_id, tuple(atoms[i : i + window]))
            support[key] = support.get(key, 0) + 1
    return [
        MotifCount(motif=motif, game_id=game_id, support=count)
        for (game_id, motif), count in sorted(
            support.items(), key=lambda kv: (kv[0][0], -kv[1], kv[0][1])
        )
    ]


def top_motifs(counts: list[MotifCount], game_id: str, k: int = 3) -> list[MotifCount]:
    """Top-k motifs of one game by support; ties break lexicographically."""
    mine = [c for c in counts if c.game_id == game_id]
    mine.sort(key=lambda c: (-c.support, c.motif))
    return mine[:k]


def top_counts(corpus: Corpus, level: MotifLevel = "category", k: int = 5) -> dict[str, list[tuple[str, int]]]:
    """Per-game top-k step-occurrence counts of actions or categories."""
    totals: dict[str, dict[str, int]] = {game.game_id: {} for game in corpus.games}
    for game_id, atoms in _mission_atoms(corpus, level):
        bucket = totals[game_id]
        for atom in atoms:
            bucket[atom] = bucket.get(atom, 0) + 1
    out: dict[str, list[tuple[str, int]]] = {}
    for game in corpus.games:
        ranked = sorted(totals[game.game_id].items(), key=lambda kv: (-kv[1], kv[0]))
        out[game.game_id] = ranked[:k]
    return out
