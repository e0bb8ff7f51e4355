"""Two-rater agreement on discretized quality scores.

Scores live on the five-point grid {0, 0.25, 0.5, 0.75, 1}. Agreement is
summarized with quadratic-weighted Cohen's kappa (per-rater marginals),
exact and off-by-one rates, mean absolute difference on the 0-1 scale, and
per-item maximum step differences on the 0-4 ordinal grid.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Sequence

import numpy as np
from scipy.stats import spearmanr

from ..corpus import DIMENSIONS

GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
LEVELS = len(GRID)
STEP = 0.25

Pooling = Literal["pooled", "per-dimension"]


def _level(value: float) -> int:
    for idx, grid_value in enumerate(GRID):
        if abs(value - grid_value) < 1e-9:
            return idx
    raise ValueError(f"score {value!r} is not on the 5-point grid {GRID}")


@dataclass(frozen=True)
class RatingGrid:
    """Per-item, per-dimension scores from two raters."""

    items: tuple[str, ...]
    rater_a: tuple[tuple[float, ...], ...]  # item -> six scores
    rater_b: tuple[tuple[float, ...], ...]
    dimensions: tuple[str, ...] = DIMENSIONS

    def __post_init__(self) -> None:
        if len(self.items) < 2:
            raise ValueError("rating grid needs at least 2 items")
        if len(set(self.items)) != len(self.items):
            raise ValueError("rating grid item ids must be unique")
        for rater in (self.rater_a, self.rater_b):
            if len(rater) != len(self.items):
                raise ValueError("rater score rows must match item count")
            for row in rater:
                if len(row) != len(self.dimensions):
                    raise ValueError("each item needs one score per dimension")
                for value in row:
                    _level(value)  # validates grid membership

    def pairs(self, dimension: str | None = None) -> list[tuple[float, float]]:
        """Rater pairs, pooled over all cells or restricted to one dimension."""
        if dimension is None:
            dims = range(len(self.dimensions))
        else:
            dims = [self.dimensions.index(dimension)]
        out = []
        for item_idx in range(len(self.items)):
            for d in dims:
                out.append((self.rater_a[item_idx][d], self.rater_b[item_idx][d]))
        return out


def load_rating_grid(source: str | Path | dict) -> RatingGrid:
    """Read a grid file: ``{"items": [{item, a: {u..a}, b: {u..a}}, ...]}``."""
    if isinstance(source, dict):
        document = source
    else:
        document = json.loads(Path(source).read_text(encoding="utf-8"))
    items, rows_a, rows_b = [], [], []
    for row in document["items"]:
        items.append(row["item"])
        rows_a.append(tuple(float(row["a"][d]) for d in DIMENSIONS))
        rows_b.append(tuple(float(row["b"][d]) for d in DIMENSIONS))
    return RatingGrid(items=tuple(items), rater_a=tuple(rows_a), rater_b=tuple(rows_b))


@dataclass(frozen=True)
class KappaResult:
    value: float | None
    ci: tuple[float, float] | None
    degenerate: bool
    pairs: int


def _kappa_from_pairs(pairs: Sequence[tuple[float, float]]) -> float | None:
    """Quadratic-weighted Cohen's kappa; None when marginals are degenerate."""
    observed = np.zeros((LEVELS, LEVELS))
    for a, b in pairs:
        observed[_level(a), _level(b)] += 1
    n = observed.sum()
    marginal_a = observed.sum(axis=1)
    marginal_b = observed.sum(axis=0)
    if (marginal_a > 0).sum() < 2 or (marginal_b > 0).sum() < 2:
        return None  # a rater used a single level only
    expected = np.outer(marginal_a, marginal_b) / n
    idx = np.arange(LEVELS)
    penalty = (idx[:, None] - idx[None, :]) ** 2
    return float(1.0 - (observed * penalty).sum() / (expected * penalty).sum())


def _item_codes(grid: RatingGrid, dimension: str | None) -> np.ndarray:
    """Per item, the flattened (a_level * 5 + b_level) codes, shape (n, d)."""
    if dimension is None:
        dims = list(range(len(grid.dimensions)))
    else:
        dims = [grid.dimensions.index(dimension)]
    codes = np.empty((len(grid.items), len(dims)), dtype=np.int64)
    for i in range(len(grid.items)):
        for out_j, d in enumerate(dims):
            codes[i, out_j] = LEVELS * _level(grid.rater_a[i][d]) + _level(grid.rater_b[i][d])
    return codes


def _bootstrap_kappa_ci(
    codes: np.ndarray, resamples: int, seed: int
) -> tuple[float, float] | None:
    """Percentile bootstrap over items; resample i uses seed ``seed + i``.

    Vectorized: each resample's 5x5 contingency comes from one bincount
    over offset codes; degenerate resamples (a rater collapses to one
    level) are skipped.
    """
    n_items, width = codes.shape
    idx = np.empty((resamples, n_items), dtype=np.int64)
    for r in range(resamples):
        idx[r] = np.random.default_rng(seed + r).integers(0, n_items, size=n_items)
    sampled = codes[idx].reshape(resamples, n_items * width)
    offsets = (np.arange(resamples) * LEVELS * LEVELS)[:, None]
    flat = (sampled + offsets).ravel()
    counts = np.bincount(flat, minlength=resamples * LEVELS * LEVELS)
    observed = counts.reshape(resamples, LEVELS, LEVELS).astype(float)
    marginal_a = observed.sum(axis=2)
    marginal_b = observed.sum(axis=1)
    pairs = n_items * width
    expected = np.einsum("ri,rj->rij", marginal_a, marginal_b) / pairs
    grid_idx = np.arange(LEVELS)
    penalty = (grid_idx[:, None] - grid_idx[None, :]) ** 2
    num = (observed * penalty).sum(axis=(1, 2))
    den = (expected * penalty).sum(axis=(1, 2))
    valid = (
        ((marginal_a > 0).sum(axis=1) >= 2)
        & ((marginal_b > 0).sum(axis=1) >= 2)
        & (den > 0)
    )
    if not valid.any():
        return None
    stats = 1.0 - num[valid] / den[valid]
    return (float(np.percentile(stats, 2.5)), float(np.percentile(stats, 97.5)))


def weighted_kappa(
    grid: RatingGrid,
    pooling: Pooling = "pooled",
    dimension: str | None = None,
    resamples: int = 2000,
    seed: int = 42,
) -> KappaResult:
    """Kappa for the pooled grid or one dimension, with a bootstrap CI.

    The CI is a percentile bootstrap over items (2.5/97.5), resample ``i``
    seeded with ``seed + i``; degenerate resamples are skipped.
    """
    if pooling == "per-dimension":
        if dimension is None:
            raise ValueError("per-dimension pooling needs a dimension")
    elif dimension is not None:
        raise ValueError("pooled kappa takes no dimension")
    point = _kappa_from_pairs(grid.pairs(dimension))
    if point is None:
        return KappaResult(value=None, ci=None, degenerate=True, pairs=len(grid.pairs(dimension)))
    ci = None
    if resamples > 0:
        ci = _bootstrap_kappa_ci(_item_codes(grid, dimension), resamples, seed)
    return KappaResult(value=point, ci=ci, degenerate=False, pairs=len(grid.pairs(dimension)))


def kappa_by_dimension(
    grid: RatingGrid, resamples: int = 2000, seed: int = 42
) -> dict[str, KappaResult]:
    return {
        dim: weighted_kappa(grid, "per-dimension", dim, resamples=resamples, seed=seed)
        for dim in grid.dimensions
    }


@dataclass(frozen=True)
class AgreementStats:
    exact_rate: float
    off_by_one_rate: float
    mad: float


def agreement_stats(grid: RatingGrid, dimension: str | None = None) -> AgreementStats:
    """Exact and off-by-one cell rates plus mean |a - b| on the 0-1 scale."""
    pairs = grid.pairs(dimension)
    exact = sum(1 for a, b in pairs if _level(a) == _level(b))
    off_one = sum(1 for a, b in pairs if abs(_level(a) - _level(b)) == 1)
    mad = sum(abs(a - b) for a, b in pairs) / len(pairs)
    return AgreementStats(
        exact_rate=exact / len(pairs),
        off_by_one_rate=off_one / len(pairs),
        mad=mad,
    )


def max_step_delta(grid: RatingGrid) -> dict[str, int]:
    """Per item, the largest |a - b| in grid steps across the six dimensions."""
    out = {}
    for idx, item in enumerate(grid.items):
        out[item] = max(
            abs(_level(a) - _level(b))
            for a, b in zip(grid.rater_a[idx], grid.rater_b[idx])
        )
    return out


def spearman_rho(grid: RatingGrid, dimension: str | None = None) -> float:
    """Spearman rank correlation over the rater pairs (optional helper)."""
    pairs = grid.pairs(dimension)
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    return float(spearmanr(a, b).statistic)
