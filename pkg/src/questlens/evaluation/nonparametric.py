"""Rank-based group tests: Kruskal-Wallis, Holm correction, Mann-Whitney.

Conventions pinned for reproducibility: midranks for ties, chi-square
approximation for H, exact Mann-Whitney enumeration only for small
tie-free samples (n1*n2 <= 400), otherwise a tie-corrected normal
approximation without continuity correction.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import chi2, norm

EXACT_LIMIT = 400


def _midranks(values: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Average ranks (1-based) and the sizes of tie groups."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=float)
    ties = []
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        ties.append(j - i + 1)
        i = j + 1
    return ranks, ties


def kruskal_wallis(groups: Sequence[Sequence[float]]) -> tuple[float, float]:
    """Rank-based H with tie correction; p from chi-square with k-1 df."""
    if len(groups) < 2:
        raise ValueError("kruskal_wallis needs at least two groups")
    if any(len(g) == 0 for g in groups):
        raise ValueError("kruskal_wallis groups must be non-empty")
    pooled = np.concatenate([np.asarray(g, dtype=float) for g in groups])
    total = len(pooled)
    if total < 3:
        raise ValueError("kruskal_wallis needs at least 3 observations")
    ranks, ties = _midranks(pooled)
    correction = 1.0 - sum(t**3 - t for t in ties) / (total**3 - total)
    if correction == 0.0:  # every value identical
        return 0.0, 1.0
    h = 0.0
    start = 0
    for group in groups:
        size = len(group)
        rank_sum = float(ranks[start : start + size].sum())
        h += rank_sum**2 / size
        start += size
    h = (12.0 / (total * (total + 1))) * h - 3 * (total + 1)
    h /= correction
    h = max(h, 0.0)
    p = float(chi2.sf(h, df=len(groups) - 1))
    return h, p


def holm_adjust(pvals: Sequence[float]) -> list[float]:
    """Step-down Holm adjustment with monotonicity, capped at 1."""
    for p in pvals:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p-value out of [0, 1]: {p!r}")
    m = len(pvals)
    order = sorted(range(m), key=lambda i: pvals[i])
    adjusted = [0.0] * m
    running = 0.0
    for position, idx in enumerate(order):
        value = min(1.0, (m - position) * pvals[idx])
        running = max(running, value)
        adjusted[idx] = running
    return adjusted


def _exact_u_counts(n1: int, n2: int) -> np.ndarray:
    """Tie-free null distribution of U: counts[u] over u in [0, n1*n2].

    Standard recurrence c(u; m, n) = c(u - n; m - 1, n) + c(u; m, n - 1):
    the largest observation either comes from the first sample (beating all
    n second-sample values) or from the second (beating none).
    """
    max_u = n1 * n2
    rows = np.zeros((n1 + 1, max_u + 1))
    rows[:, 0] = 1.0  # n = 0 base: only u = 0 is reachable
    for n in range(1, n2 + 1):
        for m in range(1, n1 + 1):
            shifted = np.zeros(max_u + 1)
            shifted[n:] = rows[m - 1, : max_u + 1 - n]
            rows[m] = shifted + rows[m]
    return rows[n1]


def mann_whitney(a: Sequence[float], b: Sequence[float]) -> tuple[float, float, float]:
    """U for the first sample, two-sided p, and rank-biserial correlation.

    r_U = 1 - 2U / (n1*n2), in [-1, 1], antisymmetric in the samples.
    """
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if len(x) == 0 or len(y) == 0:
        raise ValueError("mann_whitney samples must be non-empty")
    n1, n2 = len(x), len(y)
    pooled = np.concatenate([x, y])
    ranks, ties = _midranks(pooled)
    r1 = float(ranks[:n1].sum())
    u = r1 - n1 * (n1 + 1) / 2
    r_u = 1.0 - 2.0 * u / (n1 * n2)

    has_ties = any(t > 1 for t in ties)
    if not has_ties and n1 * n2 <= EXACT_LIMIT:
        counts = _exact_u_counts(n1, n2)
        total = counts.sum()
        k = int(round(u))
        p_low = counts[: k + 1].sum() / total
        p_high = counts[k:].sum() / total
        p = min(1.0, 2.0 * min(p_low, p_high))
        return u, float(p), float(r_u)

    total = n1 + n2
    mean = n1 * n2 / 2.0
    tie_term = sum(t**3 - t for t in ties) / (total * (total - 1)) if total > 1 else 0.0
    variance = n1 * n2 / 12.0 * ((total + 1) - tie_term)
    if variance <= 0:  # all values tied
        return u, 1.0, float(r_u)
    z = (u - mean) / np.sqrt(variance)
    p = float(min(1.0, 2.0 * norm.sf(abs(z))))
    return u, p, float(r_u)


def rank_biserial(u: float, n1: int, n2: int) -> float:
    """Effect size from a U statistic alone."""
    if n1 <= 0 or n2 <= 0:
        raise ValueError("sample sizes must be positive")
    return 1.0 - 2.0 * u / (n1 * n2)


@dataclass(frozen=True)
class BootstrapCI:
    lo: float
    hi: float
    resamples: int


def bootstrap_ci(
    values: Sequence[float],
    statistic,
    resamples: int = 2000,
    seed: int = 42,
    level: float = 0.95,
) -> BootstrapCI:
    """Percentile bootstrap CI; resample i uses derived seed ``seed + i``."""
    data = list(values)
    if not data:
        raise ValueError("bootstrap_ci needs data")
    n = len(data)
    stats = np.empty(resamples)
    for r in range(resamples):
        rng = np.random.default_rng(seed + r)
        idx = rng.integers(0, n, size=n)
        stats[r] = statistic([data[i] for i in idx])
    tail = (1.0 - level) / 2.0 * 100
    return BootstrapCI(
        lo=float(np.percentile(stats, tail)),
        hi=float(np.percentile(stats, 100 - tail)),
        resamples=resamples,
    )
