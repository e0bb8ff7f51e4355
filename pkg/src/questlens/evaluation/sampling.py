"""Stratified mission sampling for gold-set annotation.

Strata are (game, quest type) cells over extracted missions. Every stratum
receives at least one slot when the budget allows; the remainder is spread
proportionally to stratum size by largest remainder, capped at stratum
size. Selection shuffles each stratum with NumPy's seeded PCG64 generator,
so a fixed (corpus, n, seed) always yields the same sample.
"""
from __future__ import annotations

import numpy as np

from ..corpus import Corpus, MissionRecord, QUEST_TYPES


def _strata(corpus: Corpus) -> dict[tuple[str, str], list[MissionRecord]]:
    cells: dict[tuple[str, str], list[MissionRecord]] = {}
    for game in corpus.games:
        for record in game.missions:
            if record.sequence is None:
                continue
            cells.setdefault((game.game_id, record.quest_type), []).append(record)
    ordered = {}
    for game in corpus.games:
        for quest_type in QUEST_TYPES:
            key = (game.game_id, quest_type)
            if key in cells:
                ordered[key] = sorted(cells[key], key=lambda m: m.mission_id)
    return ordered


def _largest_remainder(shares: list[float], total: int, caps: list[int]) -> list[int]:
    """Integer apportionment of ``total`` by largest remainder, under caps."""
    quotas = [min(int(share), cap) for share, cap in zip(shares, caps)]
    remaining = total - sum(quotas)
    order = sorted(
        range(len(shares)),
        key=lambda i: (-(shares[i] - int(shares[i])), i),
    )
    while remaining > 0:
        progress = False
        for i in order:
            if remaining == 0:
                break
            if quotas[i] < caps[i]:
                quotas[i] += 1
                remaining -= 1
                progress = True
        if not progress:
            raise ValueError("sample size exceeds available missions")
    return quotas


def stratified_sample(corpus: Corpus, n: int = 80, seed: int = 42) -> list[MissionRecord]:
    """Deterministic stratified sample of n extracted missions.

    Strata missing for a game simply receive no quota; their share flows to
    the remaining strata through the proportional stage.
    """
    cells = _strata(corpus)
    sizes = [len(records) for records in cells.values()]
    available = sum(sizes)
    if n > available:
        raise ValueError(f"sample size {n} exceeds the {available} extracted missions")
    if n <= 0:
        raise ValueError("sample size must be positive")

    count = len(cells)
    if n >= count:
        base = [1 if size >= 1 else 0 for size in sizes]
        leftover = n - sum(base)
        caps = [size - b for size, b in zip(sizes, base)]
        weight = sum(size - 1 for size in sizes)
        if leftover and weight:
            shares = [leftover * (size - 1) / weight for size in sizes]
            extra = _largest_remainder(shares, leftover, caps)
        elif leftover:
            extra = _largest_remainder([0.0] * count, leftover, caps)
        else:
            extra = [0] * count
        quotas = [b + e for b, e in zip(base, extra)]
    else:
        shares = [n * size / available for size in sizes]
        quotas = _largest_remainder(shares, n, sizes)

    rng = np.random.default_rng(seed)
    sample: list[MissionRecord] = []
    for (quota, records) in zip(quotas, cells.values()):
        order = rng.permutation(len(records))
        sample.extend(records[i] for i in order[:quota])
    return sample


def sample_counts(sample: list[MissionRecord]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for record in sample:
        counts[record.quest_type] = counts.get(record.quest_type, 0) + 1
    return {t: counts[t] for t in QUEST_TYPES if t in counts}
