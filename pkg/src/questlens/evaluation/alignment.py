"""Global alignment of predicted vs gold action sequences and pooled metrics.

Alignment uses match +1 / mismatch -1 / gap -1 with a deterministic
traceback that prefers diagonal steps over deletions over insertions.
Token-level accounting: a match is one TP; a substitution is one FP and one
FN; an insertion (token only in the prediction) is one FP; a deletion
(token only in gold) is one FN.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

DISAGREEMENT_TAGS = ("missing", "spurious", "mislabel", "merge/split", "granularity drift")

MATCH_SCORE = 1
MISMATCH_SCORE = -1
GAP_SCORE = -1


@dataclass(frozen=True)
class AlignmentOp:
    """One traceback step: match, substitution, deletion, or insertion."""

    kind: str
    gold: str | None
    pred: str | None


@dataclass(frozen=True)
class AlignmentReport:
    """Alignment ops with the TP/FP/FN ledger and derived distances."""

    ops: tuple[AlignmentOp, ...]
    tp: int
    fp: int
    fn: int
    edit_distance: int
    ned: float
    score: int


@dataclass(frozen=True)
class MetricValue:
    value: float
    ci: tuple[float, float] | None = None


@dataclass(frozen=True)
class MetricsReport:
    """Micro-pooled precision/recall/F1 plus match-rate and edit statistics."""

    precision: MetricValue
    recall: MetricValue
    f1: MetricValue
    exact_match_rate: MetricValue
    mean_ned: MetricValue
    missions: int


def nw_align(gold: Sequence[str], pred: Sequence[str]) -> AlignmentReport:
    """Optimal global alignment of two label sequences.

    Labels are compared as exact strings. Two empty sequences align with
    zero ops and NED 0.
    """
    n, m = len(gold), len(pred)
    score = np.zeros((n + 1, m + 1), dtype=np.int64)
    score[:, 0] = GAP_SCORE * np.arange(n + 1)
    score[0, :] = GAP_SCORE * np.arange(m + 1)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            diag = score[i - 1, j - 1] + (
                MATCH_SCORE if gold[i - 1] == pred[j - 1] else MISMATCH_SCORE
            )
            up = score[i - 1, j] + GAP_SCORE
            left = score[i, j - 1] + GAP_SCORE
            score[i, j] = max(diag, up, left)

    ops: list[AlignmentOp] = []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            pair = (
                MATCH_SCORE if gold[i - 1] == pred[j - 1] else MISMATCH_SCORE
            )
            if score[i, j] == score[i - 1, j - 1] + pair:
                kind = "match" if pair == MATCH_SCORE else "substitution"
                ops.append(AlignmentOp(kind=kind, gold=gold[i - 1], pred=pred[j - 1]))
                i -= 1
                j -= 1
                continue
        if i > 0 and score[i, j] == score[i - 1, j] + GAP_SCORE:
            ops.append(AlignmentOp(kind="deletion", gold=gold[i - 1], pred=None))
            i -= 1
            continue
        ops.append(AlignmentOp(kind="insertion", gold=None, pred=pred[j - 1]))
        j -= 1
    ops.reverse()

    tp = sum(1 for op in ops if op.kind == "match")
    subs = sum(1 for op in ops if op.kind == "substitution")
    dels = sum(1 for op in ops if op.kind == "deletion")
    ins = sum(1 for op in ops if op.kind == "insertion")
    edit = subs + dels + ins
    longest = max(n, m)
    return AlignmentReport(
        ops=tuple(ops),
        tp=tp,
        fp=subs + ins,
        fn=subs + dels,
        edit_distance=edit,
        ned=(edit / longest) if longest else 0.0,
        score=int(score[n, m]),
    )


def _pooled_stats(reports: Sequence[AlignmentReport]) -> tuple[float, float, float, float, float]:
    tp = sum(r.tp for r in reports)
    fp = sum(r.fp for r in reports)
    fn = sum(r.fn for r in reports)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    exact = sum(1 for r in reports if r.edit_distance == 0) / len(reports)
    mean_ned = sum(r.ned for r in reports) / len(reports)
    return precision, recall, f1, exact, mean_ned


def sequence_metrics(
    reports: Sequence[AlignmentReport],
    resamples: int = 2000,
    seed: int = 42,
) -> MetricsReport:
    """Pool TP/FP/FN across missions and attach percentile bootstrap CIs.

    Resampling draws missions with replacement; resample ``i`` uses the
    derived seed ``seed + i`` so results do not depend on evaluation order
    or thread count.
    """
    if not reports:
        raise ValueError("sequence_metrics needs at least one alignment report")
    point = _pooled_stats(reports)
    if resamples <= 0:
        values = [MetricValue(value=v) for v in point]
        return MetricsReport(*values, missions=len(reports))
    n = len(reports)
    samples = np.empty((resamples, 5))
    for r in range(resamples):
        rng = np.random.default_rng(seed + r)
        idx = rng.integers(0, n, size=n)
        samples[r] = _pooled_stats([reports[i] for i in idx])
    lo = np.percentile(samples, 2.5, axis=0)
    hi = np.percentile(samples, 97.5, axis=0)
    values = [
        MetricValue(value=point[k], ci=(float(lo[k]), float(hi[k]))) for k in range(5)
    ]
    return MetricsReport(*values, missions=len(reports))


@dataclass(frozen=True)
class GoldEntry:
    mission_id: str
    sequence: tuple[str, ...]
    disagreement_tags: tuple[str, ...] = ()


@dataclass(frozen=True)
class GoldSet:
    """Adjudicated consensus sequences used as extraction ground truth."""

    entries: tuple[GoldEntry, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for entry in self.entries:
            if entry.mission_id in seen:
                raise ValueError(f"duplicate gold mission_id {entry.mission_id!r}")
            seen.add(entry.mission_id)

    def sequences(self) -> dict[str, tuple[str, ...]]:
        return {e.mission_id: e.sequence for e in self.entries}

    def validate_against(self, corpus) -> None:
        """Check every gold step resolves in its mission's game library."""
        for entry in self.entries:
            game, _ = corpus.find_mission(entry.mission_id)
            for step in entry.sequence:
                if step not in game.library:
                    raise ValueError(
                        f"gold step {step!r} for mission {entry.mission_id!r} is "
                        f"not in the {game.game_id!r} action library"
                    )


def load_gold_set(source: str | Path | dict) -> GoldSet:
    """Read a gold-set file: ``{"entries": [{mission_id, sequence, tags?}]}``."""
    if isinstance(source, dict):
        document = source
    else:
        document = json.loads(Path(source).read_text(encoding="utf-8"))
    entries = []
    for row in document.get("entries", []):
        tags = tuple(row.get("disagreement_tags", ()))
        for tag in tags:
            if tag not in DISAGREEMENT_TAGS:
                raise ValueError(f"unknown disagreement tag {tag!r}")
        entries.append(
            GoldEntry(
                mission_id=row["mission_id"],
                sequence=tuple(row["sequence"]),
                disagreement_tags=tags,
            )
        )
    return GoldSet(entries=tuple(entries))


def align_predictions(
    gold: GoldSet, predictions: dict[str, Iterable[str]]
) -> list[AlignmentReport]:
    """Align each prediction to its gold sequence, in gold-entry order."""
    reports = []
    for entry in gold.entries:
        if entry.mission_id not in predictions:
            raise ValueError(f"missing prediction for mission {entry.mission_id!r}")
        reports.append(nw_align(entry.sequence, list(predictions[entry.mission_id])))
    return reports
