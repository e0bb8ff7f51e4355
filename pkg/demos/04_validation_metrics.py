"""Gold-set validation statistics: alignment, pooled metrics with bootstrap
CIs, rank tests across groups, and the stratified sampling that selects
missions for annotation.

Run from the repo root:  python demos/04_validation_metrics.py
"""
import json
from pathlib import Path

from questlens import load_corpus
from questlens.evaluation import (
    align_predictions,
    holm_adjust,
    kruskal_wallis,
    load_gold_set,
    mann_whitney,
    nw_align,
    sample_counts,
    sequence_metrics,
    stratified_sample,
)

print("=== one alignment in detail ===")
report = nw_align(["A", "B", "C"], ["A", "C"])
for op in report.ops:
    print(f"  {op.kind:<12} gold={op.gold!r:<8} pred={op.pred!r}")
print(f"tp={report.tp} fp={report.fp} fn={report.fn} "
      f"edit={report.edit_distance} ned={report.ned:.3f}")

print("\n=== pooled metrics over the gold fixture ===")
gold = load_gold_set("fixtures/gold_set.json")
predictions = json.loads(Path("fixtures/predictions.json").read_text())["predictions"]
reports = align_predictions(gold, predictions)
metrics = sequence_metrics(reports, resamples=2000, seed=42)
for name in ("precision", "recall", "f1", "exact_match_rate", "mean_ned"):
    value = getattr(metrics, name)
    lo, hi = value.ci
    print(f"  {name:<18} {value.value:7.4f}   95% CI [{lo:.4f}, {hi:.4f}]")

print("\n=== per-mission F1 compared across games (rank test) ===")
per_game: dict[str, list[float]] = {}
for entry, report in zip(gold.entries, reports):
    precision = report.tp / (report.tp + report.fp) if report.tp + report.fp else 0.0
    recall = report.tp / (report.tp + report.fn) if report.tp + report.fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    per_game.setdefault(entry.mission_id.split("-")[0], []).append(f1)
groups = [per_game[g] for g in sorted(per_game)]
# pad the toy fixture so each group has two observations
groups = [g * 2 if len(g) == 1 else g for g in groups]
h, p = kruskal_wallis(groups)
print(f"  groups: { {g: len(v) for g, v in zip(sorted(per_game), groups)} }")
print(f"  H = {h:.3f}, p = {p:.4f}")

print("\n=== two-group comparison with effect size ===")
players = [68.0, 72.5, 55.0, 80.0, 62.5, 75.0, 70.0]
designers = [60.0, 57.5, 65.0, 52.5]
u, p_two, r_u = mann_whitney(players, designers)
print(f"  U = {u}, two-sided p = {p_two:.4f}, rank-biserial r = {r_u:+.3f}")
print(f"  Holm over three p-values [0.01, 0.04, 0.30]: {holm_adjust([0.01, 0.04, 0.30])}")

print("\n=== stratified sample for gold annotation ===")
corpus = load_corpus(sorted(Path("fixtures/corpus").glob("*.json")))
sample = stratified_sample(corpus, n=12, seed=42)
print(f"  type counts: {sample_counts(sample)}")
for record in sample:
    print(f"  {record.game_id:<14} {record.quest_type:<5} {record.mission_id}")
