"""Load the demo corpus and read one mission the way the Browse view does.

Run from the repo root:  python demos/01_corpus_and_flows.py
"""
from pathlib import Path

from questlens import corpus_stats, load_corpus
from questlens.analytics import mission_summary, quality_flow, storyboard
from questlens.corpus import DIMENSION_LABELS, DIMENSIONS

corpus = load_corpus(sorted(Path("fixtures/corpus").glob("*.json")))

stats = corpus_stats(corpus)
print(f"corpus: {len(corpus.games)} games, {stats.total_missions} missions "
      f"({stats.extracted_missions} with extracted sequences)")
print(f"missions by type: {stats.counts_by_type}")
print(f"mean steps per mission: {stats.mean_steps:.2f}")
for quest_type, mean in stats.mean_steps_by_type.items():
    print(f"  {quest_type:<5} {mean:.2f}")

# Pick one mission and walk through the per-mission views.
game = corpus.game("aurora-fall")
mission = game.mission("af-m2")
print(f"\n=== {mission.title} ({mission.quest_type}, {len(mission.sequence)} steps) ===")
print("sequence:", " -> ".join(mission.sequence.steps))

flow = quality_flow(mission.sequence, game.library, sigma=2.0, mission_id=mission.mission_id)
print("\nraw per-step series (one row per dimension):")
for dim in DIMENSIONS:
    cells = " ".join(f"{v:.2f}" for v in flow.raw[dim])
    print(f"  {DIMENSION_LABELS[dim]:<16} {cells}")

print("\nsmoothed flow at 0/25/50/75/100% progress (sigma=2, display only):")
for dim in DIMENSIONS:
    series = flow.smoothed[dim]
    picks = [series[i] for i in (0, 25, 50, 75, 100)]
    print(f"  {DIMENSION_LABELS[dim]:<16} " + " ".join(f"{v:.3f}" for v in picks))

summary = mission_summary(mission.sequence, game.library)
print("\nraw summary (mean +/- population SD):")
for dim in DIMENSIONS:
    print(f"  {DIMENSION_LABELS[dim]:<16} {summary.mean[dim]:.3f} +/- {summary.sd[dim]:.3f}")

print("\nstoryboard (adjacent categories collapsed):")
for box in storyboard(mission.sequence, game.library):
    print(f"  [{box.category}] x{box.length}: {', '.join(box.actions)}")
