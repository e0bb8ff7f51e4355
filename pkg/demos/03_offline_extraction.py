"""The ingest-and-extract pipeline end to end, fully offline.

Slug candidates, walkthrough parsing, the 35-word admission gate, prompt
construction, and sequence extraction against the deterministic stub
backend.

Run from the repo root:  python demos/03_offline_extraction.py
"""
from pathlib import Path

from questlens import load_corpus
from questlens.extract import build_prompt, extract_sequence, stub_backend
from questlens.ingest import admit_mission, generate_slug_candidates, parse_walkthrough

print("=== slug candidates for a mission title ===")
for candidate in generate_slug_candidates("Gangs of Novigrad"):
    print(f"  {candidate.variant_kind:<14} {candidate.slug}")

print("\n=== walkthrough extraction from page HTML ===")
page = b"""
<html><body>
<div class="infobox"><p>Type: Side</p></div>
<h2>Description</h2><p>A short teaser.</p>
<h2>Walkthrough</h2>
<p>Meet the harbor broker at dawn and haggle for the manifest.
Then glide across the rooftops to the crane, winch yourself up,
splice the dockside terminal, and slip out before the patrol turns.
Stay low on the way back and call it in.</p>
</body></html>
"""
parsed = parse_walkthrough(page)
print(f"section used: {parsed.section}")
print(f"text: {parsed.text[:90]}...")

outcome = admit_mission(parsed.text, "The Quay Job", "Side", None, game_id="neon-harbor")
if hasattr(outcome, "word_count"):
    print(f"admitted with {outcome.word_count} words")
else:
    print(f"rejected: {outcome.reason}")

corpus = load_corpus(sorted(Path("fixtures/corpus").glob("*.json")))
game = corpus.game("neon-harbor")

print("\n=== prompt for the completion backend ===")
bundle = build_prompt(game.library, parsed.text)
print("system:", bundle.system_message[:72], "...")
print("user:", bundle.user_message[:110].replace("\n", " | "), "...")

print("\n=== extraction via the deterministic stub backend ===")
mission = game.mission("nh-s3")  # shipped unextracted
backend = stub_backend(game.library)
result = extract_sequence(mission, game.library, backend, sleep=lambda s: None)
print(f"status: {result.status}, attempts: {result.attempts}")
if result.sequence:
    print("steps:", " -> ".join(result.sequence.steps))
