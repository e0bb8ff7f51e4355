"""questlens: mission-design analytics over closed-vocabulary action sequences.

The package turns walkthrough text into per-game action sequences, scores
every action on six experiential dimensions (Uniqueness, Combat, Narrative,
Exploration, Problem-Solving, Emotion), and computes the per-mission and
cross-title analytics plus the validation statistics behind an interactive
designer dashboard.
"""

__version__ = "0.1.0"

from .corpus import (
    ActionDef,
    ActionLibrary,
    ActionSequence,
    Corpus,
    CorpusError,
    GameRecord,
    MissionRecord,
    QualityVector,
    SnapshotMeta,
    corpus_stats,
    load_corpus,
    load_library,
)

__all__ = [
    "ActionDef",
    "ActionLibrary",
    "ActionSequence",
    "Corpus",
    "CorpusError",
    "GameRecord",
    "MissionRecord",
    "QualityVector",
    "SnapshotMeta",
    "__version__",
    "corpus_stats",
    "load_corpus",
    "load_library",
]
