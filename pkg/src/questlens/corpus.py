"""Domain types and on-disk format for action libraries and mission datasets.

A dataset is one JSON document per game::

    {
      "game_id": "...", "title": "...",
      "actions":  [{"name", "category", "scores": {"u","c","n","e","p","a"},
                    "description"}, ...],
      "missions": [{"mission_id", "title", "quest_type", "walkthrough_text",
                    "word_count", "snapshot": {...}, "sequence": [...]}, ...]
    }

Scores are written as decimal strings and parsed to floats; score comparisons
use a 1e-9 tolerance so round-trips are platform independent. Loaded values
are immutable after validation and safe for unrestricted concurrent reads.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Any, Iterable, Iterator

from .jsonio import canonical_dumps, content_digest, format_float

__all__ = [
    "CATEGORIES",
    "DIMENSIONS",
    "QUEST_TYPES",
    "SCORE_TOLERANCE",
    "ActionDef",
    "ActionLibrary",
    "ActionSequence",
    "Corpus",
    "CorpusError",
    "CorpusStats",
    "GameRecord",
    "MissionRecord",
    "QualityVector",
    "SnapshotMeta",
    "corpus_stats",
    "load_corpus",
    "load_library",
    "word_count",
]

# Fixed dimension order used in every serialization.
DIMENSIONS = ("u", "c", "n", "e", "p", "a")

DIMENSION_LABELS = {
    "u": "Uniqueness",
    "c": "Combat",
    "n": "Narrative",
    "e": "Exploration",
    "p": "Problem-Solving",
    "a": "Emotion",
}

# Closed canonical category set; the schema permits extension but loaders
# reject anything outside this list by default.
CATEGORIES = (
    "Traversal",
    "Combat",
    "Stealth",
    "Puzzle & Investigation",
    "Social Interaction",
    "Environmental Interaction",
    "Special Ability",
    "Gadget Deployment",
    "Ranged Interaction",
)

QUEST_TYPES = ("Main", "Side", "POI")

MIN_WORDS = 35

SCORE_TOLERANCE = 1e-9

_SHA256_RE = re.compile(r"^[0-9a-f]{64}$")


class CorpusError(ValueError):
    """Raised when a dataset document violates the schema or an invariant."""


def word_count(text: str) -> int:
    """Count maximal non-whitespace runs."""
    return len(text.split())


@dataclass(frozen=True)
class QualityVector:
    """Six experiential scores in [0, 1], ordered U, C, N, E, P, A."""

    u: float
    c: float
    n: float
    e: float
    p: float
    a: float

    def __post_init__(self) -> None:
        for dim in DIMENSIONS:
            value = getattr(self, dim)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise CorpusError(f"score {dim!r} is not a number: {value!r}")
            if not 0.0 <= float(value) <= 1.0:
                raise CorpusError(f"score {dim!r} out of [0, 1]: {value!r}")

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (self.u, self.c, self.n, self.e, self.p, self.a)

    def as_dict(self) -> dict[str, float]:
        return {dim: getattr(self, dim) for dim in DIMENSIONS}

    def isclose(self, other: "QualityVector", tolerance: float = SCORE_TOLERANCE) -> bool:
        return all(
            abs(x - y) <= tolerance for x, y in zip(self.as_tuple(), other.as_tuple())
        )

    @classmethod
    def from_mapping(cls, data: Any, where: str = "scores") -> "QualityVector":
        if not isinstance(data, dict):
            raise CorpusError(f"{where}: expected an object with keys {DIMENSIONS}")
        unknown = set(data) - set(DIMENSIONS)
        if unknown:
            raise CorpusError(f"{where}: unknown score keys {sorted(unknown)}")
        values = {}
        for dim in DIMENSIONS:
            if dim not in data:
                raise CorpusError(f"{where}: missing score {dim!r}")
            raw = data[dim]
            if isinstance(raw, str):
                try:
                    raw = float(raw)
                except ValueError as exc:
                    raise CorpusError(f"{where}: bad decimal string for {dim!r}: {data[dim]!r}") from exc
            values[dim] = float(raw)
        return cls(**values)

    def to_document(self) -> dict[str, str]:
        """Scores as decimal strings, in fixed dimension order."""
        return {dim: format_float(getattr(self, dim)) for dim in DIMENSIONS}


@dataclass(frozen=True)
class ActionDef:
    """One closed-vocabulary action with its quality scores."""

    name: str
    category: str
    scores: QualityVector
    description: str = ""

    def __post_init__(self) -> None:
        if not self.name:
            raise CorpusError("action name must be non-empty")
        if self.category not in CATEGORIES:
            raise CorpusError(
                f"action {self.name!r}: unknown category {self.category!r}"
            )


@dataclass(frozen=True)
class ActionLibrary:
    """Per-game closed vocabulary of scored actions."""

    game_id: str
    actions: tuple[ActionDef, ...]

    def __post_init__(self) -> None:
        if not self.game_id:
            raise CorpusError("library game_id must be non-empty")
        if not self.actions:
            raise CorpusError(f"library {self.game_id!r} has no actions")
        seen: set[str] = set()
        for action in self.actions:
            if action.name in seen:
                raise CorpusError(
                    f"library {self.game_id!r}: duplicate action name {action.name!r}"
                )
            seen.add(action.name)
        object.__setattr__(self, "_by_name", {a.name: a for a in self.actions})

    def __len__(self) -> int:
        return len(self.actions)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name  # type: ignore[attr-defined]

    def get(self, name: str) -> ActionDef:
        try:
            return self._by_name[name]  # type: ignore[attr-defined]
        except KeyError:
            raise CorpusError(
                f"action {name!r} is not in the {self.game_id!r} library"
            ) from None

    def names(self) -> list[str]:
        return [action.name for action in self.actions]


@dataclass(frozen=True)
class ActionSequence:
    """Ordered action names extracted from one mission."""

    steps: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.steps:
            raise CorpusError("sequence must be non-empty")
        for step in self.steps:
            if not isinstance(step, str) or not step:
                raise CorpusError(f"sequence step is not a non-empty string: {step!r}")

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[str]:
        return iter(self.steps)

    def resolve(self, library: ActionLibrary) -> tuple[ActionDef, ...]:
        return tuple(library.get(step) for step in self.steps)


@dataclass(frozen=True)
class SnapshotMeta:
    """Immutable provenance of one fetched wiki revision."""

    revision_id: int
    snapshot_url: str
    retrieved_at: str
    license: str
    html_sha256: str

    def __post_init__(self) -> None:
        if not isinstance(self.revision_id, int) or isinstance(self.revision_id, bool):
            raise CorpusError(f"revision_id must be an integer: {self.revision_id!r}")
        if "oldid" not in self.snapshot_url:
            raise CorpusError(f"snapshot_url must pin an oldid: {self.snapshot_url!r}")
        if not _SHA256_RE.fullmatch(self.html_sha256):
            raise CorpusError(
                f"html_sha256 must be 64 lowercase hex chars: {self.html_sha256!r}"
            )
        try:
            datetime.fromisoformat(self.retrieved_at.replace("Z", "+00:00"))
        except ValueError as exc:
            raise CorpusError(f"retrieved_at is not ISO-8601: {self.retrieved_at!r}") from exc


@dataclass(frozen=True)
class MissionRecord:
    """One quest: metadata, provenance, walkthrough text, extracted sequence."""

    mission_id: str
    game_id: str
    title: str
    quest_type: str
    walkthrough_text: str
    word_count: int
    snapshot: SnapshotMeta | None = None
    sequence: ActionSequence | None = None

    def __post_init__(self) -> None:
        if not self.mission_id:
            raise CorpusError("mission_id must be non-empty")
        if self.quest_type not in QUEST_TYPES:
            raise CorpusError(
                f"mission {self.mission_id!r}: quest_type must be one of "
                f"{QUEST_TYPES}, got {self.quest_type!r}"
            )
        if self.word_count < MIN_WORDS:
            raise CorpusError(
                f"mission {self.mission_id!r}: word_count {self.word_count} "
                f"below the {MIN_WORDS}-word validity threshold"
            )
        if self.walkthrough_text and word_count(self.walkthrough_text) != self.word_count:
            raise CorpusError(
                f"mission {self.mission_id!r}: word_count {self.word_count} does not "
                f"match its walkthrough text ({word_count(self.walkthrough_text)} words)"
            )

    @property
    def extracted(self) -> bool:
        return self.sequence is not None


@dataclass(frozen=True)
class GameRecord:
    """One game's validated library and missions."""

    game_id: str
    title: str
    library: ActionLibrary
    missions: tuple[MissionRecord, ...]

    def mission(self, mission_id: str) -> MissionRecord:
        for record in self.missions:
            if record.mission_id == mission_id:
                return record
        raise CorpusError(f"unknown mission {mission_id!r} in game {self.game_id!r}")


@dataclass(frozen=True)
class Corpus:
    """All loaded games, keyed by game_id; immutable after construction."""

    games: tuple[GameRecord, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for game in self.games:
            if game.game_id in seen:
                raise CorpusError(f"duplicate game_id {game.game_id!r}")
            seen.add(game.game_id)
        object.__setattr__(self, "_by_id", {g.game_id: g for g in self.games})

    def __len__(self) -> int:
        return sum(len(game.missions) for game in self.games)

    def game_ids(self) -> list[str]:
        return [game.game_id for game in self.games]

    def game(self, game_id: str) -> GameRecord:
        try:
            return self._by_id[game_id]  # type: ignore[attr-defined]
        except KeyError:
            raise CorpusError(f"unknown game_id {game_id!r}") from None

    def missions(self) -> Iterator[MissionRecord]:
        for game in self.games:
            yield from game.missions

    def find_mission(self, mission_id: str) -> tuple[GameRecord, MissionRecord]:
        for game in self.games:
            for record in game.missions:
                if record.mission_id == mission_id:
                    return game, record
        raise CorpusError(f"unknown mission {mission_id!r}")

    def subset(self, game_ids: Iterable[str]) -> "Corpus":
        """Sub-corpus restricted to the given games, preserving order."""
        wanted = list(game_ids)
        for game_id in wanted:
            self.game(game_id)
        return Corpus(tuple(g for g in self.games if g.game_id in set(wanted)))

    def digest(self) -> str:
        """Content hash of the loaded dataset; stable for a fixed corpus."""
        return content_digest([_game_document(game) for game in self.games])


# ---------------------------------------------------------------------------
# Loading


def _read_document(source: Any) -> dict:
    if isinstance(source, dict):
        return source
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, str):
        # JSON text starts with "{"; anything else is a filesystem path.
        text = source if source.lstrip().startswith("{") else Path(source).read_text(encoding="utf-8")
    else:
        raise CorpusError(f"unreadable dataset source: {source!r}")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"malformed dataset document: {exc}") from exc
    if not isinstance(document, dict):
        raise CorpusError("dataset document must be a JSON object")
    return document


def _require(document: dict, key: str, kind: type, where: str) -> Any:
    if key not in document:
        raise CorpusError(f"{where}: missing field {key!r}")
    value = document[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise CorpusError(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def _parse_actions(document: dict, game_id: str) -> ActionLibrary:
    entries = _require(document, "actions", list, f"game {game_id!r}")
    actions = []
    for entry in entries:
        if not isinstance(entry, dict):
            raise CorpusError(f"game {game_id!r}: action entries must be objects")
        name = _require(entry, "name", str, f"game {game_id!r} action")
        category = _require(entry, "category", str, f"action {name!r}")
        scores = QualityVector.from_mapping(
            entry.get("scores"), where=f"action {name!r} scores"
        )
        actions.append(
            ActionDef(
                name=name,
                category=category,
                scores=scores,
                description=str(entry.get("description", "")),
            )
        )
    return ActionLibrary(game_id=game_id, actions=tuple(actions))


def _parse_snapshot(entry: Any, mission_id: str) -> SnapshotMeta | None:
    if entry is None:
        return None
    if not isinstance(entry, dict):
        raise CorpusError(f"mission {mission_id!r}: snapshot must be an object")
    return SnapshotMeta(
        revision_id=_require(entry, "revision_id", int, f"mission {mission_id!r} snapshot"),
        snapshot_url=_require(entry, "snapshot_url", str, f"mission {mission_id!r} snapshot"),
        retrieved_at=_require(entry, "retrieved_at", str, f"mission {mission_id!r} snapshot"),
        license=_require(entry, "license", str, f"mission {mission_id!r} snapshot"),
        html_sha256=_require(entry, "html_sha256", str, f"mission {mission_id!r} snapshot"),
    )


def _parse_mission(entry: dict, game_id: str, library: ActionLibrary) -> MissionRecord:
    mission_id = _require(entry, "mission_id", str, f"game {game_id!r} mission")
    where = f"mission {mission_id!r}"
    text = _require(entry, "walkthrough_text", str, where)
    count = entry.get("word_count", word_count(text))
    sequence = None
    if entry.get("sequence") is not None:
        raw_steps = entry["sequence"]
        if not isinstance(raw_steps, list):
            raise CorpusError(f"{where}: sequence must be an array")
        sequence = ActionSequence(steps=tuple(raw_steps))
        for step in sequence:
            if step not in library:
                raise CorpusError(
                    f"{where}: step {step!r} does not resolve in the "
                    f"{game_id!r} action library"
                )
    return MissionRecord(
        mission_id=mission_id,
        game_id=game_id,
        title=_require(entry, "title", str, where),
        quest_type=_require(entry, "quest_type", str, where),
        walkthrough_text=text,
        word_count=int(count),
        snapshot=_parse_snapshot(entry.get("snapshot"), mission_id),
        sequence=sequence,
    )


def load_library(source: Any) -> ActionLibrary:
    """Load and validate the action library of one game document."""
    document = _read_document(source)
    game_id = _require(document, "game_id", str, "dataset document")
    return _parse_actions(document, game_id)


def load_corpus(sources: Any, libraries: Iterable[ActionLibrary] | None = None) -> Corpus:
    """Load game documents into a validated corpus.

    ``sources`` is one document or an iterable of documents (paths, JSON
    text, file objects, or parsed dicts). Documents without an ``actions``
    field must reference a game_id present in ``libraries``.
    """
    if isinstance(sources, (dict, str, Path)) or hasattr(sources, "read"):
        sources = [sources]
    by_game = {lib.game_id: lib for lib in libraries or ()}
    games = []
    for source in sources:
        document = _read_document(source)
        game_id = _require(document, "game_id", str, "dataset document")
        if document.get("actions"):
            library = _parse_actions(document, game_id)
        elif game_id in by_game:
            library = by_game[game_id]
        else:
            raise CorpusError(f"no action library loaded for game_id {game_id!r}")
        entries = document.get("missions", [])
        if not isinstance(entries, list):
            raise CorpusError(f"game {game_id!r}: missions must be an array")
        missions = tuple(_parse_mission(entry, game_id, library) for entry in entries)
        games.append(
            GameRecord(
                game_id=game_id,
                title=str(document.get("title", game_id)),
                library=library,
                missions=missions,
            )
        )
    return Corpus(games=tuple(games))


# ---------------------------------------------------------------------------
# Serialization


def _game_document(game: GameRecord) -> dict:
    missions = []
    for record in game.missions:
        entry: dict[str, Any] = {
            "mission_id": record.mission_id,
            "title": record.title,
            "quest_type": record.quest_type,
            "walkthrough_text": record.walkthrough_text,
            "word_count": record.word_count,
        }
        if record.snapshot is not None:
            snap = record.snapshot
            entry["snapshot"] = {
                "revision_id": snap.revision_id,
                "snapshot_url": snap.snapshot_url,
                "retrieved_at": snap.retrieved_at,
                "license": snap.license,
                "html_sha256": snap.html_sha256,
            }
        if record.sequence is not None:
            entry["sequence"] = list(record.sequence.steps)
        missions.append(entry)
    return {
        "game_id": game.game_id,
        "title": game.title,
        "actions": [
            {
                "name": action.name,
                "category": action.category,
                "scores": action.scores.to_document(),
                "description": action.description,
            }
            for action in game.library.actions
        ],
        "missions": missions,
    }


def serialize_game(game: GameRecord, *, indent: int | None = 2) -> str:
    """Render one game back to its dataset document form."""
    return canonical_dumps(_game_document(game), indent=indent)


def serialize_corpus(corpus: Corpus, *, indent: int | None = 2) -> list[str]:
    return [serialize_game(game, indent=indent) for game in corpus.games]


def _mission_vector(record: MissionRecord, library: ActionLibrary) -> dict[str, str] | None:
    """Mean of the mission's step vectors, as decimal strings."""
    if record.sequence is None:
        return None
    actions = record.sequence.resolve(library)
    means = {
        dim: sum(getattr(a.scores, dim) for a in actions) / len(actions)
        for dim in DIMENSIONS
    }
    return {dim: format_float(means[dim]) for dim in DIMENSIONS}


def export_annotations(corpus: Corpus, *, indent: int | None = 2) -> str:
    """Derived-annotation export: sequences, per-action score vectors, and
    per-mission mean vectors, with per-page attribution URLs and no
    verbatim wiki text.
    """
    games = []
    for game in corpus.games:
        games.append(
            {
                "game_id": game.game_id,
                "title": game.title,
                "actions": [
                    {
                        "name": action.name,
                        "category": action.category,
                        "scores": action.scores.to_document(),
                    }
                    for action in game.library.actions
                ],
                "missions": [
                    {
                        "mission_id": record.mission_id,
                        "title": record.title,
                        "quest_type": record.quest_type,
                        "attribution_url": (
                            record.snapshot.snapshot_url if record.snapshot else None
                        ),
                        "sequence": (
                            list(record.sequence.steps) if record.sequence else None
                        ),
                        "mission_vector": _mission_vector(record, game.library),
                    }
                    for record in game.missions
                ],
            }
        )
    return canonical_dumps({"games": games}, indent=indent)


# ---------------------------------------------------------------------------
# Statistics


@dataclass(frozen=True)
class CorpusStats:
    """Sequence-length means, overall and per quest type."""

    total_missions: int
    extracted_missions: int
    counts_by_type: dict[str, int]
    mean_steps: float | None
    mean_steps_by_type: dict[str, float]


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Arithmetic means of steps per mission; unextracted missions are skipped."""
    lengths: list[int] = []
    by_type: dict[str, list[int]] = {}
    counts: dict[str, int] = {}
    for record in corpus.missions():
        counts[record.quest_type] = counts.get(record.quest_type, 0) + 1
        if record.sequence is None:
            continue
        lengths.append(len(record.sequence))
        by_type.setdefault(record.quest_type, []).append(len(record.sequence))
    return CorpusStats(
        total_missions=len(corpus),
        extracted_missions=len(lengths),
        counts_by_type={t: counts[t] for t in QUEST_TYPES if t in counts},
        mean_steps=(sum(lengths) / len(lengths)) if lengths else None,
        mean_steps_by_type={
            t: sum(v) / len(v) for t, v in sorted(by_type.items(), key=lambda kv: QUEST_TYPES.index(kv[0]))
        },
    )
