import json
from pathlib import Path

import pytest

from questlens import load_corpus
from questlens.corpus import ActionDef, ActionLibrary, ActionSequence, QualityVector

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def corpus_paths() -> list[Path]:
    return sorted((FIXTURES / "corpus").glob("*.json"))


@pytest.fixture(scope="session")
def corpus(corpus_paths):
    return load_corpus(corpus_paths)


@pytest.fixture(scope="session")
def game_documents(corpus_paths) -> list[dict]:
    return [json.loads(path.read_text(encoding="utf-8")) for path in corpus_paths]


def make_vector(**overrides) -> QualityVector:
    values = dict(u=0.0, c=0.0, n=0.0, e=0.0, p=0.0, a=0.0)
    values.update(overrides)
    return QualityVector(**values)


def make_library(game_id: str, *actions: tuple[str, str, dict]) -> ActionLibrary:
    """actions: (name, category, score overrides)."""
    defs = tuple(
        ActionDef(name=name, category=category, scores=make_vector(**scores))
        for name, category, scores in actions
    )
    return ActionLibrary(game_id=game_id, actions=defs)


def make_sequence(*steps: str) -> ActionSequence:
    return ActionSequence(steps=tuple(steps))
