"""Scoring of the standardized study instruments (SUS, UEQ-S, SEQ)."""
from __future__ import annotations

from typing import Sequence


def sus_score(responses: Sequence[int]) -> float:
    """Usability score on the canonical 0-100 scale.

    Ten items on a 1-5 scale; odd items contribute (x - 1), even items
    (5 - x), and the sum is scaled by 2.5.
    """
    if len(responses) != 10:
        raise ValueError("usability scale takes exactly 10 responses")
    total = 0
    for idx, value in enumerate(responses, start=1):
        if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 5:
            raise ValueError(f"item {idx} must be an integer in 1..5, got {value!r}")
        total += (value - 1) if idx % 2 == 1 else (5 - value)
    return 2.5 * total


def ueqs_scores(responses: Sequence[float]) -> tuple[float, float]:
    """Short user-experience questionnaire: (pragmatic, hedonic) means.

    Eight items rated from -3 to +3; items 1-4 form the pragmatic scale and
    items 5-8 the hedonic scale.
    """
    if len(responses) != 8:
        raise ValueError("short UEQ takes exactly 8 responses")
    for idx, value in enumerate(responses, start=1):
        if not -3.0 <= float(value) <= 3.0:
            raise ValueError(f"item {idx} must be in -3..3, got {value!r}")
    pragmatic = sum(float(v) for v in responses[:4]) / 4.0
    hedonic = sum(float(v) for v in responses[4:]) / 4.0
    return pragmatic, hedonic


def seq_score(response: int) -> int:
    """Single-ease question: pass the 1-7 rating through after validation."""
    if not isinstance(response, int) or isinstance(response, bool) or not 1 <= response <= 7:
        raise ValueError(f"single-ease response must be an integer in 1..7, got {response!r}")
    return response
