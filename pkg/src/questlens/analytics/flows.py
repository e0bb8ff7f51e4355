"""Per-mission series: quality flows, raw summaries, and storyboards.

Smoothing is a display aid only. Every numeric summary elsewhere in the
package is computed from the raw per-step vectors, so changing sigma never
changes a statistic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..corpus import ActionLibrary, ActionSequence, CorpusError, DIMENSIONS

PROGRESS_POINTS = 101  # 0..100 percent, inclusive


@dataclass(frozen=True)
class QualityFlow:
    """Raw per-step series plus smoothed series on the percent grid."""

    mission_id: str
    sigma: float
    raw: dict[str, tuple[float, ...]]
    smoothed: dict[str, tuple[float, ...]]
    progress: tuple[float, ...]


@dataclass(frozen=True)
class MissionSummary:
    """Per-dimension mean and population SD over raw step vectors."""

    mission_id: str
    mean: dict[str, float]
    sd: dict[str, float]
    steps: int


@dataclass(frozen=True)
class StoryboardBox:
    """One run of consecutive steps sharing a category."""

    category: str
    actions: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.actions)


def gaussian_smooth(values: list[float] | tuple[float, ...], sigma: float) -> list[float]:
    """Discrete Gaussian smoothing in step-index units.

    Kernel std is ``sigma`` steps, truncated at 4 sigma; near the edges the
    kernel is renormalized over the indices that exist, so constants are
    preserved exactly.
    """
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    n = len(values)
    if sigma == 0 or n == 1:
        return [float(v) for v in values]
    radius = int(math.ceil(4 * sigma))
    weights = [math.exp(-(k * k) / (2 * sigma * sigma)) for k in range(-radius, radius + 1)]
    out = []
    for i in range(n):
        acc = 0.0
        norm = 0.0
        for k in range(-radius, radius + 1):
            j = i + k
            if 0 <= j < n:
                w = weights[k + radius]
                acc += w * values[j]
                norm += w
        out.append(acc / norm)
    return out


def progress_grid(points: int = PROGRESS_POINTS) -> list[float]:
    return [i / (points - 1) for i in range(points)]


def interpolate_to_grid(values: list[float], points: int = PROGRESS_POINTS) -> list[float]:
    """Linear interpolation of per-step samples onto the progress grid.

    Step i is centered at (i + 0.5) / N of mission progress; the grid is
    clamped to the first and last step values outside the sampled span.
    """
    n = len(values)
    centers = [(i + 0.5) / n for i in range(n)]
    out = []
    for p in progress_grid(points):
        if p <= centers[0]:
            out.append(values[0])
        elif p >= centers[-1]:
            out.append(values[-1])
        else:
            hi = next(idx for idx, c in enumerate(centers) if c >= p)
            lo = hi - 1
            t = (p - centers[lo]) / (centers[hi] - centers[lo])
            out.append(values[lo] * (1 - t) + values[hi] * t)
    return out


def quality_flow(
    sequence: ActionSequence,
    library: ActionLibrary,
    sigma: float = 2.0,
    mission_id: str = "",
) -> QualityFlow:
    """Six per-dimension series over normalized mission progress.

    Raw series carry one value per step; smoothed series are the Gaussian
    smoothing of the raw series, linearly interpolated onto a 101-point
    [0, 100]% grid assuming equal step durations.
    """
    actions = sequence.resolve(library)
    raw: dict[str, tuple[float, ...]] = {}
    smoothed: dict[str, tuple[float, ...]] = {}
    for dim in DIMENSIONS:
        series = [getattr(action.scores, dim) for action in actions]
        raw[dim] = tuple(series)
        smoothed[dim] = tuple(interpolate_to_grid(gaussian_smooth(series, sigma)))
    return QualityFlow(
        mission_id=mission_id,
        sigma=sigma,
        raw=raw,
        smoothed=smoothed,
        progress=tuple(progress_grid()),
    )


def mission_summary(
    sequence: ActionSequence, library: ActionLibrary, mission_id: str = ""
) -> MissionSummary:
    """Mean and population SD of each dimension over raw (unsmoothed) steps."""
    actions = sequence.resolve(library)
    if not actions:
        raise CorpusError("cannot summarize an empty sequence")
    mean: dict[str, float] = {}
    sd: dict[str, float] = {}
    for dim in DIMENSIONS:
        series = [getattr(action.scores, dim) for action in actions]
        m = sum(series) / len(series)
        mean[dim] = m
        sd[dim] = math.sqrt(sum((v - m) ** 2 for v in series) / len(series))
    return MissionSummary(mission_id=mission_id, mean=mean, sd=sd, steps=len(actions))


def storyboard(sequence: ActionSequence, library: ActionLibrary) -> list[StoryboardBox]:
    """Category chain with adjacent duplicate categories collapsed."""
    actions = sequence.resolve(library)
    boxes: list[StoryboardBox] = []
    for action in actions:
        if boxes and boxes[-1].category == action.category:
            boxes[-1] = StoryboardBox(
                category=action.category,
                actions=boxes[-1].actions + (action.name,),
            )
        else:
            boxes.append(StoryboardBox(category=action.category, actions=(action.name,)))
    return boxes
