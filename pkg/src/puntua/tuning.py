"""Grid search over (t_question, t_declarative) on a development set."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from puntua.errors import ValidationError
from puntua.labels import MarkLabel, Thresholds, Utterance
from puntua.pipeline import Mode, confusion


class Objective(str, Enum):
    MICRO_F1 = "micro-f1"
    CQ_F1 = "cq-f1"


@dataclass(frozen=True)
class GridSpec:
    start: float = 0.5
    stop: float = 1.0
    step: float = 0.05

    def __post_init__(self) -> None:
        if not self.step > 0:
            raise ValidationError(f"grid step must be positive, got {self.step}")
        if self.start > self.stop:
            raise ValidationError(f"grid start {self.start} exceeds stop {self.stop}")
        if not (0.0 <= self.start and self.stop <= 1.0):
            raise ValidationError("grid must lie within [0, 1]")

    def points(self) -> list[float]:
        # The epsilon absorbs binary rounding, e.g. (1.0 - 0.5) / 0.05 = 9.999...
        n = math.floor((self.stop - self.start) / self.step + 1e-9) + 1
        return [round(self.start + k * self.step, 10) for k in range(n)]


@dataclass(frozen=True)
class GridPoint:
    thresholds: Thresholds
    micro_f1: float
    cq_f1: float

    def objective(self, objective: Objective) -> float:
        return self.micro_f1 if objective is Objective.MICRO_F1 else self.cq_f1


def _check_dev(dev: Sequence[Utterance]) -> None:
    if not dev:
        raise ValidationError("development set is empty")
    for u in dev:
        if u.acoustic is None or u.reference is None:
            raise ValidationError(f"dev utterance {u.id!r} needs acoustic and reference tracks")


def evaluate_point(dev: Sequence[Utterance], th: Thresholds) -> GridPoint:
    conf, _ = confusion(dev, Mode.HYBRID, th)
    return GridPoint(th, conf.micro_f1(), conf.f1(MarkLabel.CLOSE_QUESTION))


def grid_surface(dev: Sequence[Utterance], grid: GridSpec = GridSpec()) -> list[GridPoint]:
    """Score the full pipeline at every grid point, t_question-major."""
    _check_dev(dev)
    axis = grid.points()
    return [evaluate_point(dev, Thresholds(tq, td)) for tq in axis for td in axis]


def best_point(surface: Sequence[GridPoint], objective: Objective) -> GridPoint:
    """Highest objective; ties go to higher ``?`` F1, then lower t_question, then lower t_declarative."""
    return max(
        surface,
        key=lambda p: (
            p.objective(objective),
            p.cq_f1,
            -p.thresholds.t_question,
            -p.thresholds.t_declarative,
        ),
    )


def tune_thresholds(
    dev: Sequence[Utterance],
    grid: GridSpec = GridSpec(),
    objective: Objective = Objective.MICRO_F1,
) -> tuple[Thresholds, float]:
    """Pick thresholds that maximise the post-repair objective on *dev*.

    The returned objective value is a fraction in [0, 1].
    """
    best = best_point(grid_surface(dev, grid), objective)
    return best.thresholds, best.objective(objective)
