"""Deterministic rule-based stand-in for the lexical punctuation model.

It exists so the full pipeline can run without a trained model. The cue
lists are deliberately crude.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from puntua.errors import ValidationError
from puntua.labels import MarkLabel, TokenPrediction

DEFAULT_CUES = frozenset(
    "qué que cómo como cuándo cuando dónde donde cuál cual quién quien por".split()
)
DEFAULT_MARKERS = frozenset("okey bueno pues entonces".split())


@dataclass(frozen=True)
class RuleTable:
    interrogative_cues: frozenset[str] = DEFAULT_CUES
    discourse_markers: frozenset[str] = DEFAULT_MARKERS
    cue_question_prob: float = 0.90
    default_period_prob: float = 0.80
    marker_comma_prob: float = 0.85

    def __post_init__(self) -> None:
        for name in ("cue_question_prob", "default_period_prob", "marker_comma_prob"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name}={value} outside [0, 1]")
        object.__setattr__(self, "interrogative_cues", frozenset(self.interrogative_cues))
        object.__setattr__(self, "discourse_markers", frozenset(self.discourse_markers))


def rule_lexical_predict(words: Sequence[str], rules: RuleTable = RuleTable()) -> list[TokenPrediction]:
    if not words:
        raise ValidationError("cannot predict punctuation for an empty utterance")
    lowered = [w.lower() for w in words]
    out = []
    for w in lowered[:-1]:
        if w in rules.discourse_markers:
            out.append(TokenPrediction(MarkLabel.NONE, MarkLabel.COMMA, rules.marker_comma_prob))
        else:
            out.append(TokenPrediction(MarkLabel.NONE, MarkLabel.NONE, 1.0))
    if any(w in rules.interrogative_cues for w in lowered):
        out.append(TokenPrediction(MarkLabel.NONE, MarkLabel.CLOSE_QUESTION, rules.cue_question_prob))
    else:
        out.append(TokenPrediction(MarkLabel.NONE, MarkLabel.PERIOD, rules.default_period_prob))
    return out
