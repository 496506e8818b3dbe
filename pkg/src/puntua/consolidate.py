"""Threshold-based fusion of acoustic and lexical punctuation predictions.

The acoustic channel (the ASR decoder) only ever votes on closing question
marks. When it disagrees with the lexical model, the lexical label survives
only if its confidence is strictly above the relevant threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from puntua.errors import StructuralError, ValidationError
from puntua.labels import (
    AcousticPrediction,
    MarkLabel,
    Thresholds,
    TokenPrediction,
    Utterance,
)

C_Q = MarkLabel.CLOSE_QUESTION
_DECLARATIVE = (MarkLabel.PERIOD, MarkLabel.COMMA)


class Source(str, Enum):
    LEXICAL_KEPT = "LEXICAL_KEPT"
    ACOUSTIC_OVERRIDE = "ACOUSTIC_OVERRIDE"
    DEMOTED_TO_PERIOD = "DEMOTED_TO_PERIOD"


@dataclass(frozen=True, slots=True)
class ConsolidationOutcome:
    trail: MarkLabel
    source: Source


def _require_prob(pred_l: TokenPrediction) -> float:
    if pred_l.prob is None:
        raise ValidationError(
            f"lexical prediction {pred_l.trail} conflicts with the acoustic channel "
            "but carries no probability"
        )
    return pred_l.prob


def consolidate_token(
    pred_a: AcousticPrediction, pred_l: TokenPrediction, th: Thresholds
) -> ConsolidationOutcome:
    """Resolve the trail slot of one token.

    Comparisons are inclusive: a lexical probability equal to the threshold
    loses the conflict.
    """
    acoustic_question = pred_a.trail is C_Q
    if acoustic_question and pred_l.trail in _DECLARATIVE:
        if _require_prob(pred_l) <= th.t_declarative:
            return ConsolidationOutcome(C_Q, Source.ACOUSTIC_OVERRIDE)
        return ConsolidationOutcome(pred_l.trail, Source.LEXICAL_KEPT)
    if not acoustic_question and pred_l.trail is C_Q:
        if _require_prob(pred_l) <= th.t_question:
            return ConsolidationOutcome(MarkLabel.PERIOD, Source.DEMOTED_TO_PERIOD)
        return ConsolidationOutcome(C_Q, Source.LEXICAL_KEPT)
    # Includes acoustic C_Q against lexical NONE: the acoustic vote is dropped.
    return ConsolidationOutcome(pred_l.trail, Source.LEXICAL_KEPT)


def consolidate_labels(
    acoustic: Sequence[AcousticPrediction],
    lexical: Sequence[TokenPrediction],
    th: Thresholds,
) -> list[TokenPrediction]:
    if len(acoustic) != len(lexical):
        raise StructuralError(f"{len(acoustic)} acoustic labels but {len(lexical)} lexical labels")
    out = []
    for a, l in zip(acoustic, lexical):
        outcome = consolidate_token(a, l, th)
        out.append(TokenPrediction(l.lead, outcome.trail, l.prob))
    return out


def consolidate_sequence(u: Utterance, th: Thresholds) -> list[TokenPrediction]:
    """Apply :func:`consolidate_token` across an utterance.

    Lead slots and probabilities are carried over from the lexical track.
    """
    if u.acoustic is None:
        raise ValidationError(f"utterance {u.id!r} has no acoustic track")
    return consolidate_labels(u.acoustic, u.lexical, th)
