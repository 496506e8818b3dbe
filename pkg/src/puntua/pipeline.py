"""Pipeline order: lexical + acoustic -> thresholding -> question-mark repair -> render."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from puntua.align import align_tokens, transfer_marks
from puntua.consolidate import consolidate_sequence
from puntua.errors import ValidationError
from puntua.labels import MARKS, MarkLabel, Thresholds, TokenPrediction, Utterance, attach_marks
from puntua.metrics import EvalReport, MarkConfusion, score_marks, wer_breakdown
from puntua.repair import apply_heuristics

log = logging.getLogger(__name__)


class Mode(str, Enum):
    LEXICAL = "lexical"
    ACOUSTIC = "acoustic"
    HYBRID = "hybrid"


@dataclass(frozen=True)
class StageTrace:
    """Label tracks after each pipeline stage, for debugging."""

    lexical: list[TokenPrediction]
    consolidated: list[TokenPrediction]
    repaired: list[TokenPrediction]
    fallback: bool = False


def run_stages(u: Utterance, th: Thresholds, lexical_only: bool = False) -> StageTrace:
    lexical = list(u.lexical)
    fallback = False
    if lexical_only:
        consolidated = lexical
    elif u.acoustic is None:
        log.warning("utterance %s has no acoustic track; using lexical prediction only", u.id)
        consolidated = lexical
        fallback = True
    else:
        consolidated = consolidate_sequence(u, th)
    return StageTrace(lexical, consolidated, apply_heuristics(consolidated), fallback)


def restore_utterance(u: Utterance, th: Thresholds, lexical_only: bool = False) -> str:
    return attach_marks(u.words, run_stages(u, th, lexical_only).repaired)


def predicted_labels(u: Utterance, mode: Mode, th: Thresholds) -> tuple[list[TokenPrediction], bool]:
    """Labels on the hypothesis words for *mode*, plus whether a fallback happened."""
    if mode is Mode.ACOUSTIC:
        if u.acoustic is None:
            raise ValidationError(f"utterance {u.id!r} has no acoustic track")
        return [a.as_token() for a in u.acoustic], False
    trace = run_stages(u, th, lexical_only=mode is Mode.LEXICAL)
    return trace.repaired, trace.fallback


def on_reference(u: Utterance, labels: Sequence[TokenPrediction]) -> list[TokenPrediction]:
    """Move hypothesis-side labels onto reference words, aligning only if the words differ."""
    if not u.words_differ:
        return [t.without_prob() for t in labels]
    script = align_tokens(u.words, u.reference_words)
    return transfer_marks(labels, script, len(u.reference_words))


def mode_marks(mode: Mode) -> tuple[MarkLabel, ...]:
    return (MarkLabel.CLOSE_QUESTION,) if mode is Mode.ACOUSTIC else MARKS


def confusion(utterances: Sequence[Utterance], mode: Mode, th: Thresholds) -> tuple[MarkConfusion, int]:
    preds, refs = [], []
    fallbacks = 0
    for u in utterances:
        if u.reference is None:
            raise ValidationError(f"utterance {u.id!r} has no reference track")
        labels, fell_back = predicted_labels(u, mode, th)
        fallbacks += fell_back
        preds.append(on_reference(u, labels))
        refs.append(u.reference)
    return score_marks(preds, refs, mode_marks(mode)), fallbacks


def evaluate(utterances: Sequence[Utterance], mode: Mode, th: Thresholds = Thresholds()) -> EvalReport:
    if not utterances:
        raise ValidationError("nothing to evaluate")
    conf, fallbacks = confusion(utterances, mode, th)
    try:
        wer = wer_breakdown([u.words for u in utterances], [u.reference_words for u in utterances]).wer
    except ValidationError:
        wer = None  # no reference words at all
    return EvalReport.from_confusion(
        conf,
        mode_marks(mode),
        wer=wer,
        utterances=len(utterances),
        mode=mode.value,
        lexical_fallbacks=fallbacks,
    )
