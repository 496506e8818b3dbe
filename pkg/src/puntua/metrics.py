"""Scoring: per-mark P/R/F1, micro F1, punctuation-free WER, LLM reliability, latency."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from puntua.align import OpKind, align_tokens
from puntua.errors import StructuralError, ValidationError
from puntua.labels import MARKS, MarkLabel, TokenPrediction, remove_marks


@dataclass
class Counts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __add__(self, other: "Counts") -> "Counts":
        return Counts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)


def prf(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    """Precision, recall and F1 as fractions; any 0/0 is 0."""
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


@dataclass
class MarkConfusion:
    counts: dict[MarkLabel, Counts] = field(
        default_factory=lambda: {m: Counts() for m in MARKS}
    )

    def __getitem__(self, mark: MarkLabel) -> Counts:
        return self.counts[mark]

    def __add__(self, other: "MarkConfusion") -> "MarkConfusion":
        return MarkConfusion({m: self.counts[m] + other.counts[m] for m in MARKS})

    def pooled(self, marks: Iterable[MarkLabel] = MARKS) -> Counts:
        total = Counts()
        for m in marks:
            total = total + self.counts[m]
        return total

    def f1(self, mark: MarkLabel) -> float:
        c = self.counts[mark]
        return prf(c.tp, c.fp, c.fn)[2]

    def micro_f1(self, marks: Iterable[MarkLabel] = MARKS) -> float:
        c = self.pooled(marks)
        return prf(c.tp, c.fp, c.fn)[2]


def _score_slot(conf: MarkConfusion, pred: MarkLabel, ref: MarkLabel, marks) -> None:
    if pred is ref:
        if pred is not MarkLabel.NONE and pred in marks:
            conf.counts[pred].tp += 1
        return
    if pred is not MarkLabel.NONE and pred in marks:
        conf.counts[pred].fp += 1
    if ref is not MarkLabel.NONE and ref in marks:
        conf.counts[ref].fn += 1


def score_marks(
    pred: Sequence[Sequence[TokenPrediction]],
    ref: Sequence[Sequence[TokenPrediction]],
    marks: Iterable[MarkLabel] = MARKS,
) -> MarkConfusion:
    """Positional confusion counts over a corpus of aligned label sequences.

    A predicted mark is a true positive only when the reference holds the
    same mark on the same token and slot. Marks outside *marks* are ignored
    entirely, which is how the acoustic channel is scored on ``?`` alone.
    """
    marks = frozenset(marks)
    if len(pred) != len(ref):
        raise StructuralError(f"{len(pred)} predicted utterances but {len(ref)} references")
    conf = MarkConfusion()
    for k, (p_seq, r_seq) in enumerate(zip(pred, ref)):
        if len(p_seq) != len(r_seq):
            raise StructuralError(
                f"utterance {k}: {len(p_seq)} predicted labels but {len(r_seq)} reference labels"
            )
        for p, r in zip(p_seq, r_seq):
            _score_slot(conf, p.lead, r.lead, marks)
            _score_slot(conf, p.trail, r.trail, marks)
    return conf


WordsLike = Union[str, Sequence[str]]


def _clean_words(item: WordsLike) -> list[str]:
    if isinstance(item, str):
        return remove_marks(item).split()
    out = []
    for token in item:
        out.extend(remove_marks(token).split())
    return out


@dataclass(frozen=True)
class WerBreakdown:
    substitutions: int
    deletions: int
    insertions: int
    ref_words: int

    @property
    def errors(self) -> int:
        return self.substitutions + self.deletions + self.insertions

    @property
    def wer(self) -> float:
        return self.errors / self.ref_words


def wer_breakdown(hyp: Sequence[WordsLike], ref: Sequence[WordsLike]) -> WerBreakdown:
    if len(hyp) != len(ref):
        raise StructuralError(f"{len(hyp)} hypotheses but {len(ref)} references")
    s = d = i = n = 0
    for h, r in zip(hyp, ref):
        h_words, r_words = _clean_words(h), _clean_words(r)
        counts = align_tokens(h_words, r_words).counts()
        s += counts[OpKind.SUBSTITUTE]
        d += counts[OpKind.DELETE]
        i += counts[OpKind.INSERT]
        n += len(r_words)
    if n == 0:
        raise ValidationError("reference corpus has no words")
    return WerBreakdown(s, d, i, n)


def compute_wer(hyp: Sequence[WordsLike], ref: Sequence[WordsLike]) -> float:
    """Corpus WER with all ``¿ ? , .`` removed from both sides first.

    Each item may be a raw string or a token list. Errors and reference word
    counts are pooled over the corpus before dividing.
    """
    return wer_breakdown(hyp, ref).wer


def check_reliability(input_words: Sequence[str], llm_output: str) -> bool:
    """True when *llm_output* holds exactly *input_words*, ignoring casing and marks."""
    return remove_marks(llm_output).lower().split() == [w.lower() for w in input_words]


@dataclass(frozen=True)
class LatencyStats:
    mean: float
    min: float
    max: float
    p50: float
    p95: float
    count: int


def summarize_latency(samples: Sequence[float]) -> LatencyStats:
    if len(samples) == 0:
        raise ValidationError("no latency samples")
    arr = np.asarray(samples, dtype=float)
    return LatencyStats(
        mean=float(arr.mean()),
        min=float(arr.min()),
        max=float(arr.max()),
        p50=float(np.percentile(arr, 50)),
        p95=float(np.percentile(arr, 95)),
        count=int(arr.size),
    )


@dataclass(frozen=True)
class MarkScore:
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int


@dataclass(frozen=True)
class EvalReport:
    """Evaluation summary. Precision, recall and F1 values are percentages."""

    per_mark: dict[MarkLabel, MarkScore]
    micro_f1: float
    wer: Optional[float] = None
    reliability: Optional[float] = None
    latency_mean_s: Optional[float] = None
    utterances: int = 0
    mode: str = ""
    lexical_fallbacks: int = 0
    reliable_utterances: Optional[int] = None

    @classmethod
    def from_confusion(
        cls,
        conf: MarkConfusion,
        marks: Iterable[MarkLabel] = MARKS,
        **extra,
    ) -> "EvalReport":
        marks = tuple(marks)
        per_mark = {}
        for m in marks:
            c = conf[m]
            p, r, f = prf(c.tp, c.fp, c.fn)
            per_mark[m] = MarkScore(100 * p, 100 * r, 100 * f, c.tp, c.fp, c.fn)
        return cls(per_mark=per_mark, micro_f1=100 * conf.micro_f1(marks), **extra)
