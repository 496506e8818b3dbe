"""Repair of unbalanced Spanish question marks after fusion.

Thresholding can leave a ``?`` with no opening ``¿`` (or the reverse).
Pairing is greedy, left to right and never nested, since Spanish
orthography does not nest question spans.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from puntua.labels import MarkLabel, TokenPrediction

log = logging.getLogger(__name__)

O_Q = MarkLabel.OPEN_QUESTION
C_Q = MarkLabel.CLOSE_QUESTION
NONE = MarkLabel.NONE


@dataclass(frozen=True)
class PairScanResult:
    matched_pairs: list[tuple[int, int]] = field(default_factory=list)
    unmatched_leads: list[int] = field(default_factory=list)
    unmatched_trails: list[int] = field(default_factory=list)

    @property
    def well_formed(self) -> bool:
        return not self.unmatched_leads and not self.unmatched_trails


def pair_scan(labels: Sequence[TokenPrediction]) -> PairScanResult:
    """Classify every ``¿``/``?`` as paired or unmatched.

    A token's lead is visited before its trail, so ``¿Sí?`` pairs with itself.
    A second ``¿`` before any ``?`` orphans the first one.
    """
    result = PairScanResult()
    open_at: int | None = None
    for i, label in enumerate(labels):
        if label.lead is O_Q:
            if open_at is not None:
                result.unmatched_leads.append(open_at)
            open_at = i
        if label.trail is C_Q:
            if open_at is None:
                result.unmatched_trails.append(i)
            else:
                result.matched_pairs.append((open_at, i))
                open_at = None
    if open_at is not None:
        result.unmatched_leads.append(open_at)
    return result


def chunk_start(labels: Sequence[TokenPrediction], j: int) -> int:
    """Index of the first token of the punctuation-free word run containing *j*.

    A trail mark closes the run after its token; a lead mark opens a new run
    at its token.
    """
    s = j
    while s > 0 and labels[s].lead is NONE and labels[s - 1].trail is NONE:
        s -= 1
    return s


def apply_heuristics(labels: Sequence[TokenPrediction]) -> list[TokenPrediction]:
    """Drop orphan ``¿`` marks, then open every orphan ``?`` at its chunk start.

    Only lead slots are ever modified.
    """
    out = list(labels)
    scan = pair_scan(out)
    for i in scan.unmatched_leads:
        out[i] = TokenPrediction(NONE, out[i].trail, out[i].prob)
    # Removing orphan leads cannot change which trails are orphaned, so the
    # first scan's trail list is still valid.
    for j in scan.unmatched_trails:
        s = chunk_start(out, j)
        if out[s].lead is O_Q:
            log.warning(
                "token %d already opens a question; leaving unmatched '?' at %d as is", s, j
            )
            continue
        out[s] = TokenPrediction(O_Q, out[s].trail, out[s].prob)
    return out
