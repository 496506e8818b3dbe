"""Word-level Levenshtein alignment and mark transfer onto reference words."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from puntua.errors import StructuralError
from puntua.labels import MarkLabel, TokenPrediction


class OpKind(str, Enum):
    MATCH = "MATCH"
    SUBSTITUTE = "SUBSTITUTE"
    INSERT = "INSERT"  # extra hypothesis word
    DELETE = "DELETE"  # reference word missing from the hypothesis


@dataclass(frozen=True, slots=True)
class EditOp:
    kind: OpKind
    hyp: Optional[int]
    ref: Optional[int]


@dataclass(frozen=True)
class EditScript:
    ops: tuple[EditOp, ...]

    @property
    def cost(self) -> int:
        return sum(op.kind is not OpKind.MATCH for op in self.ops)

    @property
    def hyp_len(self) -> int:
        return sum(op.hyp is not None for op in self.ops)

    @property
    def ref_len(self) -> int:
        return sum(op.ref is not None for op in self.ops)

    def counts(self) -> dict[OpKind, int]:
        out = dict.fromkeys(OpKind, 0)
        for op in self.ops:
            out[op.kind] += 1
        return out

    def __iter__(self):
        return iter(self.ops)

    def __len__(self) -> int:
        return len(self.ops)


def align_tokens(hyp: Sequence[str], ref: Sequence[str]) -> EditScript:
    """Minimal unit-cost alignment of *hyp* onto *ref*.

    Words compare case-insensitively but accent-sensitively. Among equally
    cheap scripts the backtrace prefers, at each step from the end, a
    diagonal move (match/substitute), then a deletion, then an insertion.
    """
    h = [w.lower() for w in hyp]
    r = [w.lower() for w in ref]
    n, m = len(h), len(r)
    dist = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        dist[i][0] = i
    for j in range(m + 1):
        dist[0][j] = j
    for i in range(1, n + 1):
        row, prev = dist[i], dist[i - 1]
        hi = h[i - 1]
        for j in range(1, m + 1):
            row[j] = min(
                prev[j - 1] + (hi != r[j - 1]),
                row[j - 1] + 1,
                prev[j] + 1,
            )

    ops: list[EditOp] = []
    i, j = n, m
    while i > 0 or j > 0:
        here = dist[i][j]
        if i > 0 and j > 0:
            same = h[i - 1] == r[j - 1]
            if here == dist[i - 1][j - 1] + (not same):
                kind = OpKind.MATCH if same else OpKind.SUBSTITUTE
                ops.append(EditOp(kind, i - 1, j - 1))
                i, j = i - 1, j - 1
                continue
        if j > 0 and here == dist[i][j - 1] + 1:
            ops.append(EditOp(OpKind.DELETE, None, j - 1))
            j -= 1
            continue
        ops.append(EditOp(OpKind.INSERT, i - 1, None))
        i -= 1
    ops.reverse()
    return EditScript(tuple(ops))


_TRAIL_RANK = {
    MarkLabel.NONE: 0,
    MarkLabel.COMMA: 1,
    MarkLabel.PERIOD: 2,
    MarkLabel.CLOSE_QUESTION: 3,
}


def _stronger_trail(a: MarkLabel, b: MarkLabel) -> MarkLabel:
    return a if _TRAIL_RANK[a] >= _TRAIL_RANK[b] else b


def transfer_marks(
    hyp_labels: Sequence[TokenPrediction], script: EditScript, ref_len: int
) -> list[TokenPrediction]:
    """Project hypothesis marks onto reference positions along *script*.

    Aligned words keep their marks. An inserted word's trail moves back to
    the closest earlier aligned reference word and its lead moves forward to
    the closest later one; either is dropped if no such word exists.
    Colliding marks keep the strongest (``?`` > ``.`` > ``,``).
    """
    if len(hyp_labels) != script.hyp_len:
        raise StructuralError(
            f"{len(hyp_labels)} hypothesis labels but script covers {script.hyp_len} words"
        )
    if ref_len != script.ref_len:
        raise StructuralError(f"ref_len={ref_len} but script covers {script.ref_len} words")

    leads = [MarkLabel.NONE] * ref_len
    trails = [MarkLabel.NONE] * ref_len

    last_aligned: int | None = None
    pending_lead = False
    for op in script.ops:
        if op.kind in (OpKind.MATCH, OpKind.SUBSTITUTE):
            label = hyp_labels[op.hyp]
            trails[op.ref] = _stronger_trail(trails[op.ref], label.trail)
            if label.lead is MarkLabel.OPEN_QUESTION or pending_lead:
                leads[op.ref] = MarkLabel.OPEN_QUESTION
            pending_lead = False
            last_aligned = op.ref
        elif op.kind is OpKind.INSERT:
            label = hyp_labels[op.hyp]
            if label.trail is not MarkLabel.NONE and last_aligned is not None:
                trails[last_aligned] = _stronger_trail(trails[last_aligned], label.trail)
            if label.lead is MarkLabel.OPEN_QUESTION:
                pending_lead = True
        # DELETE leaves (NONE, NONE) at op.ref.
    return [TokenPrediction(l, t) for l, t in zip(leads, trails)]
