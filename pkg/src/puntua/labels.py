"""Label alphabet, per-token prediction records and text rendering.

Every token carries two slots: a *lead* slot that can only hold the Spanish
opening question mark and a *trail* slot for the closing question mark,
comma or period. A one-word question such as ``¿Sí?`` uses both.
"""

from __future__ import annotations

import math
import unicodedata
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from puntua.errors import StructuralError, ValidationError


class MarkLabel(str, Enum):
    OPEN_QUESTION = "O_Q"
    CLOSE_QUESTION = "C_Q"
    COMMA = "COMMA"
    PERIOD = "PERIOD"
    NONE = "NONE"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, name: str) -> "MarkLabel":
        try:
            return cls(name)
        except ValueError:
            raise ValidationError(f"unknown label {name!r}") from None


LEAD_LABELS = frozenset({MarkLabel.OPEN_QUESTION, MarkLabel.NONE})
TRAIL_LABELS = frozenset(
    {MarkLabel.CLOSE_QUESTION, MarkLabel.COMMA, MarkLabel.PERIOD, MarkLabel.NONE}
)
ACOUSTIC_LABELS = frozenset({MarkLabel.CLOSE_QUESTION, MarkLabel.NONE})
# The four scored marks, in report order.
MARKS = (
    MarkLabel.OPEN_QUESTION,
    MarkLabel.CLOSE_QUESTION,
    MarkLabel.COMMA,
    MarkLabel.PERIOD,
)

MARK_CHARS = {
    MarkLabel.OPEN_QUESTION: "¿",
    MarkLabel.CLOSE_QUESTION: "?",
    MarkLabel.COMMA: ",",
    MarkLabel.PERIOD: ".",
}
CHAR_MARKS = {c: m for m, c in MARK_CHARS.items()}
PUNCTUATION = frozenset(MARK_CHARS.values())
_STRIP_TABLE = str.maketrans("", "", "".join(sorted(PUNCTUATION)))


def remove_marks(text: str) -> str:
    """Delete every ``¿ ? , .`` character from *text*."""
    return text.translate(_STRIP_TABLE)


@dataclass(frozen=True, slots=True)
class TokenPrediction:
    lead: MarkLabel = MarkLabel.NONE
    trail: MarkLabel = MarkLabel.NONE
    prob: Optional[float] = None

    def __post_init__(self) -> None:
        if self.lead not in LEAD_LABELS:
            raise ValidationError(f"lead slot cannot hold {self.lead}")
        if self.trail not in TRAIL_LABELS:
            raise ValidationError(f"trail slot cannot hold {self.trail}")
        if self.prob is not None:
            if isinstance(self.prob, bool) or not isinstance(self.prob, (int, float)):
                raise ValidationError(f"prob must be a real number, got {self.prob!r}")
            if math.isnan(self.prob) or not 0.0 <= self.prob <= 1.0:
                raise ValidationError(f"prob {self.prob} outside [0, 1]")

    def marks(self) -> tuple[MarkLabel, MarkLabel]:
        return (self.lead, self.trail)

    def without_prob(self) -> "TokenPrediction":
        return TokenPrediction(self.lead, self.trail)


@dataclass(frozen=True, slots=True)
class AcousticPrediction:
    trail: MarkLabel = MarkLabel.NONE

    def __post_init__(self) -> None:
        if self.trail not in ACOUSTIC_LABELS:
            raise ValidationError(
                f"acoustic channel only emits C_Q or NONE, got {self.trail}"
            )

    def as_token(self) -> TokenPrediction:
        return TokenPrediction(MarkLabel.NONE, self.trail)


@dataclass(frozen=True, slots=True)
class Thresholds:
    t_question: float = 0.75
    t_declarative: float = 0.75

    def __post_init__(self) -> None:
        for name in ("t_question", "t_declarative"):
            value = getattr(self, name)
            if math.isnan(value) or not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name}={value} outside [0, 1]")


def check_word(word: str) -> None:
    if not word:
        raise ValidationError("empty word")
    if any(ch.isspace() for ch in word):
        raise ValidationError(f"word {word!r} contains whitespace")
    bad = PUNCTUATION.intersection(word)
    if bad:
        raise ValidationError(f"word {word!r} contains punctuation {''.join(sorted(bad))!r}")


@dataclass(frozen=True, slots=True)
class Utterance:
    """One transcript with its parallel label tracks.

    ``words`` is the ASR hypothesis. ``ref_words`` is only set when the
    reference transcript differs from the hypothesis; the ``reference``
    track is then parallel to ``ref_words`` rather than ``words``.
    """

    id: str
    words: tuple[str, ...]
    lexical: tuple[TokenPrediction, ...]
    acoustic: Optional[tuple[AcousticPrediction, ...]] = None
    reference: Optional[tuple[TokenPrediction, ...]] = None
    ref_words: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        for w in self.words:
            check_word(w)
        n = len(self.words)
        if len(self.lexical) != n:
            raise StructuralError(
                f"utterance {self.id!r}: lexical track has {len(self.lexical)} labels for {n} words"
            )
        if self.acoustic is not None and len(self.acoustic) != n:
            raise StructuralError(
                f"utterance {self.id!r}: acoustic track has {len(self.acoustic)} labels for {n} words"
            )
        if self.ref_words is not None:
            for w in self.ref_words:
                check_word(w)
        if self.reference is not None:
            m = len(self.reference_words)
            if len(self.reference) != m:
                raise StructuralError(
                    f"utterance {self.id!r}: reference track has {len(self.reference)} labels for {m} words"
                )
            if any(t.prob is not None for t in self.reference):
                raise ValidationError(f"utterance {self.id!r}: reference labels carry no prob")

    @property
    def reference_words(self) -> tuple[str, ...]:
        return self.ref_words if self.ref_words is not None else self.words

    @property
    def words_differ(self) -> bool:
        if self.ref_words is None:
            return False
        return [w.lower() for w in self.words] != [w.lower() for w in self.ref_words]


def _capitalize(word: str) -> str:
    head = word[0].upper()
    # Multi-character upper forms (e.g. "ß" -> "SS") would break the lowercase round trip.
    if len(head) != 1:
        return word
    return head + word[1:]


def attach_marks(words: Sequence[str], labels: Sequence[TokenPrediction]) -> str:
    """Render a labeled word sequence as punctuated, sentence-cased text.

    >>> attach_marks(["sí"], [TokenPrediction(MarkLabel.OPEN_QUESTION, MarkLabel.CLOSE_QUESTION)])
    '¿Sí?'
    """
    if len(words) != len(labels):
        raise StructuralError(f"{len(words)} words but {len(labels)} labels")
    pieces = []
    sentence_start = True
    for word, label in zip(words, labels):
        if label.lead not in LEAD_LABELS or label.trail not in TRAIL_LABELS:
            raise ValidationError(f"slot violation on {word!r}: {label}")
        token = _capitalize(word) if sentence_start else word
        if label.lead is MarkLabel.OPEN_QUESTION:
            token = "¿" + token
        if label.trail is not MarkLabel.NONE:
            token += MARK_CHARS[label.trail]
        pieces.append(token)
        sentence_start = label.trail in (MarkLabel.PERIOD, MarkLabel.CLOSE_QUESTION)
    return " ".join(pieces)


def strip_marks(text: str) -> tuple[list[str], list[TokenPrediction]]:
    """Split punctuated text into lowercased words and their mark labels.

    Marks are detached from words first, so ``"okey , los"`` and
    ``"okey, los"`` parse identically. A trailing mark binds to the word
    before it and ``¿`` binds to the word after it.
    """
    text = unicodedata.normalize("NFC", text)
    words: list[str] = []
    leads: list[MarkLabel] = []
    trails: list[MarkLabel] = []
    pending_open: int | None = None  # offset of a ¿ waiting for its word
    current: list[str] = []

    def flush() -> None:
        nonlocal pending_open
        if not current:
            return
        words.append("".join(current).lower())
        leads.append(MarkLabel.OPEN_QUESTION if pending_open is not None else MarkLabel.NONE)
        trails.append(MarkLabel.NONE)
        pending_open = None
        current.clear()

    for offset, ch in enumerate(text):
        if ch.isalnum() or unicodedata.category(ch).startswith("M"):
            current.append(ch)
            continue
        flush()
        if ch.isspace():
            continue
        if ch == "¿":
            if pending_open is not None:
                raise ValidationError(f"repeated '¿' at offset {offset}")
            pending_open = offset
        elif ch in CHAR_MARKS:
            if pending_open is not None:
                raise ValidationError(f"{ch!r} at offset {offset} follows '¿' with no word")
            if not words:
                raise ValidationError(f"{ch!r} at offset {offset} has no preceding word")
            if trails[-1] is not MarkLabel.NONE:
                raise ValidationError(
                    f"multiple trailing marks on {words[-1]!r} (second {ch!r} at offset {offset})"
                )
            trails[-1] = CHAR_MARKS[ch]
        else:
            raise ValidationError(f"unsupported character {ch!r} at offset {offset}")
    flush()
    if pending_open is not None:
        raise ValidationError(f"'¿' at offset {pending_open} is not followed by a word")
    return words, [TokenPrediction(l, t) for l, t in zip(leads, trails)]
