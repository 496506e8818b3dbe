"""Line-delimited JSON prediction files.

One utterance per line::

    {"id": "u1", "words": ["okey", "los"],
     "lexical": [{"lead": "NONE", "trail": "COMMA", "prob": 0.85}, ...],
     "acoustic": [{"trail": "NONE"}, ...],
     "reference": [{"lead": "NONE", "trail": "COMMA"}, ...],
     "ref_words": ["okey", "los"]}

``acoustic``, ``reference`` and ``ref_words`` are optional. ``ref_words``
is only needed when the reference transcript differs from ``words``.
Blank lines are skipped.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable, Iterator, Union

from puntua.errors import ParseError, ValidationError
from puntua.labels import AcousticPrediction, MarkLabel, TokenPrediction, Utterance

PathLike = Union[str, Path]


def read_records(path: PathLike) -> Iterator[tuple[int, dict[str, Any]]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON ({exc.msg})", lineno) from None
            if not isinstance(record, dict):
                raise ParseError("record is not a JSON object", lineno)
            yield lineno, record


def _label(value: Any, lineno: int, path: str) -> MarkLabel:
    if not isinstance(value, str):
        raise ParseError(f"expected a label string, got {value!r}", lineno, path)
    try:
        return MarkLabel(value)
    except ValueError:
        raise ParseError(f"unknown label {value!r}", lineno, path) from None


def _array(record: dict, key: str, lineno: int) -> list:
    value = record[key]
    if not isinstance(value, list):
        raise ParseError("expected an array", lineno, key)
    return value


def _object(item: Any, lineno: int, path: str) -> dict:
    if not isinstance(item, dict):
        raise ParseError("expected an object", lineno, path)
    return item


def _words(record: dict, key: str, lineno: int) -> tuple[str, ...]:
    words = _array(record, key, lineno)
    for i, w in enumerate(words):
        if not isinstance(w, str):
            raise ParseError(f"expected a string, got {w!r}", lineno, f"{key}[{i}]")
    return tuple(words)


def _token(item: Any, lineno: int, path: str, with_prob: bool) -> TokenPrediction:
    obj = _object(item, lineno, path)
    lead = _label(obj.get("lead", "NONE"), lineno, f"{path}.lead")
    trail = _label(obj.get("trail", "NONE"), lineno, f"{path}.trail")
    prob = obj.get("prob")
    if prob is not None and not with_prob:
        raise ParseError("reference labels must not carry prob", lineno, f"{path}.prob")
    try:
        return TokenPrediction(lead, trail, prob)
    except ValidationError as exc:
        raise ParseError(str(exc), lineno, path) from None


def parse_utterance(record: dict[str, Any], lineno: int, require_lexical: bool = True) -> Utterance:
    """Build an :class:`Utterance` from one decoded record.

    With ``require_lexical=False`` a missing ``lexical`` field becomes an
    all-NONE track without probabilities (used for raw inputs).
    """
    try:
        uid = record["id"]
        if not isinstance(uid, str):
            raise ParseError(f"expected a string, got {uid!r}", lineno, "id")
        words = _words(record, "words", lineno)
        if record.get("lexical") is None and not require_lexical:
            lexical = tuple(TokenPrediction() for _ in words)
        else:
            lexical = tuple(
                _token(item, lineno, f"lexical[{i}]", True)
                for i, item in enumerate(_array(record, "lexical", lineno))
            )
    except KeyError as exc:
        raise ParseError("missing required field", lineno, exc.args[0]) from None

    acoustic = None
    if record.get("acoustic") is not None:
        acoustic = []
        for i, item in enumerate(_array(record, "acoustic", lineno)):
            path = f"acoustic[{i}]"
            obj = _object(item, lineno, path)
            trail = _label(obj.get("trail", "NONE"), lineno, f"{path}.trail")
            try:
                acoustic.append(AcousticPrediction(trail))
            except ValidationError as exc:
                raise ParseError(str(exc), lineno, f"{path}.trail") from None
        acoustic = tuple(acoustic)

    reference = None
    if record.get("reference") is not None:
        reference = tuple(
            _token(item, lineno, f"reference[{i}]", False)
            for i, item in enumerate(_array(record, "reference", lineno))
        )
    ref_words = _words(record, "ref_words", lineno) if record.get("ref_words") is not None else None

    try:
        return Utterance(uid, words, lexical, acoustic, reference, ref_words)
    except ValidationError as exc:
        # Length mismatches stay StructuralError-typed but gain a line number.
        exc.args = (f"line {lineno}: {exc}",)
        raise


def load_predictions(path: PathLike, require_lexical: bool = True) -> list[Utterance]:
    return [
        parse_utterance(record, lineno, require_lexical) for lineno, record in read_records(path)
    ]


def token_record(t: TokenPrediction) -> dict[str, Any]:
    out: dict[str, Any] = {"lead": t.lead.value, "trail": t.trail.value}
    if t.prob is not None:
        out["prob"] = t.prob
    return out


def utterance_record(u: Utterance) -> dict[str, Any]:
    record: dict[str, Any] = {
        "id": u.id,
        "words": list(u.words),
        "lexical": [token_record(t) for t in u.lexical],
    }
    if u.acoustic is not None:
        record["acoustic"] = [{"trail": a.trail.value} for a in u.acoustic]
    if u.reference is not None:
        record["reference"] = [token_record(t) for t in u.reference]
    if u.ref_words is not None:
        record["ref_words"] = list(u.ref_words)
    return record


def dump_predictions(utterances: Iterable[Utterance], path: PathLike) -> int:
    n = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for u in utterances:
            fh.write(json.dumps(utterance_record(u), ensure_ascii=False) + "\n")
            n += 1
    return n
