"""Zero- and few-shot prompt templates for LLM punctuation baselines."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence, Union

from puntua.errors import ValidationError
from puntua.labels import MARK_CHARS

INSTRUCTION = (
    "Without any explanation or modification, add punctuation to the following "
    "Spanish transcript from human conversations, use only punctuation marks from "
    "this list: comma(,), period(.), open_question(¿) and close_question(?). "
    "Return the punctuated utterance only."
)
INPUT_TAG = "### Input:"
OUTPUT_TAG = "### Output:"

# Invented examples; together they use all four marks.
DEFAULT_SHOTS: tuple[tuple[str, str], ...] = (
    (
        "okey los sábados están abiertos",
        "Okey, ¿los sábados están abiertos?",
    ),
    (
        "bueno le llamo mañana por la tarde",
        "Bueno, le llamo mañana por la tarde.",
    ),
    (
        "cuál es su número de cuenta necesito verificarlo",
        "¿Cuál es su número de cuenta? Necesito verificarlo.",
    ),
)


class PromptMode(str, Enum):
    ZERO_SHOT = "zero"
    FEW_SHOT = "few"


@dataclass(frozen=True)
class PromptTemplate:
    mode: PromptMode = PromptMode.ZERO_SHOT
    shots: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "shots", tuple(tuple(s) for s in self.shots))
        if self.mode is PromptMode.ZERO_SHOT:
            if self.shots:
                raise ValidationError("zero-shot template takes no examples")
            return
        if len(self.shots) != 3:
            raise ValidationError(f"few-shot template needs exactly 3 examples, got {len(self.shots)}")
        joined = "".join(out for _, out in self.shots)
        missing = [c for c in MARK_CHARS.values() if c not in joined]
        if missing:
            raise ValidationError(f"few-shot examples never use {' '.join(missing)}")

    @classmethod
    def zero_shot(cls) -> "PromptTemplate":
        return cls(PromptMode.ZERO_SHOT)

    @classmethod
    def few_shot(cls, shots: Sequence[tuple[str, str]] = DEFAULT_SHOTS) -> "PromptTemplate":
        return cls(PromptMode.FEW_SHOT, tuple(shots))


def load_shots(path: Union[str, Path]) -> tuple[tuple[str, str], ...]:
    """Read ``{"input": ..., "output": ...}`` objects, one per line."""
    shots = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                shots.append((str(obj["input"]), str(obj["output"])))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ValidationError(f"{path}: line {lineno}: bad example ({exc})") from None
    return tuple(shots)


def build_prompt(text: str, template: PromptTemplate) -> str:
    if not text.strip():
        raise ValidationError("prompt text is empty")
    if template.mode is PromptMode.ZERO_SHOT:
        lines = [INSTRUCTION + " Add punctuation marks to:"]
    else:
        if len(template.shots) != 3:
            raise ValidationError(f"few-shot template needs exactly 3 examples, got {len(template.shots)}")
        lines = [INSTRUCTION + " Here are some examples:"]
        for shot_in, shot_out in template.shots:
            lines += [f"{INPUT_TAG} {shot_in}", f"{OUTPUT_TAG} {shot_out}", ""]
        lines.append("Now, add punctuation marks to:")
    lines += [f"{INPUT_TAG} {text}", OUTPUT_TAG]
    return "\n".join(lines)


def extract_query(prompt: str) -> str:
    """Recover the text placed in the final input slot of a rendered prompt."""
    for line in reversed(prompt.split("\n")):
        if line.startswith(INPUT_TAG):
            return line[len(INPUT_TAG):].strip()
    raise ValidationError("prompt has no input line")
