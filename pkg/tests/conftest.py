from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from puntua.labels import AcousticPrediction, MarkLabel, TokenPrediction, Utterance

N = MarkLabel.NONE
OQ = MarkLabel.OPEN_QUESTION
CQ = MarkLabel.CLOSE_QUESTION
CM = MarkLabel.COMMA
PD = MarkLabel.PERIOD

FIG1_WORDS = ("okey", "los", "sábados", "están", "abiertos")


def tp(lead=N, trail=N, prob=None) -> TokenPrediction:
    return TokenPrediction(lead, trail, prob)


def trails(*marks, prob=None) -> tuple[TokenPrediction, ...]:
    return tuple(TokenPrediction(N, m, prob) for m in marks)


def acoustic(*marks) -> tuple[AcousticPrediction, ...]:
    return tuple(AcousticPrediction(m) for m in marks)


@pytest.fixture
def fig1() -> Utterance:
    lexical = (
        tp(trail=CM, prob=0.85),
        tp(prob=0.97),
        tp(prob=0.98),
        tp(prob=0.95),
        tp(trail=PD, prob=0.62),
    )
    reference = (tp(trail=CM), tp(lead=OQ), tp(), tp(), tp(trail=CQ))
    return Utterance("fig1", FIG1_WORDS, lexical, acoustic(N, N, N, N, CQ), reference)


@pytest.fixture
def fig1_record() -> dict:
    return {
        "id": "fig1",
        "words": list(FIG1_WORDS),
        "lexical": [
            {"lead": "NONE", "trail": "COMMA", "prob": 0.85},
            {"lead": "NONE", "trail": "NONE", "prob": 0.97},
            {"lead": "NONE", "trail": "NONE", "prob": 0.98},
            {"lead": "NONE", "trail": "NONE", "prob": 0.95},
            {"lead": "NONE", "trail": "PERIOD", "prob": 0.62},
        ],
        "acoustic": [{"trail": "NONE"}] * 4 + [{"trail": "C_Q"}],
        "reference": [
            {"lead": "NONE", "trail": "COMMA"},
            {"lead": "O_Q", "trail": "NONE"},
            {"lead": "NONE", "trail": "NONE"},
            {"lead": "NONE", "trail": "NONE"},
            {"lead": "NONE", "trail": "C_Q"},
        ],
    }


def write_jsonl(path: Path, records) -> Path:
    path.write_text(
        "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records), encoding="utf-8"
    )
    return path


@pytest.fixture
def stub():
    from stub_llm import StubServer

    with StubServer() as server:
        yield server


def make_utterances(n: int, with_reference: bool = False) -> list[Utterance]:
    out = []
    for i in range(n):
        words = ("bueno", "cómo", "está", f"cliente{i}")
        ref = (tp(trail=CM), tp(lead=OQ), tp(), tp(trail=CQ)) if with_reference else None
        out.append(Utterance(f"u{i}", words, tuple(tp() for _ in words), reference=ref))
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
