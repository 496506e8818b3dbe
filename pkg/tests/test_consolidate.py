import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CM, CQ, N, PD, acoustic, tp
from oracles import algorithm1
from puntua.consolidate import Source, consolidate_sequence, consolidate_token
from puntua.errors import ValidationError
from puntua.labels import AcousticPrediction, Thresholds, TokenPrediction, Utterance

TH = Thresholds(0.75, 0.75)
probs = st.floats(0.0, 1.0)
thresholds = st.builds(Thresholds, probs, probs)


@pytest.mark.parametrize(
    "a,l,p,expected,source",
    [
        (CQ, PD, 0.60, CQ, Source.ACOUSTIC_OVERRIDE),
        (CQ, PD, 0.90, PD, Source.LEXICAL_KEPT),
        (CQ, CM, 0.75, CQ, Source.ACOUSTIC_OVERRIDE),  # boundary is inclusive
        (N, CQ, 0.60, PD, Source.DEMOTED_TO_PERIOD),
        (N, CQ, 0.75, PD, Source.DEMOTED_TO_PERIOD),
        (N, CQ, 0.80, CQ, Source.LEXICAL_KEPT),
        (N, CM, 0.10, CM, Source.LEXICAL_KEPT),
        (CQ, N, 0.99, N, Source.LEXICAL_KEPT),
        (CQ, CQ, 0.10, CQ, Source.LEXICAL_KEPT),
    ],
)
def test_consolidate_token_examples(a, l, p, expected, source):
    out = consolidate_token(AcousticPrediction(a), TokenPrediction(N, l, p), TH)
    assert (out.trail, out.source) == (expected, source)


def test_missing_prob_when_needed():
    with pytest.raises(ValidationError):
        consolidate_token(AcousticPrediction(CQ), TokenPrediction(N, PD), TH)
    with pytest.raises(ValidationError):
        consolidate_token(AcousticPrediction(N), TokenPrediction(N, CQ), TH)


def test_missing_prob_ok_when_unread():
    out = consolidate_token(AcousticPrediction(N), TokenPrediction(N, CM), TH)
    assert out.trail is CM


def test_figure1_sequence(fig1):
    out = consolidate_sequence(fig1, TH)
    assert [t.trail for t in out] == [CM, N, N, N, CQ]
    assert [t.lead for t in out] == [t.lead for t in fig1.lexical]


def test_sequence_acoustic_all_none():
    lex = (tp(trail=CQ, prob=0.7), tp(trail=CQ, prob=0.9), tp(trail=CM, prob=0.1))
    u = Utterance("u", ("a", "b", "c"), lex, acoustic(N, N, N))
    assert [t.trail for t in consolidate_sequence(u, TH)] == [PD, CQ, CM]


def test_sequence_zero_thresholds_is_lexical():
    lex = (tp(trail=PD, prob=0.3), tp(trail=CQ, prob=0.2), tp(trail=N, prob=0.5))
    u = Utterance("u", ("a", "b", "c"), lex, acoustic(CQ, N, CQ))
    out = consolidate_sequence(u, Thresholds(0.0, 0.0))
    assert out == list(lex)


def test_sequence_requires_acoustic():
    u = Utterance("u", ("a",), (tp(trail=PD, prob=0.5),))
    with pytest.raises(ValidationError):
        consolidate_sequence(u, TH)


@given(st.sampled_from([N, CQ]), st.sampled_from([N, CQ, CM, PD]), probs, thresholds)
def test_branch_closure(a, l, p, th):
    out = consolidate_token(AcousticPrediction(a), TokenPrediction(N, l, p), th)
    assert out.trail in {l, CQ, PD}


@given(st.sampled_from([N, CQ]), st.sampled_from([N, CQ, CM, PD]), probs)
def test_degenerate_thresholds_favour_acoustic(a, l, p):
    out = consolidate_token(AcousticPrediction(a), TokenPrediction(N, l, p), Thresholds(1.0, 1.0))
    if a is CQ and l in (PD, CM):
        assert out.trail is CQ
    elif a is N and l is CQ:
        assert out.trail is PD


def test_sequence_matches_naive_interpreter():
    rng = random.Random(7)
    n = 10_000
    a = [rng.choice([N, CQ]) for _ in range(n)]
    lex = [TokenPrediction(N, rng.choice([N, CQ, CM, PD]), round(rng.random(), 3)) for _ in range(n)]
    th = Thresholds(0.72, 0.78)
    u = Utterance("big", tuple(f"w{i}" for i in range(n)), tuple(lex), tuple(AcousticPrediction(x) for x in a))
    got = [t.trail.value for t in consolidate_sequence(u, th)]
    want = [algorithm1(x.value, l.trail.value, l.prob, th.t_question, th.t_declarative) for x, l in zip(a, lex)]
    assert got == want
