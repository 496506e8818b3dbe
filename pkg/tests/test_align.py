import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CM, CQ, N, OQ, PD, tp, trails
from oracles import canonical_script, levenshtein
from puntua.align import align_tokens, transfer_marks
from puntua.errors import StructuralError
from puntua.labels import MARKS, TokenPrediction

small_words = st.lists(st.sampled_from(["a", "b", "c", "A"]), max_size=4)


def kinds(script):
    return [op.kind.value for op in script]


def test_identity():
    words = "okey los sábados están abiertos".split()
    s = align_tokens(words, words)
    assert kinds(s) == ["MATCH"] * 5 and s.cost == 0


def test_accent_sensitive_substitutions():
    s = align_tokens(["como", "estas"], ["cómo", "estás"])
    assert kinds(s) == ["SUBSTITUTE", "SUBSTITUTE"] and s.cost == 2


def test_case_insensitive():
    assert align_tokens(["Hola"], ["hola"]).cost == 0


def test_insertion_example():
    s = align_tokens(["a", "x", "b"], ["a", "b"])
    assert [(op.kind.value, op.hyp, op.ref) for op in s] == [
        ("MATCH", 0, 0),
        ("INSERT", 1, None),
        ("MATCH", 2, 1),
    ]
    assert s.cost == 1


def test_empty_sequences():
    assert len(align_tokens([], [])) == 0
    assert kinds(align_tokens([], ["a", "b"])) == ["DELETE", "DELETE"]
    assert kinds(align_tokens(["a"], [])) == ["INSERT"]


@given(small_words, small_words)
def test_matches_exhaustive_canonical_oracle(hyp, ref):
    got = [(op.kind.value, op.hyp, op.ref) for op in align_tokens(hyp, ref)]
    assert got == list(canonical_script(hyp, ref))


@given(st.lists(st.sampled_from("abcdefg"), max_size=12), st.lists(st.sampled_from("abcdefg"), max_size=12))
def test_script_invariants(hyp, ref):
    s = align_tokens(hyp, ref)
    hyp_idx = [op.hyp for op in s if op.hyp is not None]
    ref_idx = [op.ref for op in s if op.ref is not None]
    assert hyp_idx == list(range(len(hyp)))
    assert ref_idx == list(range(len(ref)))
    assert s.cost == levenshtein(hyp, ref)


def test_transfer_identity():
    labels = [tp(trail=CM), tp(lead=OQ), tp(trail=CQ)]
    words = ["a", "b", "c"]
    assert transfer_marks(labels, align_tokens(words, words), 3) == labels


def test_transfer_substitution():
    s = align_tokens(["como", "estas"], ["cómo", "estás"])
    assert transfer_marks(list(trails(N, CQ)), s, 2) == list(trails(N, CQ))


def test_transfer_inserted_trail_moves_back():
    s = align_tokens(["a", "x", "b"], ["a", "b"])
    assert transfer_marks(list(trails(N, CQ, N)), s, 2) == list(trails(CQ, N))


def test_transfer_inserted_lead_moves_forward():
    s = align_tokens(["a", "x", "b"], ["a", "b"])
    out = transfer_marks([tp(), tp(lead=OQ), tp(trail=CQ)], s, 2)
    assert out == [tp(), tp(OQ, CQ)]


def test_transfer_drops_unanchored_marks():
    # Leading inserted trail has no earlier aligned word; trailing inserted lead has no later one.
    s = align_tokens(["x", "a", "y"], ["a"])
    assert kinds(s) == ["INSERT", "MATCH", "INSERT"]
    out = transfer_marks([tp(trail=PD), tp(), tp(lead=OQ)], s, 1)
    assert out == [tp()]


def test_transfer_collision_priority():
    s = align_tokens(["a", "x", "y"], ["a"])
    out = transfer_marks([tp(trail=CM), tp(trail=CQ), tp(trail=PD)], s, 1)
    assert out == [tp(trail=CQ)]


def test_transfer_deleted_ref_gets_none():
    s = align_tokens(["a"], ["a", "b"])
    assert transfer_marks([tp(trail=PD)], s, 2) == [tp(trail=PD), tp()]


def test_transfer_length_checks():
    s = align_tokens(["a"], ["a"])
    with pytest.raises(StructuralError):
        transfer_marks([tp(), tp()], s, 1)
    with pytest.raises(StructuralError):
        transfer_marks([tp()], s, 2)


# hyp [a, x, b] with '?' on x, against 2-word references. Script from the
# canonical tie-break, then the '?' placement worked out by hand.
THREE_VS_TWO = [
    (("a", "b"), ["MATCH", "INSERT", "MATCH"], [CQ, N]),  # inserted x -> back onto a
    (("a", "x"), ["MATCH", "MATCH", "INSERT"], [N, CQ]),  # x aligned directly
    (("x", "b"), ["INSERT", "MATCH", "MATCH"], [CQ, N]),
    (("a", "z"), ["MATCH", "INSERT", "SUBSTITUTE"], [CQ, N]),  # x inserted, b->z
    (("z", "b"), ["INSERT", "SUBSTITUTE", "MATCH"], [CQ, N]),  # x->z carries it
    (("b", "a"), ["INSERT", "SUBSTITUTE", "SUBSTITUTE"], [CQ, N]),
]


@pytest.mark.parametrize("ref,script,want", THREE_VS_TWO)
def test_transfer_three_vs_two(ref, script, want):
    s = align_tokens(["a", "x", "b"], list(ref))
    assert kinds(s) == script
    assert [t.trail for t in transfer_marks(list(trails(N, CQ, N)), s, 2)] == want


@given(
    st.lists(st.sampled_from("abcde"), max_size=10),
    st.lists(st.sampled_from("abcde"), max_size=10),
    st.data(),
)
def test_transfer_never_invents_marks(hyp, ref, data):
    labels = data.draw(
        st.lists(
            st.builds(TokenPrediction, st.sampled_from([N, OQ]), st.sampled_from([N, CQ, CM, PD])),
            min_size=len(hyp),
            max_size=len(hyp),
        )
    )
    out = transfer_marks(labels, align_tokens(hyp, ref), len(ref))
    for m in MARKS:
        before = sum(m in t.marks() for t in labels)
        after = sum(m in t.marks() for t in out)
        assert after <= before
