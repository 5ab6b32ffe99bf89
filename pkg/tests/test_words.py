import pytest
from hypothesis import given, strategies as st

from traintrack.words import (AlphabetMismatch, BasisMorphism, Letter, MalformedInput, Word,
                              apply_morphism, compose, iterate_morphism, reduce_word,
                              verify_inverse_pair)

RANK = 3
letters = st.builds(Letter, st.integers(0, RANK - 1), st.sampled_from([1, -1]))
raw_words = st.lists(letters, max_size=30)

BK = BasisMorphism.from_strings(["b", "caaa", "caa"])
BK_INV = BasisMorphism.from_strings(["c'b", "a", "cb'cb'c"])


def is_reduced(w):
    return all(a != b.inverse() for a, b in zip(w, w[1:]))


@given(raw_words)
def test_reduction_is_reduced_and_idempotent(raw):
    w = reduce_word(raw)
    assert is_reduced(w.letters)
    assert reduce_word(w.letters) == w


@given(raw_words, raw_words)
def test_reduction_is_a_homomorphism(u, v):
    assert reduce_word(u + v) == reduce_word(u) * reduce_word(v)


@given(raw_words)
def test_inverse_cancels(raw):
    w = reduce_word(raw)
    assert len(w * w.inverse()) == 0
    assert w.inverse().inverse() == w


def test_reduce_examples():
    a, b = Letter(0), Letter(1)
    assert reduce_word([a, b, b.inverse(), a.inverse()]).letters == ()
    assert reduce_word([a, a, b]).letters == (a, a, b)


def test_reduce_rejects_out_of_range():
    with pytest.raises(AlphabetMismatch):
        reduce_word([Letter(5)], rank=3)


def test_parse_and_format_round_trip():
    w = Word.parse("c'b")
    assert w.letters == (Letter(2, -1), Letter(1, 1))
    assert str(w) == "c'b"
    assert w.format() == "c' b"
    assert Word.parse("c' b") == w


def test_parse_rejects_unknown_symbol():
    with pytest.raises((MalformedInput, AlphabetMismatch)):
        Word.parse("az", ("a", "b", "c"))


def test_morphism_rejects_empty_image():
    with pytest.raises(MalformedInput):
        BasisMorphism.from_strings(["a", ""])


def test_morphism_rejects_unreduced_image():
    with pytest.raises(MalformedInput):
        BasisMorphism(2, (Word((Letter(0), Letter(0, -1), Letter(1))), Word.parse("b")))


def test_bk_inverse_pair():
    assert verify_inverse_pair(BK, BK_INV)
    assert verify_inverse_pair(BK_INV, BK)
    assert not verify_inverse_pair(BK, BK)


def test_tribonacci_inverse_on_basis():
    trib = BasisMorphism.from_strings(["ab", "ac", "a"])
    inv = BasisMorphism.from_strings(["c", "c'a", "c'b"])
    assert verify_inverse_pair(trib, inv)


@given(raw_words)
def test_bk_inverse_on_words(raw):
    w = reduce_word(raw)
    assert apply_morphism(BK_INV, apply_morphism(BK, w)) == w


@given(raw_words, st.integers(0, 3))
def test_iteration_matches_composition(raw, n):
    w = reduce_word(raw)
    m = BasisMorphism.identity(RANK)
    for _ in range(n):
        m = compose(BK, m)
    assert iterate_morphism(BK, w, n) == apply_morphism(m, w)


def test_positive_images():
    assert BK.is_positive()
    assert not BK_INV.is_positive()
    assert iterate_morphism(BK, Word.parse("a"), 2) == Word.parse("caaa")
