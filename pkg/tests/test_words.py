import pytest
from hypothesis import given, strategies as st

from homconj.words import (
    Alphabet, WordError, content, format_word, parse_word, rotate, rotations, same_content,
)

AB = Alphabet("ab")


def test_alphabet_index_is_one_based():
    assert AB.index("a") == 1 and AB.index("b") == 2
    with pytest.raises(WordError):
        AB.index("c")


def test_duplicate_and_reserved_symbols_rejected():
    with pytest.raises(WordError):
        Alphabet(["a", "a"])
    for bad in ["@", "a=b", "#", "x->y"]:
        with pytest.raises(WordError):
            Alphabet([bad])


def test_parse_forms():
    assert parse_word("a b a", AB) == ("a", "b", "a")
    assert parse_word("aba", AB) == ("a", "b", "a")
    assert parse_word("@", AB) == ()
    multi = Alphabet(["s", "s'", "q0"])
    assert parse_word("s' q0 s", multi) == ("s'", "q0", "s")


@pytest.mark.parametrize("text", ["a c", "abc", "@ a"])
def test_parse_errors(text):
    with pytest.raises(WordError):
        parse_word(text, AB)


def test_format_roundtrip():
    assert format_word(()) == "@"
    assert format_word(("a", "b")) == "a b"
    assert format_word(("a", "b"), compact=True) == "ab"


def test_rotate():
    assert rotate(("a", "b", "c"), 1) == ("b", "c", "a")
    assert rotate(("a", "b", "c"), 0) == ("a", "b", "c")
    assert rotate(("a", "b", "c"), 3) == ("a", "b", "c")
    with pytest.raises(IndexError):
        rotate(("a",), 2)


def test_canonical_order():
    words = list(AB.words_up_to(2))
    assert words == [(), ("a",), ("b",), ("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]
    assert AB.sorted([("b",), ("a", "a"), ()]) == [(), ("b",), ("a", "a")]


words = st.lists(st.sampled_from("abc"), max_size=8).map(tuple)


@given(words)
def test_rotations_keep_content(w):
    for r in rotations(w):
        assert same_content(r, w)
        assert content(r) == content(w)


@given(words, st.data())
def test_rotation_composition(w, data):
    i = data.draw(st.integers(0, len(w)))
    j = data.draw(st.integers(0, len(w)))
    assert rotate(rotate(w, i), j) == rotate(w, (i + j) % len(w) if w else 0)


@given(words)
def test_parse_inverts_format(w):
    alpha = Alphabet("abc")
    assert parse_word(format_word(w), alpha) == w
    assert parse_word(format_word(w, compact=True) or "@", alpha) == w
