import pytest
from hypothesis import given, settings, strategies as st

import oracles
from homconj import presentation as pr
from homconj.presentation import ClassBudget, Presentation, Verdict


def P(rels, letters="ab"):
    return Presentation(list(letters), [(tuple(a), tuple(b)) for a, b in rels])


COMM = P([("ab", "ba")])
AAB = P([("aab", "aba")])
FREE = P([])
T = tuple


def test_flags():
    assert pr.is_homogeneous(COMM) and pr.is_multihomogeneous(COMM)
    aa = P([("aa", "ab")])
    assert pr.is_homogeneous(aa) and not pr.is_multihomogeneous(aa)
    assert not pr.is_homogeneous(P([("a", "ab")]))
    assert pr.is_multihomogeneous(P([("211", "121")], "12"))


def test_relation_validation():
    with pytest.raises(pr.PresentationError):
        P([("ac", "ca")])
    with pytest.raises(pr.PresentationError):
        Presentation(["a"], [((), ())])


def test_neighbors_and_classes():
    assert pr.neighbors(T("ab"), COMM) == [T("ba")]
    assert pr.neighbors(T("aab"), COMM) == [T("aba")]
    assert pr.neighbors(T("bb"), COMM) == []
    assert pr.word_class(T("ab"), COMM) == [T("ab"), T("ba")]
    assert pr.word_class(T("aab"), COMM) == [T("aab"), T("aba"), T("baa")]
    assert pr.word_class(T("a"), COMM) == [T("a")]


def test_equality():
    assert pr.equal_in_monoid(T("ab"), T("ba"), COMM)
    assert not pr.equal_in_monoid(T("ab"), T("aa"), COMM)
    assert not pr.equal_in_monoid(T("a"), T("aa"), COMM)


def test_pstar_examples():
    assert pr.pstar_class(T("aab"), COMM) == [T("aab"), T("aba"), T("baa")]
    assert pr.pstar_class(T("a"), COMM) == [T("a")]
    assert pr.pstar_class(T("ab"), FREE) == [T("ab"), T("ba")]
    assert pr.pstar_conjugate(T("aab"), T("baa"), COMM)
    assert not pr.pstar_conjugate(T("aab"), T("abb"), COMM)
    assert pr.pstar_conjugate(T("ab"), T("ab"), AAB)


def test_non_homogeneous_rejected():
    p = P([("a", "ab")])
    for call in (lambda: pr.word_class(T("a"), p), lambda: pr.pstar_class(T("a"), p),
                 lambda: pr.equal_in_monoid(T("a"), T("a"), p)):
        with pytest.raises(pr.UnsupportedPresentation):
            call()


def test_budget():
    with pytest.raises(pr.BudgetExceeded):
        pr.word_class(T("aaabbb"), COMM, ClassBudget(max_class_size=5))
    with pytest.raises(pr.BudgetExceeded):
        pr.pstar_class(T("aaabbb"), FREE, ClassBudget(max_class_size=5))
    with pytest.raises(ValueError):
        ClassBudget(max_class_size=0)


def test_bounded_search():
    ans = pr.bounded_conjugacy_search("left", T("ab"), T("ba"), COMM, ClassBudget(max_witness_length=0))
    assert ans.verdict is Verdict.YES and ans.g == ()
    ans = pr.bounded_conjugacy_search("o", T("aab"), T("aab"), AAB)
    assert (ans.verdict, ans.g, ans.h) == (Verdict.YES, (), ())
    ans = pr.bounded_conjugacy_search("o", T("a"), T("b"), FREE, ClassBudget(max_witness_length=2))
    assert ans.verdict is Verdict.UNKNOWN
    # a word and its rotation in a free monoid: ab.a = a.ba
    ans = pr.bounded_conjugacy_search("o", T("ab"), T("ba"), FREE)
    assert ans.verdict is Verdict.YES
    x, y = T("ab"), T("ba")
    assert x + ans.g == ans.g + y and ans.h + x == y + ans.h
    with pytest.raises(ValueError):
        pr.bounded_conjugacy_search("p", x, y, FREE)


def test_file_roundtrip(tmp_path):
    text = "# comment\nalphabet: a b\n\nrel: a a b = a b a  # inline\n"
    p = pr.parse_presentation(text)
    assert [(r.lhs, r.rhs) for r in p.relations] == [(T("aab"), T("aba"))]
    out = pr.format_presentation(p, header=["hello"])
    assert out.startswith("# hello\n")
    again = pr.parse_presentation(out)
    assert [(r.lhs, r.rhs) for r in again.relations] == [(r.lhs, r.rhs) for r in p.relations]


@pytest.mark.parametrize("text", [
    "rel: a = b\n",
    "alphabet: a\nalphabet: b\n",
    "alphabet: a\nrel: a\n",
    "alphabet: a\nrel: a = c\n",
    "alphabet: a\nfoo: bar\n",
    "alphabet: a\nnonsense\n",
])
def test_file_errors(text):
    with pytest.raises(pr.PresentationError):
        pr.parse_presentation(text)


rels2 = st.lists(st.tuples(st.text("ab", min_size=1, max_size=3), st.text("ab", min_size=1, max_size=3))
                 .filter(lambda r: len(r[0]) == len(r[1])), max_size=3)
word = st.text("ab", max_size=6)


@settings(max_examples=80, deadline=None)
@given(rels2, word)
def test_class_matches_oracle(rels, w):
    p = P(rels)
    rr = [(T(a), T(b)) for a, b in rels]
    assert set(pr.word_class(T(w), p)) == oracles.w_class(w, rr)
    assert set(pr.pstar_class(T(w), p)) == oracles.pstar_by_layers(w, rr)


@settings(max_examples=80, deadline=None)
@given(rels2, word)
def test_pstar_class_is_closed(rels, w):
    p = P(rels)
    cls = set(pr.pstar_class(T(w), p))
    for u in cls:
        assert set(oracles.rotations(u)) <= cls
        assert set(pr.neighbors(u, p)) <= cls
