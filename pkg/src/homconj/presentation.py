"""Homogeneous monoid presentations.

Because relations preserve length, the class ``W_x`` of every word is a
finite subset of ``A^|x|`` and can be enumerated by breadth-first search.
That gives the word problem, and iterating "take a class, rotate its
members" to a fixpoint gives the p*-conjugacy class ``P_x``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from . import kernels
from .words import Alphabet, Word, WordError, format_word, parse_word, same_content


class PresentationError(ValueError):
    """Malformed presentation text or relation."""


class UnsupportedPresentation(ValueError):
    """An algorithm that needs length-preserving relations got other ones."""


class BudgetExceeded(RuntimeError):
    """A word class grew past ``ClassBudget.max_class_size``."""


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        if not self.lhs and not self.rhs:
            raise PresentationError("relation with both sides empty")

    def __iter__(self):
        return iter((self.lhs, self.rhs))


@dataclass(frozen=True)
class ClassBudget:
    max_class_size: int = 100_000
    max_witness_length: int = 3

    def __post_init__(self):
        if self.max_class_size < 1:
            raise ValueError("max_class_size must be positive")
        if self.max_witness_length < 0:
            raise ValueError("max_witness_length must be non-negative")


DEFAULT_BUDGET = ClassBudget()


class Presentation:
    """A finite alphabet with an ordered list of defining relations."""

    def __init__(self, alphabet: Alphabet | Iterable[str], relations: Iterable = ()):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        self.alphabet = alphabet
        rels = []
        for rel in relations:
            lhs, rhs = (tuple(side) for side in rel)
            for side in (lhs, rhs):
                for a in side:
                    if a not in alphabet:
                        raise PresentationError(f"relation uses unknown symbol {a!r}")
            rels.append(Relation(lhs, rhs))
        self.relations: List[Relation] = rels
        self.homogeneous = all(len(r.lhs) == len(r.rhs) for r in rels)
        self.multihomogeneous = all(same_content(r.lhs, r.rhs) for r in rels)
        self._index = None

    def __repr__(self):
        rels = ", ".join(f"{format_word(r.lhs)} = {format_word(r.rhs)}" for r in self.relations)
        return f"Presentation<{' '.join(self.alphabet)} | {rels}>"

    @property
    def index(self):
        if self._index is None:
            enc = self.alphabet.encode
            self._index = kernels.side_index(
                [(enc(r.lhs), enc(r.rhs)) for r in self.relations]
            )
        return self._index

    def require_homogeneous(self):
        if not self.homogeneous:
            raise UnsupportedPresentation("presentation is not homogeneous")

    def canonical(self, words: Iterable[Sequence[str]]) -> List[Word]:
        return self.alphabet.sorted(tuple(w) for w in words)


def is_homogeneous(p: Presentation) -> bool:
    return p.homogeneous


def is_multihomogeneous(p: Presentation) -> bool:
    return p.multihomogeneous


def neighbors(w: Sequence[str], p: Presentation) -> List[Word]:
    """Words one relation application (either direction) away from ``w``."""
    p.require_homogeneous()
    codes = p.alphabet.encode(w)
    out = kernels.relation_neighbors(codes, p.index)
    return p.canonical(p.alphabet.decode(u) for u in out)


def _class_codes(codes, p: Presentation, budget: ClassBudget):
    found = kernels.class_closure(codes, p.index, budget.max_class_size)
    if found is None:
        raise BudgetExceeded(
            f"class of a length-{len(codes)} word exceeds {budget.max_class_size} words"
        )
    return found


def word_class(x: Sequence[str], p: Presentation, budget: ClassBudget = DEFAULT_BUDGET) -> List[Word]:
    """``W_x``: every word equal to ``x`` in the monoid, in canonical order."""
    p.require_homogeneous()
    found = _class_codes(p.alphabet.encode(x), p, budget)
    return p.canonical(p.alphabet.decode(u) for u in found)


def equal_in_monoid(x, y, p: Presentation, budget: ClassBudget = DEFAULT_BUDGET) -> bool:
    p.require_homogeneous()
    if len(x) != len(y):
        return False
    cx, cy = p.alphabet.encode(x), p.alphabet.encode(y)
    if cx == cy:
        return True
    return cy in _class_codes(cx, p, budget)


def pstar_class(x: Sequence[str], p: Presentation, budget: ClassBudget = DEFAULT_BUDGET) -> List[Word]:
    """``P_x``: the p*-conjugacy class of ``x``.

    ``P_x`` is a union of word classes closed under rotating any member,
    so each class is computed once and every rotation of its members is
    queued.  The union is bounded by ``budget.max_class_size``.
    """
    p.require_homogeneous()
    start = p.alphabet.encode(x)
    n = len(start)
    members = set()
    frontier = [start]
    while frontier:
        t = frontier.pop()
        if t in members:
            continue
        cls = _class_codes(t, p, budget)
        members |= cls
        if len(members) > budget.max_class_size:
            raise BudgetExceeded(f"p*-class exceeds {budget.max_class_size} words")
        for m in cls:
            for i in range(1, n):
                r = m[i:] + m[:i]
                if r not in members:
                    frontier.append(r)
    return p.canonical(p.alphabet.decode(u) for u in members)


def pstar_conjugate(x, y, p: Presentation, budget: ClassBudget = DEFAULT_BUDGET) -> bool:
    p.require_homogeneous()
    if len(x) != len(y):
        return False
    if tuple(x) == tuple(y):
        return True
    return tuple(y) in set(pstar_class(x, p, budget))


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ConjugacyAnswer:
    verdict: Verdict
    g: Optional[Word] = None
    h: Optional[Word] = None


def bounded_conjugacy_search(kind: str, x, y, p: Presentation,
                             budget: ClassBudget = DEFAULT_BUDGET) -> ConjugacyAnswer:
    """Look for witnesses of ``x ~l y`` (``kind="left"``) or ``x ~o y`` (``kind="o"``).

    Candidates run over all words of length at most
    ``budget.max_witness_length`` in canonical order; the empty word plays
    the adjoined identity.  The answer is YES with witnesses or UNKNOWN,
    never NO.
    """
    if kind not in ("left", "o"):
        raise ValueError(f"unknown conjugacy kind {kind!r}")
    p.require_homogeneous()
    x, y = tuple(x), tuple(y)
    if len(x) != len(y):
        return ConjugacyAnswer(Verdict.UNKNOWN)
    g = h = None
    for cand in p.alphabet.words_up_to(budget.max_witness_length):
        if g is None and equal_in_monoid(x + cand, cand + y, p, budget):
            g = cand
        if kind == "o" and h is None and equal_in_monoid(cand + x, y + cand, p, budget):
            h = cand
        if g is not None and (kind == "left" or h is not None):
            break
    if g is None or (kind == "o" and h is None):
        return ConjugacyAnswer(Verdict.UNKNOWN)
    return ConjugacyAnswer(Verdict.YES, g, h)


# -- file format -------------------------------------------------------------

def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        # '#' is reserved in symbols, so anything after it is a comment
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise PresentationError(f"line {lineno}: expected 'key: value'")
        yield lineno, key.strip(), rest.strip()


def parse_alphabet_and(text: str, item_key: str, separator: str):
    """Shared reader for presentation and rewrite-system files.

    Returns the alphabet and the ``(lhs, rhs)`` word pairs of every
    ``item_key`` line, split on ``separator``.
    """
    alphabet = None
    raw_items = []
    for lineno, key, rest in _content_lines(text):
        if key == "alphabet":
            if alphabet is not None:
                raise PresentationError(f"line {lineno}: second alphabet line")
            try:
                alphabet = Alphabet(rest.split())
            except WordError as exc:
                raise PresentationError(f"line {lineno}: {exc}") from None
        elif key == item_key:
            lhs, sep, rhs = rest.partition(separator)
            if not sep:
                raise PresentationError(f"line {lineno}: expected 'WORD {separator} WORD'")
            raw_items.append((lineno, lhs.strip(), rhs.strip()))
        else:
            raise PresentationError(f"line {lineno}: unknown key {key!r}")
    if alphabet is None:
        raise PresentationError("missing alphabet line")
    items = []
    for lineno, lhs, rhs in raw_items:
        try:
            items.append((parse_word(lhs, alphabet), parse_word(rhs, alphabet)))
        except WordError as exc:
            raise PresentationError(f"line {lineno}: {exc}") from None
    return alphabet, items


def parse_presentation(text: str) -> Presentation:
    alphabet, rels = parse_alphabet_and(text, "rel", "=")
    return Presentation(alphabet, rels)


def load_presentation(path) -> Presentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


def format_presentation(p: Presentation, header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append("alphabet: " + " ".join(p.alphabet))
    for r in p.relations:
        lines.append(f"rel: {format_word(r.lhs)} = {format_word(r.rhs)}")
    return "\n".join(lines) + "\n"
