"""Symbols, alphabets and words.

A word is a plain tuple of symbol tokens.  Tuples are immutable, hashable
and cheap to slice, which is all the rest of the package needs; the
:class:`Alphabet` is only consulted when text is parsed or when a stable
enumeration order is required.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence, Tuple

Word = Tuple[str, ...]

EMPTY_TOKEN = "@"
RESERVED = frozenset("@=#:<~")


class WordError(ValueError):
    """Raised for malformed symbols, alphabets or word text."""


def check_token(token: str) -> str:
    if not token:
        raise WordError("empty symbol")
    if any(ch.isspace() for ch in token):
        raise WordError(f"symbol {token!r} contains whitespace")
    bad = RESERVED.intersection(token)
    if bad or "->" in token:
        raise WordError(f"symbol {token!r} contains reserved characters")
    return token


class Alphabet:
    """An ordered finite set of symbol tokens.

    The order is the enumeration ``a_1, ..., a_n``; :meth:`index` is
    1-based to match that convention.
    """

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(check_token(str(s)) for s in symbols)
        index = {}
        for i, s in enumerate(symbols):
            if s in index:
                raise WordError(f"duplicate symbol {s!r} in alphabet")
            index[s] = i
        self.symbols = symbols
        self._index = index

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, token):
        return token in self._index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet({' '.join(self.symbols)!r})"

    def index(self, token: str) -> int:
        """1-based enumeration index of ``token``."""
        try:
            return self._index[token] + 1
        except KeyError:
            raise WordError(f"unknown symbol {token!r}") from None

    @property
    def compact(self) -> bool:
        """True when every token is a single character."""
        return all(len(s) == 1 for s in self.symbols)

    def encode(self, word: Sequence[str]) -> Tuple[int, ...]:
        """Map a word to 0-based symbol codes (the kernels work on ints)."""
        idx = self._index
        try:
            return tuple(idx[a] for a in word)
        except KeyError as exc:
            raise WordError(f"unknown symbol {exc.args[0]!r}") from None

    def decode(self, codes: Iterable[int]) -> Word:
        syms = self.symbols
        return tuple(syms[c] for c in codes)

    def sort_key(self, word: Sequence[str]):
        """Key ordering words by length, then lexicographically by enumeration."""
        return (len(word), self.encode(word))

    def sorted(self, words: Iterable[Sequence[str]]) -> list:
        return sorted(words, key=self.sort_key)

    def words_of_length(self, n: int):
        """All words of length ``n`` in canonical order."""
        from itertools import product

        return (tuple(w) for w in product(self.symbols, repeat=n))

    def words_up_to(self, n: int):
        for length in range(n + 1):
            yield from self.words_of_length(length)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse word text over ``alphabet``.

    Accepts whitespace-separated tokens, the lone token ``@`` for the empty
    word, or (for single-character alphabets only) an unseparated string.
    """
    tokens = text.split()
    if not tokens:
        raise WordError("empty word text (write '@' for the empty word)")
    if EMPTY_TOKEN in tokens:
        if len(tokens) > 1:
            raise WordError("'@' cannot be combined with other tokens")
        return ()
    if len(tokens) == 1 and tokens[0] not in alphabet and alphabet.compact:
        tokens = list(tokens[0])
    for pos, tok in enumerate(tokens, 1):
        if tok not in alphabet:
            raise WordError(f"unknown symbol {tok!r} at position {pos}")
    return tuple(tokens)


def format_word(word: Sequence[str], compact: bool = False) -> str:
    """Canonical printer; :func:`parse_word` inverts it."""
    if not word:
        return EMPTY_TOKEN
    return ("" if compact else " ").join(map(str, word))


def content(word: Sequence) -> Counter:
    """Letter counts of ``word``; absent letters have count 0."""
    return Counter(word)


def same_content(u: Sequence, v: Sequence) -> bool:
    return len(u) == len(v) and Counter(u) == Counter(v)


def rotate(word: Sequence, i: int):
    """Return ``v + u`` where ``word = u + v`` and ``len(u) == i``."""
    if not 0 <= i <= len(word):
        raise IndexError(f"rotation {i} out of range for word of length {len(word)}")
    return tuple(word[i:]) + tuple(word[:i])


def rotations(word: Sequence) -> set:
    """All cyclic rotations of ``word`` (``word`` itself included)."""
    w = tuple(word)
    return {w[i:] + w[:i] for i in range(max(len(w), 1))}
