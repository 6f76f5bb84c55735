"""Embedding homogeneous monoids into two-letter multihomogeneous ones.

The letter ``a_i`` of an ``n``-letter alphabet maps to
``x x y^i x y^(n-i+1)``.  Every image has content ``{x: 3, y: n+1}``, so
the image of a homogeneous presentation is multihomogeneous, and ``xx``
occurs in an image word only at the start of a letter block, which makes
the map uniquely decodable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .presentation import (
    DEFAULT_BUDGET,
    ClassBudget,
    Presentation,
    UnsupportedPresentation,
    equal_in_monoid,
)
from .words import Alphabet, Word

X, Y = "x", "y"
TARGET = Alphabet((X, Y))


def phi_letter(i: int, n: int) -> Word:
    if not 1 <= i <= n:
        raise IndexError(f"letter index {i} outside 1..{n}")
    return (X, X) + (Y,) * i + (X,) + (Y,) * (n - i + 1)


def phi_word(w: Sequence[str], alphabet: Alphabet) -> Word:
    n = len(alphabet)
    out: List[str] = []
    for a in w:
        out.extend(phi_letter(alphabet.index(a), n))
    return tuple(out)


def decode_phi(v: Sequence[str], n: int) -> Optional[Tuple[int, ...]]:
    """Preimage of ``v`` as 1-based letter indices, or None if ``v`` is no image."""
    v = tuple(v)
    block = n + 4
    if len(v) % block:
        return None
    out = []
    for start in range(0, len(v), block):
        chunk = v[start:start + block]
        if chunk[:2] != (X, X) or chunk.count(X) != 3:
            return None
        i = chunk.index(X, 2) - 2
        if not 1 <= i <= n or chunk != phi_letter(i, n):
            return None
        out.append(i)
    return tuple(out)


def decode_phi_word(v: Sequence[str], alphabet: Alphabet) -> Optional[Word]:
    idx = decode_phi(v, len(alphabet))
    if idx is None:
        return None
    return tuple(alphabet.symbols[i - 1] for i in idx)


def embed_presentation(p: Presentation) -> Presentation:
    if not p.homogeneous:
        raise UnsupportedPresentation("only homogeneous presentations embed")
    rels = [(phi_word(r.lhs, p.alphabet), phi_word(r.rhs, p.alphabet)) for r in p.relations]
    return Presentation(TARGET, rels)


def target_renaming(alphabet: Alphabet) -> Dict[str, str]:
    """Source names shown next to their images, moved off ``x``/``y``.

    The images never contain source tokens, so this only matters for the
    header that lists which source letter maps to which block.
    """
    taken = set(alphabet)
    out = {}
    for a in alphabet:
        if a in (X, Y):
            k = 1
            while f"{a}_src{k}" in taken:
                k += 1
            out[a] = f"{a}_src{k}"
            taken.add(out[a])
        else:
            out[a] = a
    return out


def embedding_header(p: Presentation) -> List[str]:
    n = len(p.alphabet)
    names = target_renaming(p.alphabet)
    lines = [f"image of a {n}-letter homogeneous presentation under a_i -> x x y^i x y^(n-i+1)"]
    for i, a in enumerate(p.alphabet, 1):
        note = f" (source letter {a!r} renamed)" if names[a] != a else ""
        lines.append(f"{names[a]} -> {' '.join(phi_letter(i, n))}{note}")
    return lines


@dataclass
class EmbeddingReport:
    ok: bool
    pairs_checked: int
    counterexample: Optional[Tuple[Word, Word]] = None

    def __bool__(self):
        return self.ok


def desk_check_embedding(p: Presentation, max_len: int,
                         budget: ClassBudget = DEFAULT_BUDGET) -> EmbeddingReport:
    """Check ``u = v in M  <=>  phi(u) = phi(v) in N`` for all ``|u| = |v| <= max_len``."""
    if not p.homogeneous:
        raise UnsupportedPresentation("only homogeneous presentations embed")
    image = embed_presentation(p)
    checked = 0
    for n in range(max_len + 1):
        words = list(p.alphabet.words_of_length(n))
        images = {w: phi_word(w, p.alphabet) for w in words}
        for i, u in enumerate(words):
            for v in words[i:]:
                checked += 1
                src = equal_in_monoid(u, v, p, budget)
                img = equal_in_monoid(images[u], images[v], image, budget)
                if src != img:
                    return EmbeddingReport(False, checked, (u, v))
    return EmbeddingReport(True, checked)
