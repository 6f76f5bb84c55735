"""The sylvester monoid of finite rank.

Letters are positive integers.  Elements are represented canonically by
right-strict binary search trees: ``BST(w)`` inserts the letters of ``w``
from right to left, and the left-to-right postfix reading ``lrp`` of a
tree is a word whose tree is the tree itself.  Two words are equal in the
monoid iff their trees coincide, and conjugate iff they have the same
content.  :func:`certificate` builds an explicit chain of equalities and
cyclic rotations from any word to the sorted word of its content.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from . import kernels
from .words import EMPTY_TOKEN, content, rotate, same_content

SylWord = Tuple[int, ...]


class SylvesterError(ValueError):
    """Bad input word, or an operation outside its domain."""


class InvariantViolation(RuntimeError):
    """An inequality the construction guarantees did not hold."""


@dataclass(frozen=True)
class Node:
    label: int
    left: Optional["Node"] = None
    right: Optional["Node"] = None


Bst = Optional[Node]


def parse_sylvester_word(text: str) -> SylWord:
    """Digit string (``"265415314"``), spaced integers, or ``@``."""
    text = text.strip()
    if text == EMPTY_TOKEN:
        return ()
    parts = text.split()
    if len(parts) == 1:
        parts = list(parts[0])
    try:
        word = tuple(int(p) for p in parts)
    except ValueError:
        raise SylvesterError(f"not a sylvester word: {text!r}") from None
    return as_word(word)


def format_sylvester_word(word: Sequence[int]) -> str:
    if not word:
        return EMPTY_TOKEN
    if all(1 <= a <= 9 for a in word):
        return "".join(map(str, word))
    return " ".join(map(str, word))


def as_word(w) -> SylWord:
    if isinstance(w, str):
        return parse_sylvester_word(w)
    word = tuple(int(a) for a in w)
    for a in word:
        if a < 1:
            raise SylvesterError(f"sylvester letters are positive integers, got {a}")
    return word


# -- trees -------------------------------------------------------------------

def insert(t: Bst, a: int) -> Node:
    """``a . t``: insert ``a`` as a new leaf (left on ties)."""
    if a < 1:
        raise SylvesterError("letters must be >= 1")
    path = []
    node = t
    while node is not None:
        go_left = a <= node.label
        path.append((node, go_left))
        node = node.left if go_left else node.right
    new = Node(a)
    for parent, went_left in reversed(path):
        if went_left:
            new = Node(parent.label, new, parent.right)
        else:
            new = Node(parent.label, parent.left, new)
    return new


def bst_of_word(w) -> Bst:
    t = None
    for a in reversed(as_word(w)):
        t = insert(t, a)
    return t


def lrp(t: Bst) -> SylWord:
    out = []
    stack = [(t, False)]
    while stack:
        node, seen = stack.pop()
        if node is None:
            continue
        if seen:
            out.append(node.label)
        else:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
    return tuple(out)


def tree_size(t: Bst) -> int:
    return len(lrp(t))


def is_bst(t: Bst) -> bool:
    """Check the right-strict search property."""
    def ok(node, lo, hi):
        # labels must lie in (lo, hi]
        if node is None:
            return True
        if (lo is not None and node.label <= lo) or (hi is not None and node.label > hi):
            return False
        return ok(node.left, lo, node.label) and ok(node.right, node.label, hi)
    return ok(t, None, None)


def _spine(t: Node) -> List[Node]:
    path = [t]
    while path[-1].left is not None:
        path.append(path[-1].left)
    return path


def left_branch_length(t: Bst) -> int:
    """Length of the right-subtree-free run ``p_1, ..., p_k`` up the left spine."""
    if t is None:
        raise SylvesterError("left branch length of the empty tree")
    k = 0
    for node in reversed(_spine(t)):
        if node.right is not None:
            break
        k += 1
    return k


def is_left_full(t: Bst) -> bool:
    node = t
    while node is not None:
        if node.right is not None:
            return False
        node = node.left
    return True


def format_tree(t: Bst) -> str:
    """Indented ``(label left right)`` rendering; ``.`` is the empty tree."""
    lines: List[str] = []

    def emit(node, depth, closers):
        pad = "  " * depth
        if node is None:
            lines.append(pad + "." + closers)
        elif node.left is None and node.right is None:
            lines.append(f"{pad}({node.label} . .){closers}")
        else:
            lines.append(f"{pad}({node.label}")
            emit(node.left, depth + 1, "")
            emit(node.right, depth + 1, closers + ")")

    emit(t, 0, "")
    return "\n".join(lines)


# -- the monoid --------------------------------------------------------------

def normal_form(w) -> SylWord:
    return kernels.sylvester_reading(as_word(w))


def equal_sylvester(u, v) -> bool:
    # BST(LRP(T)) = T, so equal readings mean equal trees
    u, v = as_word(u), as_word(v)
    return len(u) == len(v) and kernels.sylvester_reading(u) == kernels.sylvester_reading(v)


def left_full_word(c) -> SylWord:
    """The sorted word ``1^k1 2^k2 ...`` with content ``c``."""
    out: List[int] = []
    for a in sorted(c):
        if c[a] < 0:
            raise SylvesterError("negative count in content")
        out.extend([int(a)] * c[a])
    return tuple(out)


def conjugate_sylvester(u, v) -> bool:
    return same_content(as_word(u), as_word(v))


def schema_neighbors(w) -> List[SylWord]:
    """Words one application of ``cavb = acvb`` (``a <= b < c``) away."""
    return sorted(set(kernels.schema_neighbors(as_word(w))))


# -- certificates ------------------------------------------------------------

@dataclass(frozen=True)
class ChainStep:
    start: SylWord
    equal_form: SylWord
    rotation_amount: int
    rotated: SylWord
    result: SylWord


@dataclass(frozen=True)
class ConjugacyCertificate:
    forward: Tuple[ChainStep, ...]
    backward: Tuple[ChainStep, ...]

    def endpoint(self, x: Sequence[int]) -> SylWord:
        return self.forward[-1].result if self.forward else tuple(x)


def _require(cond, what):
    if not cond:
        raise InvariantViolation(what)


def chain_step(x) -> ChainStep:
    """One induction step: move ``x`` to a word with longer left branch.

    With ``LRP(BST(x)) = p_1..p_k u p_{k+1} v`` where ``u`` reads the right
    subtree of ``p_{k+1}``, and ``u = q^(l-1) w q u'``, the step is

        x  = u p_1..p_{k+1} v                       (same tree)
           ~ u' p_1..p_{k+1} v q^(l-1) w q          (rotation)
           = u' vbar w p_1..p_{k+1} q^s q^l         (same tree)

    where ``s`` counts ``q`` in ``v`` and ``vbar`` is ``v`` without them.
    """
    x = as_word(x)
    t = bst_of_word(x)
    if t is None:
        raise SylvesterError("chain_step needs a nonempty word")
    spine = _spine(t)
    p = spine[::-1]  # p[0] is p_1, p[-1] is the root
    k = 0
    while k < len(p) and p[k].right is None:
        k += 1
    if k == len(p):
        raise SylvesterError("chain_step needs a word whose tree is not left full")
    pk1 = p[k]
    sub = pk1.right
    u = lrp(sub)
    reading = lrp(t)
    ps = tuple(node.label for node in p[:k + 1])
    _require(reading[:k] == ps[:k] and reading[k + len(u)] == pk1.label,
             "reading does not start p_1..p_k u p_{k+1}")
    v = reading[k + len(u) + 1:]

    inner = _spine(sub)
    q = inner[-1].label
    j = len(inner) - 1
    while j > 0 and inner[j - 1].label == q:
        j -= 1
    ell = len(inner) - j
    upper = inner[j]
    _require(all(node.right is None for node in inner[j + 1:]),
             "a q below the uppermost has a right subtree")
    w = lrp(upper.right)
    _require(u[:ell - 1] == (q,) * (ell - 1) and u[ell - 1:ell - 1 + len(w)] == w
             and u[ell - 1 + len(w)] == q, "u does not factor as q^(l-1) w q u'")
    u_rest = u[ell + len(w):]

    _require(pk1.label < q, "p_{k+1} < q")
    _require(all(q <= c for c in v), "q <= every letter of v")
    _require(all(q < c for c in w), "q < every letter of w")
    _require(all(q < c for c in u_rest), "q < every letter of u'")

    s = v.count(q)
    v_bar = tuple(c for c in v if c != q)
    equal_form = u + ps + v
    amount = ell + len(w)
    rotated = u_rest + ps + v + (q,) * (ell - 1) + w + (q,)
    result = u_rest + v_bar + w + ps + (q,) * (s + ell)
    _require(rotate(equal_form, amount) == rotated, "rotation bookkeeping")
    return ChainStep(x, equal_form, amount, rotated, result)


@lru_cache(maxsize=65536)
def _chain(x: SylWord) -> Tuple[ChainStep, ...]:
    steps = []
    word = x
    while not is_left_full(bst_of_word(word)):
        step = chain_step(word)
        steps.append(step)
        word = step.result
        _require(len(steps) <= len(x), "chain longer than the word")
    return tuple(steps)


def chain_to_left_full(x) -> Tuple[ChainStep, ...]:
    return _chain(as_word(x))


def certificate(x, y) -> ConjugacyCertificate:
    """Chains from ``x`` and from ``y`` to their common sorted word."""
    x, y = as_word(x), as_word(y)
    if not same_content(x, y):
        raise SylvesterError("certificate needs words with the same content")
    return ConjugacyCertificate(_chain(x), _chain(y))


def _verify_chain(steps: Iterable[ChainStep], x: SylWord):
    reading = kernels.sylvester_reading
    branch = kernels.sylvester_left_branch
    word = x
    count = 0
    for st in steps:
        count += 1
        if st.start != word or count > len(x):
            return None
        if reading(st.start) != reading(st.equal_form):
            return None
        if not 0 <= st.rotation_amount <= len(st.equal_form):
            return None
        if rotate(st.equal_form, st.rotation_amount) != tuple(st.rotated):
            return None
        if reading(st.rotated) != reading(st.result):
            return None
        if branch(st.result) <= branch(st.start):
            return None
        word = tuple(st.result)
    return word


def verify_certificate(c: ConjugacyCertificate, x, y) -> bool:
    """Re-check every claim of ``c`` from scratch; False on any violation."""
    try:
        x, y = as_word(x), as_word(y)
    except SylvesterError:
        return False
    end_x = _verify_chain(c.forward, x)
    end_y = _verify_chain(c.backward, y)
    if end_x is None or end_y is None or end_x != end_y:
        return False
    return not end_x or kernels.sylvester_left_branch(end_x) == len(end_x)


def format_certificate(c: ConjugacyCertificate) -> str:
    f = format_sylvester_word
    lines = []
    for name, chain in (("forward", c.forward), ("backward", c.backward)):
        lines.append(f"{name}: {len(chain)} step(s)")
        for i, st in enumerate(chain, 1):
            lines.append(f"  step {i}")
            lines.append(f"    start:           {f(st.start)}")
            lines.append(f"    equal_form:      {f(st.equal_form)}")
            lines.append(f"    rotation_amount: {st.rotation_amount}")
            lines.append(f"    rotated:         {f(st.rotated)}")
            lines.append(f"    result:          {f(st.result)}")
    return "\n".join(lines)


__all__ = [
    "Node", "Bst", "ChainStep", "ConjugacyCertificate", "SylvesterError",
    "InvariantViolation", "insert", "bst_of_word", "lrp", "normal_form",
    "equal_sylvester", "left_branch_length", "is_left_full", "left_full_word",
    "conjugate_sylvester", "chain_step", "certificate", "verify_certificate",
    "schema_neighbors", "format_tree", "parse_sylvester_word",
    "format_sylvester_word", "content", "is_bst", "chain_to_left_full",
    "format_certificate",
]
