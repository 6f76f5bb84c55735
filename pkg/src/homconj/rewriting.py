"""Finite string rewriting systems.

Reduction is deterministic: the leftmost redex is rewritten, and among
rules matching there the lowest-indexed one wins.  Completeness is checked,
never repaired, as "rules decrease in a length-lexicographic order" plus
"every critical pair joins", which together give confluence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import kernels
from .presentation import PresentationError, parse_alphabet_and
from .words import Alphabet, Word, format_word


class RewriteError(ValueError):
    """Malformed rule, rewrite-system file or order file."""


class NonTerminationSuspected(RuntimeError):
    """Reduction did not finish within the step budget."""

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class OrderConfigError(ValueError):
    """A letter used by the system is missing from the letter order."""


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: Word
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.lhs:
            raise RewriteError("rule with empty left-hand side")

    def __str__(self):
        return f"{format_word(self.lhs)} -> {format_word(self.rhs)}"


class RewriteSystem:
    def __init__(self, alphabet: Alphabet | Iterable[str], rules: Iterable):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        self.alphabet = alphabet
        out = []
        for r in rules:
            if not isinstance(r, Rule):
                r = Rule(tuple(r[0]), tuple(r[1]))
            for a in r.lhs + r.rhs:
                if a not in alphabet:
                    raise RewriteError(f"rule {r} uses unknown symbol {a!r}")
            out.append(r)
        self.rules: List[Rule] = out
        self._table = None

    def __len__(self):
        return len(self.rules)

    @property
    def table(self):
        if self._table is None:
            enc = self.alphabet.encode
            self._table = kernels.compile_rules([(enc(r.lhs), enc(r.rhs)) for r in self.rules])
        return self._table

    def encode(self, w) -> Tuple[int, ...]:
        return self.alphabet.encode(w)

    def decode(self, codes) -> Word:
        return self.alphabet.decode(codes)


def reduce_once(w: Sequence[str], rs: RewriteSystem) -> Optional[Word]:
    out = kernels.reduce_once(rs.encode(w), rs.table)
    return None if out is None else rs.decode(out)


def normal_form_rw(w: Sequence[str], rs: RewriteSystem, max_steps: int = 100_000) -> Word:
    codes, steps, done = kernels.normal_form(rs.encode(w), rs.table, max_steps)
    if not done:
        raise NonTerminationSuspected(
            f"no normal form after {max_steps} rewriting steps", rs.decode(codes)
        )
    return rs.decode(codes)


def is_irreducible(w: Sequence[str], rs: RewriteSystem) -> bool:
    return reduce_once(w, rs) is None


def rewrite_at(w: Sequence[str], rule: Rule, pos: int) -> Word:
    w = tuple(w)
    if w[pos:pos + len(rule.lhs)] != rule.lhs:
        raise RewriteError(f"rule {rule} does not match at position {pos}")
    return w[:pos] + rule.rhs + w[pos + len(rule.lhs):]


# -- critical pairs ------------------------------------------------------------

@dataclass(frozen=True)
class CriticalPair:
    source: Word
    left_result: Word
    right_result: Word
    rule_indices: Tuple[int, int]
    positions: Tuple[int, int]
    kind: str  # "overlap" or "containment"


def critical_pairs(rs: RewriteSystem) -> List[CriticalPair]:
    """All overlap and containment pairs, ordered by rule pair then source."""
    rules = rs.rules
    by_prefix: Dict[Word, List[int]] = {}
    by_lhs: Dict[Word, List[int]] = {}
    for j, r in enumerate(rules):
        by_lhs.setdefault(r.lhs, []).append(j)
        for t in range(1, len(r.lhs)):
            by_prefix.setdefault(r.lhs[:t], []).append(j)

    pairs = []
    for i, ri in enumerate(rules):
        li = ri.lhs
        n = len(li)
        # proper overlaps: suffix of li (length t) = prefix of lj, both proper
        for t in range(1, n):
            for j in by_prefix.get(li[n - t:], ()):
                lj = rules[j].lhs
                if len(lj) <= t:
                    continue
                source = li + lj[t:]
                pairs.append(CriticalPair(
                    source,
                    ri.rhs + lj[t:],
                    li[:n - t] + rules[j].rhs,
                    (i, j), (0, n - t), "overlap",
                ))
        # containments: lj is a factor of li
        for p in range(n):
            for m in range(1, n - p + 1):
                for j in by_lhs.get(li[p:p + m], ()):
                    if m == n and j <= i:
                        continue  # trivial, or counted once for equal sides
                    pairs.append(CriticalPair(
                        li,
                        ri.rhs,
                        li[:p] + rules[j].rhs + li[p + m:],
                        (i, j), (0, p), "containment",
                    ))
    enc = rs.alphabet.encode
    pairs.sort(key=lambda c: (c.rule_indices, len(c.source), enc(c.source), c.positions))
    return pairs


@dataclass
class ConfluenceReport:
    ok: bool
    pairs_checked: int
    # (pair, left normal form, right normal form); the right entry is None
    # when reduction ran out of steps and the left one is the partial word
    failures: List[Tuple[CriticalPair, Word, Optional[Word]]]

    def __bool__(self):
        return self.ok


def is_locally_confluent(rs: RewriteSystem, max_steps: int = 100_000,
                         pairs: Optional[List[CriticalPair]] = None) -> ConfluenceReport:
    if pairs is None:
        pairs = critical_pairs(rs)
    failures = []
    for cp in pairs:
        try:
            a = normal_form_rw(cp.left_result, rs, max_steps)
            b = normal_form_rw(cp.right_result, rs, max_steps)
        except NonTerminationSuspected as exc:
            # no verdict on joinability within budget counts as a failure
            failures.append((cp, exc.partial, None))
            continue
        if a != b:
            failures.append((cp, a, b))
    return ConfluenceReport(not failures, len(pairs), failures)


# -- letter orders -------------------------------------------------------------

class LetterOrder:
    """A strict partial order on equivalence classes of letters."""

    def __init__(self, classes: Iterable[Iterable[str]] = (), less: Iterable[Tuple[str, str]] = ()):
        self._class: Dict[str, int] = {}
        self.classes: List[FrozenSet[str]] = []
        for cls in classes:
            self._add_class(cls)
        less = list(less)
        for a, b in less:
            for tok in (a, b):
                if tok not in self._class:
                    self._add_class([tok])
        n = len(self.classes)
        reach = [[False] * n for _ in range(n)]
        for a, b in less:
            reach[self._class[a]][self._class[b]] = True
        for k in range(n):
            rk = reach[k]
            for i in range(n):
                if reach[i][k]:
                    ri = reach[i]
                    for j in range(n):
                        if rk[j]:
                            ri[j] = True
        for i in range(n):
            if reach[i][i]:
                members = " ".join(sorted(self.classes[i]))
                raise RewriteError(f"order is cyclic through class {{{members}}}")
        self._less = reach

    def _add_class(self, cls):
        cls = frozenset(cls)
        if not cls:
            return
        idx = len(self.classes)
        for tok in cls:
            if tok in self._class:
                raise RewriteError(f"letter {tok!r} is in two order classes")
            self._class[tok] = idx
        self.classes.append(cls)

    def __contains__(self, tok):
        return tok in self._class

    def class_of(self, tok: str) -> int:
        try:
            return self._class[tok]
        except KeyError:
            raise OrderConfigError(f"letter {tok!r} is missing from the order") from None

    def less(self, a: str, b: str) -> bool:
        return self._less[self.class_of(a)][self.class_of(b)]

    def same_class(self, a: str, b: str) -> bool:
        return self.class_of(a) == self.class_of(b)

    def strict_pairs(self) -> List[Tuple[int, int]]:
        n = len(self.classes)
        return [(i, j) for i in range(n) for j in range(n) if self._less[i][j]]

    def covering_pairs(self) -> List[Tuple[int, int]]:
        """The transitive reduction: strict pairs not implied by others."""
        n = len(self.classes)
        less = self._less
        return [(i, j) for i, j in self.strict_pairs()
                if not any(less[i][k] and less[k][j] for k in range(n))]


def lenlex_decreases(lhs: Sequence[str], rhs: Sequence[str], order: LetterOrder) -> Tuple[bool, str]:
    """Is ``lhs > rhs`` in the length-plus-lexicographic order by classes?"""
    if len(lhs) != len(rhs):
        if len(lhs) > len(rhs):
            return True, "shorter"
        return False, "right-hand side is longer"
    for pos, (a, b) in enumerate(zip(lhs, rhs), 1):
        ca, cb = order.class_of(a), order.class_of(b)
        if ca == cb:
            continue
        if order.less(b, a):
            return True, f"{b} < {a} at position {pos}"
        if order.less(a, b):
            return False, f"{a} < {b} at position {pos}"
        return False, f"{a} and {b} incomparable at position {pos}"
    return False, "sides equal up to order classes"


@dataclass
class OrderReport:
    ok: bool
    failures: List[Tuple[int, Rule, str]]

    def __bool__(self):
        return self.ok


def check_order_decreasing(rs: RewriteSystem, order: LetterOrder) -> OrderReport:
    missing = sorted({a for r in rs.rules for a in r.lhs + r.rhs if a not in order})
    if missing:
        raise OrderConfigError("letters missing from the order: " + " ".join(missing))
    failures = []
    for i, r in enumerate(rs.rules):
        ok, why = lenlex_decreases(r.lhs, r.rhs, order)
        if not ok:
            failures.append((i, r, why))
    return OrderReport(not failures, failures)


@dataclass
class CompletenessReport:
    order: OrderReport
    confluence: ConfluenceReport

    @property
    def ok(self):
        return self.order.ok and self.confluence.ok

    def __bool__(self):
        return self.ok


def is_complete(rs: RewriteSystem, order: LetterOrder, max_steps: int = 100_000) -> CompletenessReport:
    return CompletenessReport(check_order_decreasing(rs, order), is_locally_confluent(rs, max_steps))


# -- file formats --------------------------------------------------------------

def parse_rewrite_system(text: str) -> RewriteSystem:
    try:
        alphabet, rules = parse_alphabet_and(text, "rule", "->")
    except PresentationError as exc:
        raise RewriteError(str(exc)) from None
    return RewriteSystem(alphabet, rules)


def load_rewrite_system(path) -> RewriteSystem:
    return parse_rewrite_system(Path(path).read_text(encoding="utf-8"))


def format_rewrite_system(rs: RewriteSystem, header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append("alphabet: " + " ".join(rs.alphabet))
    for r in rs.rules:
        tag = f"  # ({r.label})" if r.label else ""
        lines.append(f"rule: {r}{tag}")
    return "\n".join(lines) + "\n"


def parse_order(text: str) -> LetterOrder:
    classes = []
    less = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise RewriteError(f"line {lineno}: expected 'key: value'")
        if key == "class":
            toks = rest.split()
            if not toks:
                raise RewriteError(f"line {lineno}: empty class")
            classes.append(toks)
        elif key == "lt":
            a, sep, b = rest.partition("<")
            if not sep or len(a.split()) != 1 or len(b.split()) != 1:
                raise RewriteError(f"line {lineno}: expected 'lt: TOK < TOK'")
            less.append((a.strip(), b.strip()))
        else:
            raise RewriteError(f"line {lineno}: unknown key {key!r}")
    return LetterOrder(classes, less)


def load_order(path) -> LetterOrder:
    return parse_order(Path(path).read_text(encoding="utf-8"))


def format_order(order: LetterOrder, header: Sequence[str] = (), alphabet: Optional[Alphabet] = None) -> str:
    """Write ``order`` with covering pairs only; the loader re-closes it."""
    def key(tok):
        return alphabet.index(tok) if alphabet is not None and tok in alphabet else 0

    def members(cls):
        return sorted(cls, key=lambda t: (key(t), t))

    lines = [f"# {h}" for h in header]
    for cls in order.classes:
        if len(cls) > 1:
            lines.append("class: " + " ".join(members(cls)))
    for i, j in order.covering_pairs():
        lines.append(f"lt: {members(order.classes[i])[0]} < {members(order.classes[j])[0]}")
    return "\n".join(lines) + "\n"
