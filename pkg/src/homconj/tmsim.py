"""Turing machines compiled to homogeneous rewriting systems.

A configuration ``u q v`` is encoded as ``h' u' q v^ h`` (``u`` primed,
trailing blanks of ``v`` dropped).  Appending one ``d`` and reducing to
normal form performs exactly one machine step and leaves 0, 1 or 2 copies
of ``d`` in front of ``h'``.  A ``z`` appended to a halting configuration
walks left and resets the state to the start state.

The blank is kept outside the input alphabet ``sigma``; the tape alphabet
is ``sigma + (blank,)``.

Rule labels name the families.  Transition rules: ``write``,
``erase-last``, ``erase``, ``right``, ``left``, ``left-edge`` act on an
encoded cell; the ``-end`` variants act on the implicit blank before
``h``, with ``left-end-blank`` for a primed blank to the left.  Fixed
rules: ``absorb-blank`` and ``halt-pass`` around the halting state,
``d-tape``, ``d-end``, ``d-primed``, ``d-edge`` carry surplus ``d`` to
the front, ``z-end``, ``z-tape``, ``z-reset`` walk ``z`` left and reset
the state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .presentation import Presentation
from .rewriting import LetterOrder, RewriteSystem, Rule, normal_form_rw
from .words import Alphabet, Word, WordError, check_token, format_word, parse_word

MOVE_LEFT = "L"
MOVE_RIGHT = "R"
H, H_PRIME, D, Z = "h", "h'", "d", "z"
RESERVED_COMPILED = frozenset({H, H_PRIME, D, Z})


class TMError(ValueError):
    """Malformed machine description."""


class CorrespondenceError(AssertionError):
    """Rewriting and machine computation disagreed."""


def prime(tok: str) -> str:
    return tok + "'"


@dataclass(frozen=True, eq=False)
class TuringMachine:
    sigma: Tuple[str, ...]
    blank: str
    states: Tuple[str, ...]
    start: str
    halt: str
    delta: Dict[Tuple[str, str], Tuple[str, str]]

    @property
    def tape(self) -> Tuple[str, ...]:
        return self.sigma + (self.blank,)

    def action_kind(self, action: str) -> str:
        if action in (MOVE_LEFT, MOVE_RIGHT):
            return action
        return "write"


@dataclass(frozen=True)
class Configuration:
    left: Word
    state: str
    right: Word

    def render(self) -> str:
        return f"{format_word(self.left)} [{self.state}] {format_word(self.right)}"


def strip_blanks(word: Sequence[str], blank: str) -> Word:
    word = tuple(word)
    end = len(word)
    while end and word[end - 1] == blank:
        end -= 1
    return word[:end]


def make_configuration(tm: TuringMachine, left, state, right) -> Configuration:
    return Configuration(tuple(left), state, strip_blanks(right, tm.blank))


def initial_configuration(tm: TuringMachine, w: Sequence[str]) -> Configuration:
    return make_configuration(tm, (), tm.start, w)


@dataclass
class ValidationReport:
    ok: bool
    problems: List[str]
    notes: List[str]

    def __bool__(self):
        return self.ok


def validate_tm(tm: TuringMachine) -> ValidationReport:
    problems = []
    states, tape = set(tm.states), set(tm.tape)
    if not tm.sigma:
        problems.append("input alphabet is empty")
    if tm.blank in tm.sigma:
        problems.append("blank symbol is also an input letter")
    if len(set(tm.sigma)) != len(tm.sigma) or len(states) != len(tm.states):
        problems.append("duplicate symbols")
    if states & tape:
        problems.append("states and tape letters overlap: " + " ".join(sorted(states & tape)))
    for name, tok in (("start", tm.start), ("halt", tm.halt)):
        if tok not in states:
            problems.append(f"{name} state {tok!r} is not a state")
    for tok in tape:
        if tok in (MOVE_LEFT, MOVE_RIGHT):
            problems.append(f"tape letter {tok!r} clashes with a move action")
    for tok in sorted(states | tape):
        if tok in RESERVED_COMPILED or tok.endswith("'"):
            problems.append(f"symbol {tok!r} collides with compiled tokens")
    for (q, x), (q2, act) in sorted(tm.delta.items()):
        if q not in states or q2 not in states:
            problems.append(f"transition ({q}, {x}) uses an unknown state")
        if x not in tape:
            problems.append(f"transition ({q}, {x}) reads an unknown letter")
        if act not in tape and act not in (MOVE_LEFT, MOVE_RIGHT):
            problems.append(f"transition ({q}, {x}) has unknown action {act!r}")
        if q == tm.halt:
            problems.append(f"halt state has outgoing transition on {x!r}")
    notes = [
        "not checked: the machine must restore its input and park left of it "
        "before halting (acceptance is recognised only in that shape)"
    ]
    return ValidationReport(not problems, problems, notes)


def tm_step(tm: TuringMachine, c: Configuration) -> Optional[Configuration]:
    read = c.right[0] if c.right else tm.blank
    move = tm.delta.get((c.state, read))
    if move is None:
        return None
    q2, act = move
    left, right = c.left, c.right
    if act == MOVE_RIGHT:
        return make_configuration(tm, left + (read,), q2, right[1:])
    if act == MOVE_LEFT:
        if left:
            return make_configuration(tm, left[:-1], q2, (left[-1],) + right)
        if right:
            return make_configuration(tm, (), q2, (tm.blank,) + right)
        return make_configuration(tm, (), q2, ())
    return make_configuration(tm, left, q2, (act,) + right[1:])


@dataclass
class RunResult:
    configurations: List[Configuration]
    halted: bool
    accepted: bool

    @property
    def steps(self) -> int:
        return len(self.configurations) - 1


def in_accepting_shape(tm: TuringMachine, c: Configuration, w: Sequence[str]) -> bool:
    return c.state == tm.halt and c.right == tuple(w) and all(a == tm.blank for a in c.left)


def tm_run(tm: TuringMachine, w: Sequence[str], max_steps: int) -> RunResult:
    c = initial_configuration(tm, w)
    trace = [c]
    for _ in range(max_steps + 1):
        nxt = tm_step(tm, c)
        if nxt is None:
            return RunResult(trace, True, in_accepting_shape(tm, c, w))
        if len(trace) > max_steps:
            break
        c = nxt
        trace.append(c)
    return RunResult(trace, False, False)


# -- compilation ---------------------------------------------------------------

@dataclass
class CompiledSystem:
    tm: TuringMachine
    system: RewriteSystem
    order: LetterOrder
    primed: Dict[str, str]
    unprimed: Dict[str, str] = field(default_factory=dict)

    def presentation(self) -> Presentation:
        return Presentation(self.system.alphabet, [(r.lhs, r.rhs) for r in self.system.rules])

    def rules_labelled(self, label: str) -> List[Rule]:
        return [r for r in self.system.rules if r.label == label]


def compiled_alphabet(tm: TuringMachine) -> Alphabet:
    tape = tm.tape
    return Alphabet(tape + tuple(prime(a) for a in tape) + tm.states + (H, H_PRIME, D, Z))


def standard_order(tm: TuringMachine) -> LetterOrder:
    """z < d < b < b' < s_i < h < (all states) < s_j' < h'."""
    b, bp = tm.blank, prime(tm.blank)
    q = tm.states[0]
    less = [(Z, D), (D, b), (b, bp)]
    for s in tm.sigma:
        less += [(bp, s), (s, H)]
    less.append((H, q))
    for s in tm.sigma:
        less += [(q, prime(s)), (prime(s), H_PRIME)]
    return LetterOrder([tm.states], less)


def ranked_state_order(tm: TuringMachine) -> Optional[LetterOrder]:
    """A refinement of :func:`standard_order` that also orients left-edge moves on a blank.

    ``h' q_i b d -> h' q_j b b`` only decreases if ``q_i > q_j``.  States
    are grouped into strongly connected components of the graph of
    transitions whose rules compare ``q_i`` with ``q_j`` in place; the
    components are ordered along the edges.  Returns None when a strict
    edge lies inside a component, since then no such ranking exists.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(tm.states)
    strict = []
    for (qi, x), (qj, act) in tm.delta.items():
        if act == MOVE_LEFT or (x == tm.blank and tm.action_kind(act) == "write" and act != tm.blank):
            graph.add_edge(qi, qj)
            if act == MOVE_LEFT and x == tm.blank:
                strict.append((qi, qj))
    comp = {}
    components = sorted(nx.strongly_connected_components(graph), key=lambda c: sorted(c))
    for i, c in enumerate(components):
        for q in c:
            comp[q] = i
    if any(comp[a] == comp[b] for a, b in strict):
        return None
    b, bp = tm.blank, prime(tm.blank)
    less = [(Z, D), (D, b), (b, bp)]
    for s in tm.sigma:
        less += [(bp, s), (s, H)]
    for q in tm.states:
        less.append((H, q))
        for s in tm.sigma:
            less.append((q, prime(s)))
    for s in tm.sigma:
        less.append((prime(s), H_PRIME))
    less += [(qj, qi) for qi, qj in graph.edges if comp[qi] != comp[qj]]
    return LetterOrder([sorted(c) for c in components], less)


def group_one_rules(tm: TuringMachine) -> List[Rule]:
    b, bp = tm.blank, prime(tm.blank)
    tape = tm.tape
    rules = []

    def add(label, lhs, rhs):
        rules.append(Rule(tuple(lhs), tuple(rhs), label))

    order = {q: i for i, q in enumerate(tm.states)}
    tindex = {a: i for i, a in enumerate(tape)}
    for (qi, x), (qj, act) in sorted(tm.delta.items(), key=lambda kv: (order[kv[0][0]], tindex[kv[0][1]])):
        kind = tm.action_kind(act)
        # head on a cell of the encoded tape (x may be an interior blank)
        if kind == "write" and act != b:
            add("write", [qi, x, D], [D, qj, act])
        elif kind == "write":
            add("erase-last", [qi, x, D, H], [D, D, qj, H])
            for y in tape:
                add("erase", [qi, x, D, y], [D, qj, b, y])
        elif kind == MOVE_RIGHT:
            add("right", [qi, x, D], [D, prime(x), qj])
        else:
            for y in tape:
                add("left", [prime(y), qi, x, D], [D, qj, y, x])
            add("left-edge", [H_PRIME, qi, x, D], [H_PRIME, qj, b, x])
        if x != b:
            continue
        # head past the encoded tape, reading an implicit blank before h
        if kind == "write" and act != b:
            add("write-end", [qi, H, D], [qj, act, H])
        elif kind == "write":
            add("erase-end", [qi, H, D], [D, qj, H])
        elif kind == MOVE_RIGHT:
            add("right-end", [qi, H, D], [bp, qj, H])
        else:
            for s in tm.sigma:
                add("left-end", [prime(s), qi, H, D], [D, qj, s, H])
            add("left-end-blank", [bp, qi, H, D], [D, D, qj, H])
            add("left-edge-end", [H_PRIME, qi, H, D], [D, H_PRIME, qj, H])
    return rules


def fixed_rules(tm: TuringMachine) -> List[Rule]:
    qa, q0 = tm.halt, tm.start
    tape, sigma = tm.tape, tm.sigma
    rules = [Rule((prime(tm.blank), qa), (D, qa), "absorb-blank")]
    rules += [Rule((qa, s, D), (D, qa, s), "halt-pass") for s in sigma]
    rules += [Rule((x, y, D), (x, D, y), "d-tape") for x in tape for y in tape]
    rules += [Rule((s, H, D), (s, D, H), "d-end") for s in sigma]
    rules += [Rule((prime(x), D), (D, prime(x)), "d-primed") for x in tape]
    rules.append(Rule((H_PRIME, D), (D, H_PRIME), "d-edge"))
    rules += [Rule((s, H, Z), (s, Z, H), "z-end") for s in sigma]
    rules += [Rule((si, sj, Z), (si, Z, sj), "z-tape") for si in sigma for sj in sigma]
    rules += [Rule((H_PRIME, qa, s, Z), (Z, H_PRIME, q0, s), "z-reset") for s in sigma]
    return rules


def expected_rule_count(tm: TuringMachine) -> int:
    """Closed-form size of the compiled system."""
    n_sigma = len(tm.sigma)
    n_tape = n_sigma + 1
    count = 1 + n_sigma + n_tape ** 2 + n_sigma + n_tape + 1 + n_sigma + n_sigma ** 2 + n_sigma
    per_kind = {"write": 1, "blank": 1 + n_tape, MOVE_RIGHT: 1, MOVE_LEFT: n_tape + 1}
    past_end = {"write": 1, "blank": 1, MOVE_RIGHT: 1, MOVE_LEFT: n_sigma + 2}
    for (_, x), (_, act) in tm.delta.items():
        kind = tm.action_kind(act)
        if kind == "write" and act == tm.blank:
            kind = "blank"
        count += per_kind[kind]
        if x == tm.blank:
            count += past_end[kind]
    return count


def compile_tm(tm: TuringMachine) -> CompiledSystem:
    report = validate_tm(tm)
    if not report.ok:
        raise TMError("invalid machine: " + "; ".join(report.problems))
    alphabet = compiled_alphabet(tm)
    rules = group_one_rules(tm) + fixed_rules(tm)
    primed = {a: prime(a) for a in tm.tape}
    return CompiledSystem(
        tm, RewriteSystem(alphabet, rules), standard_order(tm), primed,
        {v: k for k, v in primed.items()},
    )


# -- encoding ------------------------------------------------------------------

def encode(c: Configuration) -> Word:
    return (H_PRIME,) + tuple(prime(a) for a in c.left) + (c.state,) + tuple(c.right) + (H,)


def decode(w: Sequence[str], cs: CompiledSystem) -> Optional[Tuple[int, Configuration]]:
    """Match ``d^k h' (primed)* state (tape)* h``; tape part not ending in blank."""
    w = tuple(w)
    tm = cs.tm
    i = 0
    while i < len(w) and w[i] == D:
        i += 1
    k = i
    if i >= len(w) or w[i] != H_PRIME:
        return None
    i += 1
    left = []
    while i < len(w) and w[i] in cs.unprimed:
        left.append(cs.unprimed[w[i]])
        i += 1
    if i >= len(w) or w[i] not in tm.states:
        return None
    state = w[i]
    i += 1
    tape = set(tm.tape)
    right = []
    while i < len(w) and w[i] in tape:
        right.append(w[i])
        i += 1
    if i != len(w) - 1 or w[i] != H:
        return None
    if right and right[-1] == tm.blank:
        return None
    return k, Configuration(tuple(left), state, tuple(right))


def step_correspondence(tm: TuringMachine, cs: CompiledSystem, c: Configuration,
                        max_steps: int = 100_000) -> Tuple[int, Configuration]:
    """Check one machine step against ``encode(c) d`` reduced to normal form.

    Returns ``(k, c2)`` with ``k = 1 + |u1| - |u2| + |v1| - |v2|``.  When the
    step enters the halting state, trailing blanks on the left are also
    absorbed into leading ``d``s by the normal form, and the check accounts
    for them.
    """
    c2 = tm_step(tm, c)
    if c2 is None:
        raise CorrespondenceError(f"no transition from {c.render()}")
    k = 1 + len(c.left) - len(c2.left) + len(c.right) - len(c2.right)
    if k not in (0, 1, 2):
        raise CorrespondenceError(f"d-exponent {k} outside 0..2 at {c.render()}")
    nf = normal_form_rw(encode(c) + (D,), cs.system, max_steps)
    got = decode(nf, cs)
    if got is None:
        raise CorrespondenceError(f"normal form {format_word(nf)} does not decode")
    expected = (k, c2)
    if c2.state == tm.halt:
        kept = strip_blanks(c2.left, tm.blank)
        alpha = len(c2.left) - len(kept)
        expected = (k + alpha, Configuration(kept, c2.state, c2.right))
    if got != expected:
        raise CorrespondenceError(
            f"from {c.render()}: machine gives {c2.render()} with k={k}, "
            f"rewriting gives {got[1].render()} with k={got[0]}"
        )
    return k, c2


@dataclass
class Simulation:
    gamma: int
    trace: List[Tuple[int, Word]]

    @property
    def final(self) -> Word:
        return self.trace[-1][1]


def simulate_by_rewriting(tm: TuringMachine, cs: CompiledSystem, w: Sequence[str],
                          max_steps: int) -> Optional[Simulation]:
    """Feed one ``d`` per step until the halting state appears.

    Returns the number ``gamma`` of ``d``s fed when the normal form is
    ``d^gamma h' q_a w h``; None if the budget runs out, the machine gets
    stuck, or it halts in any other shape.
    """
    w = tuple(w)
    word = encode(initial_configuration(tm, w))
    trace = [(0, word)]
    fed = 0
    dcount, cfg = 0, initial_configuration(tm, w)
    while True:
        if cfg.state == tm.halt:
            if dcount == fed and cfg.left == () and cfg.right == w:
                return Simulation(fed, trace)
            return None
        if fed >= max_steps:
            return None
        word = normal_form_rw(word + (D,), cs.system)
        fed += 1
        trace.append((fed, word))
        got = decode(word, cs)
        if got is None:
            return None
        dcount, cfg = got


def conjugacy_instance(tm: TuringMachine, w: Sequence[str]) -> Tuple[Word, Word]:
    w = tuple(w)
    if not w:
        raise TMError("conjugacy instance needs a nonempty input")
    return (H_PRIME, tm.start) + w + (H,), (H_PRIME, tm.halt) + w + (H,)


def zcycle_check(tm: TuringMachine, cs: CompiledSystem, w: Sequence[str]) -> bool:
    w = tuple(w)
    nf = normal_form_rw((H_PRIME, tm.halt) + w + (H, Z), cs.system)
    return nf == (Z, H_PRIME, tm.start) + w + (H,)


@dataclass
class VerifyReport:
    lines: List[str]
    ok: bool
    accepted: bool
    gamma: Optional[int]
    tm_steps: int
    halted: bool


def verify_run(tm: TuringMachine, cs: CompiledSystem, w: Sequence[str], max_steps: int) -> VerifyReport:
    """Run the machine and the rewriting simulation side by side."""
    w = tuple(w)
    run = tm_run(tm, w, max_steps)
    lines = [f"input: {format_word(w)}", f"step 0: tm {run.configurations[0].render()}  "
             f"rw {format_word(encode(run.configurations[0]))}"]
    ok = True
    sim_word = encode(run.configurations[0])
    for i, (c1, c2) in enumerate(zip(run.configurations, run.configurations[1:]), 1):
        try:
            k, _ = step_correspondence(tm, cs, c1)
        except CorrespondenceError as exc:
            lines.append(f"step {i}: MISMATCH {exc}")
            ok = False
            break
        sim_word = normal_form_rw(sim_word + (D,), cs.system)
        lines.append(f"step {i}: tm {c2.render()}  rw {format_word(sim_word)}  k={k}")
    sim = simulate_by_rewriting(tm, cs, w, max_steps)
    if ok and sim is not None and (not run.accepted or sim.gamma != run.steps):
        ok = False
        lines.append("MISMATCH: rewriting accepts but the machine run does not agree")
    if ok and run.accepted and sim is None:
        ok = False
        lines.append("MISMATCH: machine accepts but rewriting does not")
    if not run.halted:
        lines.append(f"no halt within {max_steps} steps")
    elif run.accepted:
        lines.append("machine: accepted")
    else:
        lines.append("machine: halted without accepting")
    lines.append(f"gamma={sim.gamma}" if sim is not None else "gamma=none")
    return VerifyReport(lines, ok, run.accepted, None if sim is None else sim.gamma,
                        run.steps, run.halted)


# -- file format ---------------------------------------------------------------

def parse_tm(text: str) -> TuringMachine:
    fields: Dict[str, List[str]] = {}
    delta: Dict[Tuple[str, str], Tuple[str, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise TMError(f"line {lineno}: expected 'key: value'")
        if key == "delta":
            lhs, arrow, rhs = rest.partition("->")
            src, dst = lhs.split(), rhs.split()
            if not arrow or len(src) != 2:
                raise TMError(f"line {lineno}: expected 'delta: STATE LETTER -> STATE ACTION'")
            if len(dst) != 2:
                raise TMError(f"line {lineno}: a transition either writes or moves, "
                              f"with exactly one action")
            if tuple(src) in delta:
                raise TMError(f"line {lineno}: second transition for ({src[0]}, {src[1]})")
            delta[tuple(src)] = tuple(dst)
        elif key in ("states", "input", "blank", "start", "halt"):
            if key in fields:
                raise TMError(f"line {lineno}: repeated {key!r}")
            fields[key] = rest.split()
        else:
            raise TMError(f"line {lineno}: unknown key {key!r}")
    for key in ("states", "input", "blank", "start", "halt"):
        if key not in fields:
            raise TMError(f"missing {key!r} line")
    for key in ("blank", "start", "halt"):
        if len(fields[key]) != 1:
            raise TMError(f"{key!r} takes exactly one token")
    try:
        for tok in fields["states"] + fields["input"] + fields["blank"]:
            check_token(tok)
    except WordError as exc:
        raise TMError(str(exc)) from None
    return TuringMachine(
        tuple(fields["input"]), fields["blank"][0], tuple(fields["states"]),
        fields["start"][0], fields["halt"][0], delta,
    )


def load_tm(path) -> TuringMachine:
    return parse_tm(Path(path).read_text(encoding="utf-8"))


def format_tm(tm: TuringMachine) -> str:
    lines = [
        "states: " + " ".join(tm.states),
        "input: " + " ".join(tm.sigma),
        f"blank: {tm.blank}",
        f"start: {tm.start}",
        f"halt: {tm.halt}",
    ]
    for (q, x), (q2, act) in tm.delta.items():
        lines.append(f"delta: {q} {x} -> {q2} {act}")
    return "\n".join(lines) + "\n"


def parse_input(text: str, tm: TuringMachine) -> Word:
    return parse_word(text, Alphabet(tm.sigma))
