"""Acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal
summary.  Checks run at their stated tolerance, runtime targets included.
"""

import itertools
import time
from collections import Counter
from math import factorial

import pytest

import oracles
from conftest import ACCEPTANCE_LINES, DATA, GOLDEN
from homconj import multihom as mh
from homconj import presentation as pr
from homconj import rewriting as rw
from homconj import sylvester as syl
from homconj import tmsim
from homconj.cli import main

MACHINES = ["t1", "t2", "t3", "t4"]
SYL_LETTERS = (1, 2, 3)
SYL_MAX_LEN = 6


def record(n, title, ok, detail, elapsed, target):
    status = "PASS" if ok else "FAIL"
    line = f"AC{n:02d} {status}  {title}: {detail} [{elapsed:.3f}s; target {target}]"
    ACCEPTANCE_LINES[n] = line
    print(line)
    return ok


def best_time(fn, repeat=50):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def syl_words(n):
    return list(itertools.product(SYL_LETTERS, repeat=n))


@pytest.fixture(scope="module")
def machines():
    out = {}
    for name in MACHINES:
        tm = tmsim.load_tm(DATA / f"{name}.tm")
        out[name] = (tm, tmsim.compile_tm(tm))
    return out


def test_criterion_01_tree_and_reading(capsys):
    golden = (GOLDEN / "tree_265415314.txt").read_text()
    assert main(["syl", "nf", "265415314"]) == 0
    nf_out = capsys.readouterr().out
    assert main(["syl", "tree", "265415314"]) == 0
    tree_out = capsys.readouterr().out
    w = syl.parse_sylvester_word("265415314")
    elapsed = best_time(lambda: (syl.normal_form(w), syl.format_tree(syl.bst_of_word(w))))
    ok = nf_out == "124315654\n" and tree_out == golden and elapsed < 1e-3
    detail = f"nf={nf_out.strip()}, tree {'matches' if tree_out == golden else 'differs from'} golden"
    assert record(1, "sylvester normal form and tree of 265415314", ok, detail, elapsed, "< 1 ms")


def test_criterion_02_left_full_tree():
    def check():
        t = syl.bst_of_word("122355")
        return (syl.is_left_full(t), syl.left_branch_length(t),
                syl.left_full_word({1: 1, 2: 2, 3: 1, 5: 2}))

    full, branch, word = check()
    elapsed = best_time(check)
    ok = full and branch == 6 and word == (1, 2, 2, 3, 5, 5) and elapsed < 1e-3
    detail = f"left full={full}, branch length={branch}, sorted word={syl.format_sylvester_word(word)}"
    assert record(2, "left-full tree of 122355", ok, detail, elapsed, "< 1 ms")


def test_criterion_03_equality_vs_schema_closure():
    t = time.perf_counter()
    pairs = disagreements = 0
    for n in range(SYL_MAX_LEN + 1):
        words = syl_words(n)
        label = oracles.partition(words, oracles.schema_moves)
        for u in words:
            lu = label[u]
            for v in words:
                pairs += 1
                if syl.equal_sylvester(u, v) != (lu == label[v]):
                    disagreements += 1
    elapsed = time.perf_counter() - t
    ok = disagreements == 0 and elapsed < 60
    detail = f"{pairs} same-length pairs over {{1,2,3}} up to length {SYL_MAX_LEN}, {disagreements} disagreements"
    assert record(3, "tree equality vs brute-force relation closure", ok, detail, elapsed, "< 60 s")


def test_criterion_04_conjugacy_vs_pstar_closure():
    t = time.perf_counter()
    pairs = disagreements = 0
    for n in range(SYL_MAX_LEN + 1):
        words = syl_words(n)
        label = oracles.partition(words, oracles.schema_or_rotation)
        for u in words:
            lu = label[u]
            for v in words:
                pairs += 1
                if syl.conjugate_sylvester(u, v) != (lu == label[v]):
                    disagreements += 1
    elapsed = time.perf_counter() - t
    ok = disagreements == 0 and elapsed < 120
    detail = f"{pairs} pairs, {disagreements} disagreements between content equality and p*-closure"
    assert record(4, "conjugacy = content vs brute-force p*-closure", ok, detail, elapsed, "< 120 s")


def test_criterion_05_certificates():
    t = time.perf_counter()
    pairs = bad = 0
    branch = {}

    def lbl(w):
        if w not in branch:
            branch[w] = syl.left_branch_length(syl.bst_of_word(w)) if w else 0
        return branch[w]

    def chain_ok(chain, x):
        if len(chain) > len(x):
            return False
        lengths = [lbl(x)] + [lbl(s.result) for s in chain]
        return all(a < b for a, b in zip(lengths, lengths[1:]))

    for n in range(SYL_MAX_LEN + 1):
        by_content = {}
        for w in syl_words(n):
            by_content.setdefault(tuple(sorted(Counter(w).items())), []).append(w)
        for group in by_content.values():
            for x in group:
                for y in group:
                    pairs += 1
                    c = syl.certificate(x, y)
                    if not (syl.verify_certificate(c, x, y) and chain_ok(c.forward, x)
                            and chain_ok(c.backward, y)):
                        bad += 1
    elapsed = time.perf_counter() - t
    ok = bad == 0
    detail = f"{pairs} same-content pairs, {bad} failing certificates"
    assert record(5, "conjugacy certificates verify with increasing left branch", ok, detail,
                  elapsed, "none")


def _presentation(name):
    return pr.load_presentation(DATA / f"{name}.pres")


def test_criterion_06_pstar_decision():
    t = time.perf_counter()
    problems = []
    total = 0
    for name in ("comm", "aab"):
        p = _presentation(name)
        rels = [(r.lhs, r.rhs) for r in p.relations]
        universe = list(p.alphabet.words_up_to(7))
        for x in universe:
            total += 1
            if set(pr.pstar_class(x, p)) != oracles.pstar_by_layers(x, rels):
                problems.append((name, "class", x))
        related = {x: {y for y in universe if pr.pstar_conjugate(x, y, p)} for x in universe}
        for x in universe:
            if x not in related[x]:
                problems.append((name, "reflexive", x))
            for y in related[x]:
                if x not in related[y]:
                    problems.append((name, "symmetric", x, y))
                if not related[y] <= related[x]:
                    problems.append((name, "transitive", x, y))
    elapsed = time.perf_counter() - t
    ok = not problems and elapsed < 60
    detail = (f"{total} classes checked on <a,b|ab=ba> and <a,b|aab=aba> up to length 7, "
              f"{len(problems)} problems")
    assert record(6, "p*-class decision vs layered oracle; equivalence relation", ok, detail, elapsed, "< 60 s")


def _fired_labels(tm, cs, max_len=3):
    """Labels of rules used while simulating every input up to ``max_len``."""
    rules = cs.system.rules
    used = set()
    for w in oracles.words_over(tm.sigma, max_len, 1):
        run = tmsim.tm_run(tm, w, 200)
        for c in run.configurations[:-1]:
            word = tmsim.encode(c) + (tmsim.D,)
            while True:
                hit = None
                for pos in range(len(word)):
                    for r in rules:
                        if word[pos:pos + len(r.lhs)] == r.lhs:
                            hit = (pos, r)
                            break
                    if hit:
                        break
                if hit is None:
                    break
                used.add(hit[1].label)
                word = rw.rewrite_at(word, hit[1], hit[0])
    return used


WRITE_FAMILIES = {"write", "erase-last", "erase", "write-end", "erase-end"}
LEFT_EDGE_FAMILIES = {"left-edge", "left-edge-end"}


def test_criterion_07_compiled_completeness(machines):
    t_all = time.perf_counter()
    parts = []
    ok = True
    for name in MACHINES:
        t = time.perf_counter()
        tm, cs = machines[name]
        balanced = all(len(r.lhs) == len(r.rhs) for r in cs.system.rules)
        order = rw.check_order_decreasing(cs.system, cs.order)
        conf = rw.is_locally_confluent(cs.system)
        pairs = rw.critical_pairs(cs.system)
        diagram = True
        for s in tm.sigma:
            source = (tmsim.prime(tm.blank), tm.halt, s, tmsim.D)
            joined = [cp for cp in pairs if cp.source == source
                      and rw.normal_form_rw(cp.left_result, cs.system) == (tmsim.D, tmsim.D, tm.halt, s)
                      and rw.normal_form_rw(cp.right_result, cs.system) == (tmsim.D, tmsim.D, tm.halt, s)]
            diagram = diagram and bool(joined)
        fired = _fired_labels(tm, cs)
        elapsed = time.perf_counter() - t
        machine_ok = balanced and order.ok and conf.ok and diagram and elapsed < 30
        ok = ok and machine_ok
        bad_rules = ", ".join(f"{r.label}:{rw.format_word(r.lhs)}->{rw.format_word(r.rhs)}"
                              for _, r, _ in order.failures)
        parts.append(f"{name}: balanced={balanced} pairs={conf.pairs_checked} joinable={conf.ok} "
                     f"absorb/pass pair={diagram} order-decreasing={order.ok}"
                     + (f" (violations {bad_rules})" if bad_rules else ""))
    tm2, cs2 = machines["t2"]
    tm3, cs3 = machines["t3"]
    fired2, fired3 = _fired_labels(tm2, cs2), _fired_labels(tm3, cs3)
    coverage = WRITE_FAMILIES <= fired2 and LEFT_EDGE_FAMILIES <= fired3
    ok = ok and coverage
    parts.append(f"write families exercised by t2={WRITE_FAMILIES <= fired2}, "
                 f"left-edge families exercised by t3={LEFT_EDGE_FAMILIES <= fired3}")
    elapsed = time.perf_counter() - t_all
    assert record(7, "compiled systems: balanced, order-decreasing, locally confluent", ok,
                  "; ".join(parts), elapsed, "< 30 s per machine")


def test_criterion_08_step_correspondence(machines):
    t = time.perf_counter()
    runs = steps = bad = 0
    for name in MACHINES:
        tm, cs = machines[name]
        for w in oracles.words_over(tm.sigma, 3):
            runs += 1
            rep = tmsim.verify_run(tm, cs, w, 200)
            run = tmsim.tm_run(tm, w, 200)
            steps += run.steps
            ks_ok = True
            for c in run.configurations[:-1]:
                c2 = tmsim.tm_step(tm, c)
                k, got = tmsim.step_correspondence(tm, cs, c)
                formula = 1 + len(c.left) - len(c2.left) + len(c.right) - len(c2.right)
                ks_ok = ks_ok and k in (0, 1, 2) and k == formula and got == c2
            accept_ok = (rep.gamma is not None) == run.accepted and (
                rep.gamma is None or rep.gamma == run.steps)
            if not (rep.ok and ks_ok and accept_ok and run.halted):
                bad += 1
    elapsed = time.perf_counter() - t
    ok = bad == 0 and elapsed < 30
    detail = f"{runs} runs ({steps} machine steps) on {len(MACHINES)} machines, {bad} disagreements"
    assert record(8, "machine steps vs one-d rewriting, acceptance vs gamma", ok, detail, elapsed, "< 30 s")


def test_criterion_09_conjugacy_bridge(machines):
    t = time.perf_counter()
    budget = pr.ClassBudget(max_class_size=100_000)
    checked = bad = 0
    largest = 0
    for name in MACHINES:
        tm, cs = machines[name]
        p = cs.presentation()
        for w in oracles.words_over(tm.sigma, 3, 1):
            sim = tmsim.simulate_by_rewriting(tm, cs, w, 200)
            if sim is None:
                continue
            checked += 1
            x, y = tmsim.conjugacy_instance(tm, w)
            g = (tmsim.D,) * sim.gamma
            z = (tmsim.Z,)
            engine = (rw.normal_form_rw(x + g, cs.system) == rw.normal_form_rw(g + y, cs.system)
                      and tmsim.zcycle_check(tm, cs, w)
                      and rw.normal_form_rw(y + z, cs.system) == rw.normal_form_rw(z + x, cs.system))
            try:
                cls_g = pr.word_class(x + g, p, budget)
                cls_z = pr.word_class(y + z, p, budget)
                largest = max(largest, len(cls_g), len(cls_z))
                closure = (g + y) in set(cls_g) and (z + x) in set(cls_z)
            except pr.BudgetExceeded:
                closure = False
            if not (engine and closure):
                bad += 1
    elapsed = time.perf_counter() - t
    ok = bad == 0 and checked > 0
    detail = (f"{checked} accepted inputs, {bad} failures; largest class {largest} "
              f"within budget 100000")
    assert record(9, "accepted inputs give X d^g = d^g Y and Y z = z X", ok, detail, elapsed, "none")


def test_criterion_10_two_letter_embedding(machines):
    t = time.perf_counter()
    problems = []
    homogeneous = [_presentation(n) for n in ("comm", "aab", "free2")]
    homogeneous += [cs.presentation() for _, cs in machines.values()]
    for p in homogeneous:
        if not pr.is_multihomogeneous(mh.embed_presentation(p)):
            problems.append(("not multihomogeneous", p))
    for name in ("comm", "free2"):
        rep = mh.desk_check_embedding(_presentation(name), 4)
        if not rep:
            problems.append(("embedding", name, rep.counterexample))
    for n in range(1, 7):
        for i in range(1, n + 1):
            if Counter(mh.phi_letter(i, n)) != {"x": 3, "y": n + 1}:
                problems.append(("content", i, n))
    elapsed = time.perf_counter() - t
    ok = not problems and elapsed < 60
    detail = (f"{len(homogeneous)} presentations embedded, desk check at length 4 on 2 presentations, "
              f"21 letter images; {len(problems)} problems")
    assert record(10, "two-letter multihomogeneous embedding", ok, detail, elapsed, "< 60 s")


def test_pair_counts_are_exhaustive():
    # sanity check that criterion 5 covers every same-content pair
    total = 0
    for n in range(SYL_MAX_LEN + 1):
        for a in range(n + 1):
            for b in range(n - a + 1):
                c = n - a - b
                total += (factorial(n) // (factorial(a) * factorial(b) * factorial(c))) ** 2
    seen = 0
    for n in range(SYL_MAX_LEN + 1):
        seen += sum(v * v for v in Counter(tuple(sorted(w)) for w in syl_words(n)).values())
    assert seen == total
