"""Command-line interface: ``homconj <area> <command> ...``.

Exit status: 0 yes/success, 1 no, 2 unknown or budget exhausted,
3 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from . import multihom, presentation as pres, rewriting as rw, sylvester as syl, tmsim
from .words import WordError, format_word, parse_word

YES, NO, UNKNOWN, USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _verdict(flag: bool) -> int:
    print("yes" if flag else "no")
    return YES if flag else NO


def _budget(args) -> pres.ClassBudget:
    bound = getattr(args, "bound", None)
    return pres.ClassBudget(
        max_class_size=args.max_class,
        max_witness_length=pres.DEFAULT_BUDGET.max_witness_length if bound is None else bound,
    )


def _word(p, text):
    return parse_word(text, p.alphabet)


# -- syl -----------------------------------------------------------------------

def cmd_syl_nf(args):
    print(syl.format_sylvester_word(syl.normal_form(args.word)))
    return YES


def cmd_syl_eq(args):
    return _verdict(syl.equal_sylvester(args.w1, args.w2))


def cmd_syl_conj(args):
    x, y = syl.parse_sylvester_word(args.w1), syl.parse_sylvester_word(args.w2)
    ok = syl.conjugate_sylvester(x, y)
    code = _verdict(ok)
    if ok and args.certificate:
        cert = syl.certificate(x, y)
        print(syl.format_certificate(cert))
        print("verified: " + ("yes" if syl.verify_certificate(cert, x, y) else "no"))
    return code


def cmd_syl_tree(args):
    print(syl.format_tree(syl.bst_of_word(args.word)))
    return YES


# -- pres ----------------------------------------------------------------------

def cmd_pres_check(args):
    p = pres.load_presentation(args.file)
    print(f"letters: {len(p.alphabet)}")
    print(f"relations: {len(p.relations)}")
    print("homogeneous: " + ("yes" if p.homogeneous else "no"))
    print("multihomogeneous: " + ("yes" if p.multihomogeneous else "no"))
    return YES if p.homogeneous else NO


def cmd_pres_eq(args):
    p = pres.load_presentation(args.file)
    return _verdict(pres.equal_in_monoid(_word(p, args.w1), _word(p, args.w2), p, _budget(args)))


def cmd_pres_class(args):
    p = pres.load_presentation(args.file)
    words = pres.word_class(_word(p, args.word), p, _budget(args))
    for w in words:
        print(format_word(w))
    print(f"size: {len(words)}")
    return YES


def cmd_pres_conjp(args):
    p = pres.load_presentation(args.file)
    return _verdict(pres.pstar_conjugate(_word(p, args.w1), _word(p, args.w2), p, _budget(args)))


def cmd_pres_conjo(args):
    p = pres.load_presentation(args.file)
    ans = pres.bounded_conjugacy_search("o", _word(p, args.w1), _word(p, args.w2), p, _budget(args))
    if ans.verdict is pres.Verdict.YES:
        print("yes")
        print(f"g: {format_word(ans.g)}")
        print(f"h: {format_word(ans.h)}")
        return YES
    print(f"unknown (no witnesses of length <= {args.bound})")
    return UNKNOWN


# -- rw ------------------------------------------------------------------------

def cmd_rw_nf(args):
    rs = rw.load_rewrite_system(args.file)
    print(format_word(rw.normal_form_rw(parse_word(args.word, rs.alphabet), rs, args.max_steps)))
    return YES


def _pair_lines(rs, report_pairs, max_steps):
    ok = True
    for cp in report_pairs:
        i, j = cp.rule_indices
        head = (f"{cp.kind} rules {i + 1},{j + 1}: {format_word(cp.source)} -> "
                f"{format_word(cp.left_result)} | {format_word(cp.right_result)}")
        try:
            a = rw.normal_form_rw(cp.left_result, rs, max_steps)
            b = rw.normal_form_rw(cp.right_result, rs, max_steps)
        except rw.NonTerminationSuspected:
            ok = False
            print(f"{head} ; UNRESOLVED within {max_steps} steps")
            continue
        if a == b:
            print(f"{head} ; joins at {format_word(a)}")
        else:
            ok = False
            print(f"{head} ; FAILS: {format_word(a)} != {format_word(b)}")
    return ok


def cmd_rw_pairs(args):
    rs = rw.load_rewrite_system(args.file)
    pairs = rw.critical_pairs(rs)
    ok = _pair_lines(rs, pairs, args.max_steps)
    print(f"pairs: {len(pairs)}")
    return _verdict(ok)


def _order_lines(order_report):
    for i, rule, why in order_report.failures:
        print(f"not decreasing: rule {i + 1} {rule} ({why})")


def cmd_rw_complete(args):
    rs = rw.load_rewrite_system(args.file)
    order = rw.load_order(args.order)
    rep = rw.is_complete(rs, order, args.max_steps)
    _order_lines(rep.order)
    for cp, a, b in rep.confluence.failures:
        if b is None:
            print(f"unresolved: {format_word(cp.source)} has no normal form within {args.max_steps} steps")
        else:
            print(f"not joinable: {format_word(cp.source)} gives {format_word(a)} and {format_word(b)}")
    print("order decreasing: " + ("yes" if rep.order.ok else "no"))
    print(f"critical pairs: {rep.confluence.pairs_checked}")
    print("locally confluent: " + ("yes" if rep.confluence.ok else "no"))
    return _verdict(rep.ok)


# -- tm ------------------------------------------------------------------------

def _load_tm(args):
    tm = tmsim.load_tm(args.tmfile)
    return tm, tmsim.compile_tm(tm)


def _tm_input(tm, text):
    return tmsim.parse_input(text, tm)


def cmd_tm_compile(args):
    tm, cs = _load_tm(args)
    rules = cs.system.rules
    print(f"letters: {len(cs.system.alphabet)}")
    print(f"rules: {len(rules)} (closed form {tmsim.expected_rule_count(tm)})")
    print("homogeneous: " + ("yes" if all(len(r.lhs) == len(r.rhs) for r in rules) else "no"))
    order_rep = rw.check_order_decreasing(cs.system, cs.order)
    _order_lines(order_rep)
    print("decreasing under the standard letter order: " + ("yes" if order_rep.ok else "no"))
    ranked = tmsim.ranked_state_order(tm)
    if ranked is None:
        print("decreasing under a ranked-state order: no such order")
    else:
        print("decreasing under a ranked-state order: "
              + ("yes" if rw.check_order_decreasing(cs.system, ranked).ok else "no"))
    conf = rw.is_locally_confluent(cs.system, args.max_steps)
    print(f"critical pairs: {conf.pairs_checked}")
    print("locally confluent: " + ("yes" if conf.ok else "no"))
    header = [f"compiled from {Path(args.tmfile).name}"]
    if args.emit_pres:
        Path(args.emit_pres).write_text(pres.format_presentation(cs.presentation(), header), encoding="utf-8")
        print(f"wrote presentation: {args.emit_pres}")
    if args.emit_rules:
        Path(args.emit_rules).write_text(rw.format_rewrite_system(cs.system, header), encoding="utf-8")
        print(f"wrote rules: {args.emit_rules}")
    if args.emit_order:
        Path(args.emit_order).write_text(
            rw.format_order(cs.order, header + ["standard letter order"], cs.system.alphabet),
            encoding="utf-8")
        print(f"wrote order: {args.emit_order}")
    return YES


def cmd_tm_run(args):
    tm = tmsim.load_tm(args.tmfile)
    w = _tm_input(tm, args.input)
    run = tmsim.tm_run(tm, w, args.max_steps)
    for i, c in enumerate(run.configurations):
        print(f"step {i}: {c.render()}")
    if not run.halted:
        print(f"no halt within {args.max_steps} steps")
        return UNKNOWN
    print("accepted" if run.accepted else "halted without accepting")
    return YES if run.accepted else NO


def cmd_tm_verify(args):
    tm, cs = _load_tm(args)
    w = _tm_input(tm, args.input)
    rep = tmsim.verify_run(tm, cs, w, args.max_steps)
    for line in rep.lines:
        print(line)
    if not rep.ok:
        return NO
    if not rep.halted:
        return UNKNOWN
    return YES if rep.accepted else NO


def cmd_tm_instance(args):
    tm = tmsim.load_tm(args.tmfile)
    x, y = tmsim.conjugacy_instance(tm, _tm_input(tm, args.input))
    print(f"X: {format_word(x)}")
    print(f"Y: {format_word(y)}")
    return YES


# -- mh ------------------------------------------------------------------------

def cmd_mh_embed(args):
    p = pres.load_presentation(args.file)
    image = multihom.embed_presentation(p)
    sys.stdout.write(pres.format_presentation(image, multihom.embedding_header(p)))
    return YES


def cmd_mh_check(args):
    p = pres.load_presentation(args.file)
    rep = multihom.desk_check_embedding(p, args.max_len, _budget(args))
    print(f"pairs checked: {rep.pairs_checked}")
    if rep.counterexample:
        u, v = rep.counterexample
        print(f"counterexample: {format_word(u)} , {format_word(v)}")
    return _verdict(rep.ok)


# -- wiring --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-class", type=int, default=pres.DEFAULT_BUDGET.max_class_size,
                        metavar="N", help="largest word class to enumerate")
    common.add_argument("--max-steps", type=int, default=100_000, metavar="N",
                        help="rewriting / machine step budget")

    parser = _Parser(prog="homconj", description="Conjugacy and word problems in homogeneous monoids.")
    areas = parser.add_subparsers(dest="area", required=True, parser_class=_Parser)

    def group(name, help_text):
        sub = areas.add_parser(name, help=help_text)
        return sub.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(grp, name, func, *positionals, help_text=None):
        sp = grp.add_parser(name, parents=[common], help=help_text)
        for pos in positionals:
            sp.add_argument(pos)
        sp.set_defaults(func=func)
        return sp

    g = group("syl", "sylvester monoid")
    command(g, "nf", cmd_syl_nf, "word", help_text="normal form (tree reading)")
    command(g, "eq", cmd_syl_eq, "w1", "w2", help_text="equality")
    sp = command(g, "conj", cmd_syl_conj, "w1", "w2", help_text="conjugacy")
    sp.add_argument("--certificate", action="store_true", help="print a checkable chain")
    command(g, "tree", cmd_syl_tree, "word", help_text="print the binary search tree")

    g = group("pres", "homogeneous presentations")
    command(g, "check", cmd_pres_check, "file", help_text="homogeneity and relation summary")
    command(g, "eq", cmd_pres_eq, "file", "w1", "w2", help_text="word problem by class closure")
    command(g, "class", cmd_pres_class, "file", "word", help_text="list the class of a word")
    command(g, "conjp", cmd_pres_conjp, "file", "w1", "w2", help_text="transitive closure of primary conjugacy")
    sp = command(g, "conjo", cmd_pres_conjo, "file", "w1", "w2", help_text="bounded search for an o-conjugacy witness")
    sp.add_argument("--bound", type=int, required=True, metavar="N", help="longest witness tried")

    g = group("rw", "string rewriting")
    command(g, "nf", cmd_rw_nf, "file", "word", help_text="normal form")
    command(g, "pairs", cmd_rw_pairs, "file", help_text="critical pairs and their reducts")
    sp = command(g, "complete", cmd_rw_complete, "file", help_text="termination under an order plus local confluence")
    sp.add_argument("--order", required=True, metavar="ORDERFILE", help="letter order file")

    g = group("tm", "Turing machine compilation")
    sp = command(g, "compile", cmd_tm_compile, "tmfile", help_text="compile to a homogeneous rewriting system")
    sp.add_argument("--emit-pres", metavar="OUT", help="write the presentation")
    sp.add_argument("--emit-order", metavar="OUT", help="write the standard letter order")
    sp.add_argument("--emit-rules", metavar="OUT", help="oriented rules in rewriting format")
    command(g, "run", cmd_tm_run, "tmfile", "input", help_text="run the machine")
    command(g, "verify", cmd_tm_verify, "tmfile", "input", help_text="machine and rewriting side by side")
    command(g, "instance", cmd_tm_instance, "tmfile", "input", help_text="conjugacy instance for an input")

    g = group("mh", "two-letter multihomogeneous embedding")
    command(g, "embed", cmd_mh_embed, "file", help_text="image presentation")
    sp = command(g, "check", cmd_mh_check, "file", help_text="desk check of the embedding property")
    sp.add_argument("--max-len", type=int, required=True, metavar="N")
    return parser


_INPUT_ERRORS = (
    WordError, pres.PresentationError, pres.UnsupportedPresentation, rw.RewriteError,
    rw.OrderConfigError, tmsim.TMError, syl.SylvesterError, OSError, IndexError, ValueError,
)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else YES
    try:
        return args.func(args)
    except (pres.BudgetExceeded, rw.NonTerminationSuspected) as exc:
        print(f"unknown: {exc}")
        return UNKNOWN
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
