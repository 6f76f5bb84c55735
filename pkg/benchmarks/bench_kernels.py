"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import importlib
import itertools
import random
import timeit
from pathlib import Path

from homconj import _kernels_py
from homconj import tmsim
from homconj.presentation import load_presentation

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def workloads():
    rng = random.Random(0)
    syl_words = [tuple(rng.randint(1, 6) for _ in range(40)) for _ in range(200)]
    short = [tuple(w) for n in range(7) for w in itertools.product((1, 2, 3), repeat=n)]

    tm = tmsim.load_tm(DATA / "t4.tm")
    cs = tmsim.compile_tm(tm)
    enc = cs.system.alphabet.encode
    rules = [(enc(r.lhs), enc(r.rhs)) for r in cs.system.rules]
    # encoded start word followed by all the d's it consumes at once
    long_input = ("s",) * 150
    run = tmsim.tm_run(tm, long_input, 1000)
    start = enc(tmsim.encode(run.configurations[0]) + (tmsim.D,) * run.steps)

    pres = load_presentation(DATA / "comm.pres")
    pairs = [(pres.alphabet.encode(r.lhs), pres.alphabet.encode(r.rhs)) for r in pres.relations]
    closure_word = pres.alphabet.encode(tuple("a" * 8 + "b" * 8))

    def syl(mod):
        for w in syl_words:
            mod.sylvester_reading(w)
        for w in short:
            mod.sylvester_reading(w)

    def nf(mod):
        table = mod.compile_rules(rules)
        mod.normal_form(start, table, 10 ** 7)

    def closure(mod):
        idx = mod.side_index(pairs)
        mod.class_closure(closure_word, idx, 10 ** 6)

    return [("sylvester reading", syl), ("TM normal form", nf), ("word-class closure", closure)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    try:
        compiled = importlib.import_module("homconj._kernels")
    except ImportError:
        compiled = None
    print(f"{'workload':<22}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for name, fn in workloads():
        tp = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{name:<22}{tp:>12.4f}{'n/a':>14}{'n/a':>10}")
            continue
        tc = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat))
        print(f"{name:<22}{tp:>12.4f}{tc:>14.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
