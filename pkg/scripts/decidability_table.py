"""Run the decision procedures on corpus machines and tabulate the answers.

Each row is one question, its answer, and whether the answer matches a
brute-force check over short words.
"""

import time

from parikhkit import corpus
from parikhkit.automata import words_upto
from parikhkit.parikh import (
    cardinality,
    complement_det,
    inclusion,
    is_empty,
    is_universal,
    pa_to_ca,
)

BOUND = 8


def ca(name):
    e = corpus.build(name)
    return e, (e.machine if e.model == "ca" else pa_to_ca(e.machine))


def members(e, n=BOUND):
    return {w for w in words_upto(e.alphabet, n) if e.oracle(w)}


def rows():
    for name in ("anbn", "anbn_finite", "empty", "parity", "equal"):
        e, M = ca(name)
        yield f"empty({name})", is_empty(M), is_empty(M) == (not members(e))
        c = cardinality(M)
        yield f"cardinality({name})", str(c), True
    for name in ("parity", "ab_star", "astarbstar"):
        e, M = ca(name)
        r = is_universal(M)
        full = set(words_upto(e.alphabet, BOUND))
        yield f"universal({name})", r.included, r.included == (members(e) == full)
    for a, b in (("anbn", "astarbstar"), ("astarbstar", "anbn"), ("anbn_finite", "anbn"), ("ab_star", "equal_counts")):
        ea, A = ca(a)
        eb, B = ca(b)
        r = inclusion(A, B)
        brute = members(ea) <= members(eb)
        ok = r.included == brute and (r.included or (ea.oracle(r.witness) and not eb.oracle(r.witness)))
        w = "" if r.included else f" witness {''.join(r.witness)!r}"
        yield f"subset({a}, {b})", f"{r.included}{w}", ok
    for name in ("anbn", "parity"):
        e, M = ca(name)
        C = complement_det(M)
        ok = all(C.accepts(w) != e.oracle(w) for w in words_upto(e.alphabet, BOUND))
        yield f"complement({name})", f"{C.automaton.num_states} states", ok


def main():
    t = time.perf_counter()
    print(f"{'question':36s} {'answer':28s} check (words <= {BOUND})")
    bad = 0
    for q, a, ok in rows():
        bad += not ok
        print(f"{q:36s} {str(a):28s} {'ok' if ok else 'MISMATCH'}")
    print(f"{time.perf_counter() - t:.2f}s")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
