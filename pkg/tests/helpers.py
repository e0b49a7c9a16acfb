"""Shared hypothesis strategies and oracles for the test suite."""

from itertools import permutations

from hypothesis import strategies as st

from parikhkit.automata import EPS, Nfa, words_upto
from parikhkit.semilinear import Cong, Formula, Less, Literal, Term


def random_nfas(max_states=3, alphabet="ab", eps=True, max_trans=5, deterministic=False):
    labels = list(alphabet) + ([EPS] if eps and not deterministic else [])

    def build(n, trans, finals):
        trans = [(p % n, a, q % n) for p, a, q in trans]
        if deterministic:
            seen = {}
            for p, a, q in trans:
                seen.setdefault((p, a), q)
            trans = [(p, a, q) for (p, a), q in seen.items()]
        return Nfa(n, alphabet, trans, 0, {f % n for f in finals})

    return st.integers(1, max_states).flatmap(
        lambda n: st.builds(
            build,
            st.just(n),
            st.lists(
                st.tuples(st.integers(0, 9), st.sampled_from(labels), st.integers(0, 9)),
                max_size=max_trans,
            ),
            st.sets(st.integers(0, 9), max_size=2),
        )
    )


def terms(dim):
    return st.builds(
        Term,
        st.lists(st.integers(-1, 2), min_size=dim, max_size=dim).map(tuple),
        st.integers(0, 2),
    )


def literals(dim):
    less = st.builds(Less, terms(dim), terms(dim))
    congr = st.builds(Cong, st.sampled_from([2, 3]), terms(dim), terms(dim))
    return st.builds(Literal, st.one_of(less, congr), st.booleans())


def formulas(dim, max_clauses=2):
    clause = st.lists(literals(dim), min_size=0, max_size=2).map(tuple)
    return st.lists(clause, min_size=0, max_size=max_clauses).map(
        lambda cs: Formula(dim, tuple(cs))
    )


def agree(accepts, oracle, alphabet, n):
    """Words up to ``n`` on which ``accepts`` and ``oracle`` differ."""
    return [w for w in words_upto(alphabet, n) if bool(accepts(w)) != bool(oracle(w))]


def some_permutation(accepts, w):
    return any(accepts(p) for p in set(permutations(w)))
