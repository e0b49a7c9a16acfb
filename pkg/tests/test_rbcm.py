import pytest
from hypothesis import given, settings, strategies as st

from helpers import formulas, random_nfas
from parikhkit import corpus
from parikhkit.automata import Nfa, words_upto
from parikhkit.errors import InvalidInputError, ResourceLimitError, UnsupportedError
from parikhkit.parikh import Ca, membership
from parikhkit.rbcm import END, Accept, FuelExhausted, Rbcm, Reject, accepts, compile_ca, simulate
from parikhkit.semilinear import Formula, Term, eq

NSUM = corpus.build("nsum")


def _check_accept(M, res):
    """Structural checks on an accepting trace."""
    assert isinstance(res, Accept)
    assert all(c >= 0 for cfg in res.trace for c in cfg.counters)
    assert max(res.reversals, default=0) <= M.reversal_bound
    assert res.trace[-1].state in M.finals


def test_initial_final_accepts_empty_word():
    M = Rbcm(1, "a", 0, (), 0, {0})
    res = simulate(M, "")
    assert isinstance(res, Accept) and res.trace == ((0, 0, ()),)
    assert isinstance(simulate(Rbcm(1, "a", 0, (), 0, ()), ""), Reject)


def test_simple_counter_machine():
    # a^n b^n with one counter and one reversal
    T = [
        (0, "a", (None,), 0, "R", (1,)),
        (0, "b", (1,), 1, "R", (-1,)),
        (1, "b", (1,), 1, "R", (-1,)),
        (0, END, (0,), 2, "S", (0,)),
        (1, END, (0,), 2, "S", (0,)),
    ]
    M = Rbcm(3, "ab", 1, T, 0, {2}, 1)
    assert M.is_deterministic
    for w in words_upto("ab", 8):
        res = simulate(M, w)
        assert isinstance(res, Accept) == corpus.is_anbn(w)
        if isinstance(res, Accept):
            _check_accept(M, res)
    res = simulate(M, "aabb")
    assert res.dump().splitlines() == ["0 0 0", "0 1 1", "0 2 2", "1 3 1", "1 4 0", "2 4 0"]


def test_reversal_bound_cuts_branches():
    # up, down, up again needs two reversals
    T = [
        (0, "a", (None,), 1, "R", (1,)),
        (1, "a", (None,), 2, "R", (-1,)),
        (2, "a", (None,), 3, "R", (1,)),
    ]
    tight = Rbcm(4, "a", 1, T, 0, {3}, 1)
    res = simulate(tight, "aaa")
    assert isinstance(res, Reject) and res.over_bound
    assert isinstance(simulate(Rbcm(4, "a", 1, T, 0, {3}, 2), "aaa"), Accept)


def test_counters_never_go_negative():
    M = Rbcm(2, "a", 1, [(0, "a", (None,), 1, "R", (-1,))], 0, {1})
    assert isinstance(simulate(M, "a"), Reject)


def test_fuel_exhaustion_is_not_rejection():
    # an endless stationary loop that keeps counting
    M = Rbcm(2, "a", 1, [(0, "a", (None,), 0, "S", (1,))], 0, {1})
    res = simulate(M, "a", fuel=50)
    assert isinstance(res, FuelExhausted) and res.steps == 50
    with pytest.raises(ResourceLimitError):
        accepts(M, "a", fuel=50)


def test_nondeterministic_search():
    # guess whether to count the a's or the b's; accept when the guessed letter appears twice
    T = [
        (0, "a", (None, None), 1, "S", (0, 0)),
        (0, "a", (None, None), 2, "S", (0, 0)),
        (1, "a", (None, None), 1, "R", (1, 0)),
        (1, "b", (None, None), 1, "R", (0, 0)),
        (2, "a", (None, None), 2, "R", (0, 0)),
        (2, "b", (None, None), 2, "R", (0, 1)),
        (1, END, (1, None), 3, "S", (0, 0)),
        (2, END, (None, 1), 3, "S", (0, 0)),
    ]
    M = Rbcm(4, "ab", 2, T, 0, {3})
    assert not M.is_deterministic
    assert M.accepts("ab") and M.accepts("a") and not M.accepts("b")


def test_validation():
    with pytest.raises(InvalidInputError):
        Rbcm(1, ("a", END), 0, ())
    with pytest.raises(InvalidInputError):
        Rbcm(1, "a", 1, [(0, "a", (None,), 0, "R", (2,))])
    with pytest.raises(InvalidInputError):
        Rbcm(1, "a", 1, [(0, "a", (2,), 0, "R", (0,))])
    with pytest.raises(InvalidInputError):
        Rbcm(1, "a", 1, [(0, "a", (None,), 0, "L", (0,))])
    with pytest.raises(InvalidInputError):
        Rbcm(1, "a", 1, [(0, "c", (None,), 0, "R", (0,))])
    with pytest.raises(InvalidInputError):
        simulate(Rbcm(1, "a", 0, ()), "b")


# -- NSUM -------------------------------------------------------------------

def test_nsum_examples():
    M = NSUM.machine
    assert M.is_deterministic
    # one a selects the first block, of two b's
    assert M.accepts("a♠bb#b♣cc")
    assert not M.accepts("a♠bb#b♣ccc")
    assert M.accepts("aa♠bb#b♣ccc")
    assert not M.accepts("aa♠bb♣cc")  # fewer blocks than a's
    assert M.accepts("♠♣")
    for w in ["a♠bb#b♣cc", "aa♠bb#b♣ccc", "♠b#b♣"]:
        assert M.accepts(w) == corpus.is_nsum(w)


def test_nsum_agrees_with_definition():
    assert corpus.validate(NSUM, 6) == []


# -- compiling constrained automata ----------------------------------------

@pytest.mark.parametrize("name,bound", [("parity", 10), ("anbn", 10), ("ab_or_ba_star", 8)])
def test_compile_agrees(name, bound):
    e = corpus.build(name)
    R = compile_ca(e.machine)
    assert R.is_deterministic
    for w in words_upto(e.alphabet, bound):
        res = simulate(R, w)
        assert not isinstance(res, FuelExhausted)
        assert isinstance(res, Accept) == e.oracle(w), w
        if isinstance(res, Accept):
            _check_accept(R, res)
        else:
            assert not res.over_bound


def test_compile_with_formula_override():
    e = corpus.build("astarbstar")
    # a*b* restricted to one more a than b: count a-loop and b-transitions
    A = e.machine.automaton
    n = A.size
    a_edges = [i for i, t in enumerate(A.transitions) if t.label == "a"]
    b_edges = [i for i, t in enumerate(A.transitions) if t.label == "b"]
    lhs = Term(tuple(1 if i in a_edges else 0 for i in range(n)), 0)
    rhs = Term(tuple(1 if i in b_edges else 0 for i in range(n)), 1)
    R = compile_ca(e.machine, eq(lhs, rhs))
    got = {w for w in words_upto("ab", 7) if R.accepts(w)}
    assert got == {tuple("a" * (k + 1) + "b" * k) for k in range(4)}


def test_compile_rejects_bad_input():
    A = Nfa(2, "a", [(0, "a", 0), (0, "a", 1)], 0, {1})
    with pytest.raises(UnsupportedError):
        compile_ca(Ca.of(A))
    det = Nfa(1, "a", [(0, "a", 0)], 0, {0})
    two = Ca(det, Ca.of(det).clauses * 2)
    with pytest.raises(InvalidInputError):
        compile_ca(two, Formula.true(1))


@settings(max_examples=40, deadline=None)
@given(random_nfas(max_states=2, deterministic=True, max_trans=4).flatmap(
    lambda A: st.tuples(st.just(A), formulas(A.size, max_clauses=2))
))
def test_compile_random(pair):
    A, phi = pair
    M = Ca.of(A, phi)
    R = compile_ca(M)
    assert R.is_deterministic
    for w in words_upto("ab", 4):
        res = simulate(R, w, fuel=200_000)
        assert isinstance(res, Accept) == membership(M, w)
        if isinstance(res, Accept):
            _check_accept(R, res)
        else:
            assert not res.over_bound
