import pytest
from hypothesis import given, settings, strategies as st

from parikhkit import corpus
from parikhkit.automata import Nfa, parikh_vector
from parikhkit.errors import InvalidInputError, UnsupportedError
from parikhkit.parikh import Ca, find_run, membership, pa_to_ca
from parikhkit.pumping import (
    bounded_nerode_distinct,
    decompositions,
    pumping_fails,
    pump_decompose,
    pumping_constants,
    size_ok,
)

ANBN = corpus.build("anbn").machine
EQUAL_CA = pa_to_ca(corpus.build("equal").machine)


def _check(M, w):
    p, _, ell = pumping_constants(M)
    d = pump_decompose(M, w)
    assert d.word == tuple(w)
    assert size_ok(d.u, d.v, d.x, p, ell)
    assert 0 < len(d.v) <= p and len(d.x) > p and len(d.u + d.v + d.x + d.v) <= ell
    for s in d.pumped():
        assert membership(M, s)
    n = M.automaton.size
    base = parikh_vector(d.eta_u + d.eta_v + d.eta_x + d.eta_v + d.eta_z, n)
    for path in d.pumped_paths():
        assert parikh_vector(path, n) == base
    return d


# -- constants -------------------------------------------------------------

def test_constants_examples():
    two = Ca.of(Nfa(2, "ab", [(0, "a", 0), (0, "b", 1)], 0, {1}))
    assert pumping_constants(two) == (2, 1, 6)
    line = Ca.of(Nfa(3, "ab", [(0, "a", 1), (1, "b", 2)], 0, {2}))
    assert pumping_constants(line) == (3, 0, 3)
    loops = Ca.of(Nfa(1, "ab", [(0, "a", 0), (0, "b", 0)], 0, {0}))
    assert pumping_constants(loops) == (1, 2, 5)


@pytest.mark.parametrize("name", ["anbn", "ab_star", "parity", "equal"])
def test_constants_formula(name):
    e = corpus.build(name)
    M = e.machine if e.model == "ca" else pa_to_ca(e.machine)
    p, m, ell = pumping_constants(M)
    assert p == M.automaton.num_states and ell == p * (2 * m + 1)


# -- decompositions --------------------------------------------------------

def test_pump_anbn():
    ell = pumping_constants(ANBN).ell
    d = _check(ANBN, "a" * ell + "b" * ell)
    assert set(d.v) == {"a"}


def test_pump_equal():
    ell = pumping_constants(EQUAL_CA).ell
    w = "aab" * 9 + "aa#aa"
    assert len(w) > ell
    _check(EQUAL_CA, w)


def test_pump_with_given_run():
    M = corpus.build("ab_star").machine
    w = "ab" * 6
    run = find_run(M, w)
    assert pump_decompose(M, w, run) == pump_decompose(M, w)
    with pytest.raises(InvalidInputError):
        pump_decompose(M, w, run[:-1] + run[:1])


def test_pump_errors():
    ell = pumping_constants(ANBN).ell
    with pytest.raises(InvalidInputError):
        pump_decompose(ANBN, "ab")
    with pytest.raises(InvalidInputError):
        pump_decompose(ANBN, "a" * ell + "b" * (ell - 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 6).flatmap(lambda n: st.permutations("ab" * n)))
def test_pump_equal_counts(w):
    # one state, one loop per letter: runs and words determine each other, so
    # a decomposition along the run exists iff some size-legal split exists
    M = pa_to_ca(corpus.build("equal_counts").machine)
    p, _, ell = pumping_constants(M)
    assert len(w) > ell
    if not any(decompositions(w, p, ell)):
        with pytest.raises(UnsupportedError):
            pump_decompose(M, w)
        return
    d = _check(M, w)
    for s in d.pumped():
        assert s.count("a") == s.count("b")


def test_block_argument_only_gives_x_of_length_p():
    # p = 1 and l = 5: the five one-letter blocks of aaabb repeat the a-loop
    # in blocks 0 and 2, leaving |x| = 1 = p, and no split has |x| > p
    M = pa_to_ca(corpus.build("equal_counts").machine)
    p, m, ell = pumping_constants(M)
    assert (p, m, ell) == (1, 2, 5)
    assert membership(M, "aaabbb")
    assert list(decompositions("aaabbb", p, ell)) == []
    with pytest.raises(UnsupportedError):
        pump_decompose(M, "aaabbb")


def test_decompositions_are_size_legal():
    w = "aabaab"
    found = list(decompositions(w, 2, 6))
    assert found
    for u, v, x, z in found:
        assert u + v + x + v + z == tuple(w) and size_ok(u, v, x, 2, 6)
    assert ((), ("a",), tuple("ab"), tuple("aab")) not in found  # |x| must exceed p
    assert ((), ("a",), tuple("aba"), ("b",)) in found


def test_copy_refutation_replay():
    # constants of a machine claimed to recognize the copy language
    p, _, ell = pumping_constants(EQUAL_CA)
    half = ("a" * p + "b") * ell
    w = half + "#" + half
    assert corpus.is_copy(w)
    seen = 0
    for u, v, x, z in decompositions(w, p, ell):
        seen += 1
        assert not corpus.is_copy(u + v + v + x + z)
    assert seen > 0
    assert pumping_fails(corpus.is_copy, w, p, ell)
    # an actual member of the class pumps fine
    assert not pumping_fails(corpus.is_equal, "aab" * 9 + "aa#aa", p, ell)


# -- Nerode refutation -----------------------------------------------------

def test_nerode_examples():
    assert bounded_nerode_distinct(ANBN, "a", "aa", 3) == ("b",)
    assert bounded_nerode_distinct(ANBN, "ab", "ab", 5) is None
    assert bounded_nerode_distinct(ANBN, "aab", "aab", 0) is None
    # equivalent prefixes: both are dead
    assert bounded_nerode_distinct(ANBN, "ba", "bba", 4) is None


def test_nerode_equal_separation():
    # for every size-legal split of a prefix of (a^p b)^l, the suffix #a^k
    # separates u v x v from u v v x
    p, ell = 2, 6
    w = ("a" * p + "b") * ell
    checked = 0
    for u, v, x, _ in decompositions(w, p, ell):
        w1, w2 = u + v + x + v, u + v + v + x
        k = len(w1) - len("".join(w1).rstrip("a"))
        z = ("#",) + ("a",) * k
        assert EQUAL_CA.accepts(w1 + z) and not EQUAL_CA.accepts(w2 + z)
        found = bounded_nerode_distinct(EQUAL_CA, w1, w2, k + 1)
        assert found is not None
        assert corpus.is_equal(w1 + found) != corpus.is_equal(w2 + found)
        checked += 1
    assert checked > 0


def test_nerode_on_other_machines():
    pal = corpus.build("pal").machine
    assert bounded_nerode_distinct(pal, "a", "b", 2) == ("#", "a")
    nsum = corpus.build("nsum").machine
    z = bounded_nerode_distinct(nsum, "a♠", "aa♠", 3)
    assert z is not None and corpus.is_nsum("a♠" + "".join(z)) != corpus.is_nsum("aa♠" + "".join(z))
