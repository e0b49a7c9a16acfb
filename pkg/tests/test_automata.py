import pytest
from hypothesis import given, settings, strategies as st

from parikhkit.automata import (
    EPS,
    Nfa,
    accepting_runs_upto,
    bounded_sublanguage,
    check_path,
    complete,
    determinize_complete,
    elementary_cycles,
    is_accepting,
    label_of,
    parikh_image,
    parikh_vector,
    product,
    realize_run,
    words_upto,
)
from parikhkit.errors import InvalidInputError
from parikhkit.semilinear import SemilinearSet, iter_box, sl_member

AB_STAR = Nfa(2, "ab", [(0, "a", 1), (1, "b", 0)], 0, {0})
A_STAR = Nfa(1, "a", [(0, "a", 0)], 0, {0})
# a^n b^n shape: a*b*, used with a count constraint elsewhere
ASTAR_BSTAR = Nfa(2, "ab", [(0, "a", 0), (0, "b", 1), (1, "b", 1)], 0, {0, 1})
ENDS_IN_B = Nfa(2, "ab", [(0, "a", 0), (0, "b", 0), (0, "b", 1)], 0, {1})
AB_OR_BA_STAR = Nfa(
    3, "ab", [(0, "a", 1), (1, "b", 0), (0, "b", 2), (2, "a", 0)], 0, {0}
)
WITH_EPS = Nfa(3, "ab", [(0, "a", 1), (1, EPS, 2), (2, "b", 0), (1, EPS, 0)], 0, {0})


def random_nfas(max_states=3, alphabet="ab", eps=True):
    labels = list(alphabet) + ([EPS] if eps else [])

    def build(n, trans, finals):
        trans = [(p % n, a, q % n) for p, a, q in trans]
        return Nfa(n, alphabet, trans, 0, {f % n for f in finals})

    return st.integers(1, max_states).flatmap(
        lambda n: st.builds(
            build,
            st.just(n),
            st.lists(
                st.tuples(st.integers(0, 9), st.sampled_from(labels), st.integers(0, 9)),
                max_size=5,
            ),
            st.sets(st.integers(0, 9), max_size=2),
        )
    )


def test_label_of():
    assert label_of(AB_STAR, ()) == ()
    assert label_of(AB_STAR, (0, 1)) == ("a", "b")
    assert label_of(WITH_EPS, (0, 1, 2)) == ("a", "b")
    with pytest.raises(InvalidInputError):
        label_of(AB_STAR, (0, 0))


def test_accepts_with_epsilon():
    assert WITH_EPS.accepts("")
    assert WITH_EPS.accepts("ab")
    assert WITH_EPS.accepts("aab")
    assert not WITH_EPS.accepts("b")


def test_invalid_automata():
    with pytest.raises(InvalidInputError):
        Nfa(1, "a", [(0, "b", 0)])
    with pytest.raises(InvalidInputError):
        Nfa(1, "a", [(0, "a", 1)])
    with pytest.raises(InvalidInputError):
        Nfa(1, "a", [], 0, {2})


def test_product_examples():
    P = product(A_STAR, A_STAR).nfa
    assert all(P.accepts("a" * n) for n in range(7))
    anbn_shape = Nfa(3, "ab", [(0, "a", 0), (0, "b", 1), (1, "b", 1), (0, "a", 2)], 0, {0, 1})
    P = product(anbn_shape, ASTAR_BSTAR).nfa
    for w in words_upto("ab", 8):
        assert P.accepts(w) == anbn_shape.accepts(w)
    empty = Nfa(1, "ab", [], 0, ())
    P = product(AB_STAR, empty).nfa
    assert not any(P.accepts(w) for w in words_upto("ab", 6))
    with pytest.raises(InvalidInputError):
        product(A_STAR, AB_STAR)


@settings(max_examples=50, deadline=None)
@given(random_nfas(), random_nfas())
def test_product_language_and_back_maps(A, B):
    prod = product(A, B)
    for w in words_upto("ab", 5):
        assert prod.nfa.accepts(w) == (A.accepts(w) and B.accepts(w))
    for k, t in enumerate(prod.nfa.transitions):
        p, q = prod.pairs[t.src]
        i, j = prod.left[k], prod.right[k]
        assert i is not None or j is not None
        if i is not None:
            assert A.transitions[i].src == p and A.transitions[i].label == t.label
        if j is not None:
            assert B.transitions[j].src == q and B.transitions[j].label == t.label


def test_determinize_examples():
    D = determinize_complete(AB_STAR)
    assert D.is_deterministic and D.is_complete
    for w in words_upto("ab", 8):
        assert D.accepts(w) == AB_STAR.accepts(w)
    D = determinize_complete(ENDS_IN_B)
    for w in words_upto("ab", 8):
        assert D.accepts(w) == (len(w) > 0 and w[-1] == "b")
    D = determinize_complete(Nfa(1, "ab", [], 0, ()))
    assert D.num_states == 1 and not D.finals
    with pytest.raises(InvalidInputError):
        determinize_complete(WITH_EPS)


@settings(max_examples=50, deadline=None)
@given(random_nfas(eps=False))
def test_determinize_structure(A):
    D = determinize_complete(A)
    assert D.is_deterministic and D.is_complete
    for w in words_upto("ab", 5):
        assert D.accepts(w) == A.accepts(w)


def test_complete_keeps_indices():
    B, added = complete(AB_STAR)
    assert B.transitions[:2] == AB_STAR.transitions
    assert added == len(B.transitions) - 2 and B.is_complete


def test_elementary_cycles_examples():
    assert elementary_cycles(A_STAR) == [(0,)]
    two_loops = Nfa(1, "ab", [(0, "a", 0), (0, "b", 0)], 0, {0})
    assert len(elementary_cycles(two_loops)) == 2
    assert sorted(elementary_cycles(AB_STAR)) == [(0, 1), (1, 0)]


def _brute_cycles(A):
    """Closed paths of length <= |Q| whose only repeated state is the start."""
    out = set()

    def go(start, q, path, seen):
        for i in A.out[q]:
            r = A.transitions[i].dst
            if r == start:
                out.add(path + (i,))
            elif r not in seen and len(path) + 1 < A.num_states:
                go(start, r, path + (i,), seen | {r})

    for s in A.states:
        go(s, s, (), {s})
    return out


@settings(max_examples=50, deadline=None)
@given(random_nfas())
def test_elementary_cycles_exhaustive(A):
    cycles = elementary_cycles(A)
    assert len(cycles) == len(set(cycles))
    assert set(cycles) == _brute_cycles(A)


def test_parikh_image_examples():
    img = parikh_image(AB_STAR)
    target = SemilinearSet.linear((0, 0), [(1, 1)])
    for v in iter_box(2, 10):
        assert sl_member(v, img) == sl_member(v, target)
    no_final = Nfa(2, "ab", [(0, "a", 1)], 0, ())
    assert parikh_image(no_final).is_empty()
    assert parikh_image(A_STAR) == SemilinearSet.linear((0,), [(1,)])


def check_parikh_image(A, run_bound=12, box=6):
    img = parikh_image(A)
    for run in accepting_runs_upto(A, run_bound):
        assert sl_member(parikh_vector(run, A.size), img)
    for v in iter_box(A.size, box):
        if sl_member(v, img):
            run = realize_run(A, v)
            assert run is not None and is_accepting(A, run)
            assert parikh_vector(run, A.size) == v


@pytest.mark.parametrize("A", [AB_STAR, A_STAR, ASTAR_BSTAR, ENDS_IN_B, WITH_EPS])
def test_parikh_image_sound_and_complete(A):
    box = 6 if A.size <= 3 else 3
    check_parikh_image(A, box=box)


@settings(max_examples=40, deadline=None)
@given(random_nfas())
def test_parikh_image_random(A):
    check_parikh_image(A, run_bound=8, box=2)


def test_bounded_sublanguage_examples():
    (scheme,) = bounded_sublanguage(A_STAR)
    assert scheme.base == () and scheme.cycles == ((0, (0,)),)
    assert [scheme.generate((k,)) for k in range(3)] == [(), (0,), (0, 0)]
    assert bounded_sublanguage(Nfa(1, "ab", [], 0, ())) == []


def _generated_vectors(A, schemes, reps=2):
    out = set()
    for s in schemes:
        for counts in iter_box(len(s.cycles), reps):
            run = s.generate(counts)
            assert is_accepting(A, run)
            check_path(A, run, start=A.initial)
            out.add(parikh_vector(run, A.size))
    return out


@pytest.mark.parametrize("A", [AB_OR_BA_STAR, ASTAR_BSTAR, WITH_EPS])
def test_bounded_sublanguage_reproduces_image(A):
    schemes = bounded_sublanguage(A)
    for s in schemes:
        for counts in iter_box(len(s.cycles), 3):
            assert is_accepting(A, s.generate(counts))
    img = parikh_image(A)
    schemes_img = SemilinearSet(A.size, tuple(s.linear_set(A.size) for s in schemes))
    for v in iter_box(A.size, 8 if A.size <= 3 else 4):
        assert sl_member(v, img) == sl_member(v, schemes_img)
    # generated runs hit every image vector in a small box
    gen = _generated_vectors(A, schemes, reps=3)
    for v in iter_box(A.size, 2):
        if sl_member(v, img):
            assert v in gen


@settings(max_examples=30, deadline=None)
@given(random_nfas())
def test_bounded_sublanguage_generates_valid_runs(A):
    for s in bounded_sublanguage(A):
        for counts in iter_box(len(s.cycles), 2):
            assert is_accepting(A, s.generate(counts))
