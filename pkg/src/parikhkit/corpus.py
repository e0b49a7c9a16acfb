"""Witness languages as executable machines, each with a direct oracle.

Every entry pairs a machine with a word predicate written straight from the
language definition.  ``validate`` compares the two on all words up to the
entry's bound.  Entries marked as reconstructions are machines designed
here for languages whose machine is not spelled out anywhere; their only
warrant is oracle agreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .affine import AffineMap, Apa, accepted_upto, embed_ca
from .automata import Nfa, as_word, words_upto
from .errors import InvalidInputError
from .parikh import Ca, Pa
from .rbcm import Rbcm
from .semilinear import AffineForm, QAffineSet, QClause, cong, const, eq, le, var


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    model: str  # "ca", "pa", "apa" or "rbcm"
    machine: object
    oracle: Callable
    alphabet: tuple
    bound: int
    reconstruction: bool = False
    description: str = ""

    def accepts(self, w) -> bool:
        return self.machine.accepts(w)


def _s(w):
    return "".join(as_word(w))


def _count(w, a):
    return sum(1 for x in as_word(w) if x == a)


# -- oracles ---------------------------------------------------------------

def is_anbn(w):
    s = _s(w)
    n = len(s) // 2
    return len(s) % 2 == 0 and s == "a" * n + "b" * n


def is_equal(w):
    """``{a,b}* . {a^n # a^n}``."""
    s = _s(w)
    if s.count("#") != 1:
        return False
    left, right = s.split("#")
    n = len(right)
    return set(right) <= {"a"} and len(left) >= n and left[len(left) - n:] == "a" * n


def is_pal(w):
    s = _s(w)
    if s.count("#") != 1:
        return False
    u, v = s.split("#")
    return len(u) > 0 and v == u[::-1]


def is_copy(w):
    s = _s(w)
    if s.count("#") != 1:
        return False
    u, v = s.split("#")
    return u == v


def is_exp(w):
    """``{a^n b^(2^n)}``."""
    s = _s(w)
    n = len(s) - len(s.lstrip("a"))
    return s == "a" * n + "b" * (2 ** n)


def is_nsum(w):
    """``a^n ♠ b^m1 # ... # b^mk ♣ c^(m1+...+mn)`` with ``k >= n``."""
    s = _s(w)
    if s.count("♠") != 1 or s.count("♣") != 1 or s.index("♠") > s.index("♣"):
        return False
    head, rest = s.split("♠")
    mid, tail = rest.split("♣")
    if set(head) - {"a"} or set(tail) - {"c"} or set(mid) - {"b", "#"}:
        return False
    blocks = [len(b) for b in mid.split("#")]
    n = len(head)
    return len(blocks) >= n and len(tail) == sum(blocks[:n])


def is_sigma_anbn(w):
    """``{a,b}* . {a^n b^n}``; ``n = 0`` makes every word a member."""
    s = _s(w)
    return any(is_anbn(s[i:]) for i in range(len(s) + 1))


# -- machines --------------------------------------------------------------

ASTAR_BSTAR = Nfa(2, "ab", [(0, "a", 0), (0, "b", 1), (1, "b", 1)], 0, {0, 1})


def _anbn():
    x = [var(i, 3) for i in range(3)]
    return Ca.of(ASTAR_BSTAR, eq(x[0], x[1] + x[2]))


def _anbn_finite():
    x = [var(i, 3) for i in range(3)]
    phi = eq(x[0], x[1] + x[2]) & le(const(1, 3), x[0]) & le(x[0], const(2, 3))
    return Ca.of(ASTAR_BSTAR, phi)


def _empty():
    # a^n b^n with an odd length: satisfiable nowhere
    x = [var(i, 3) for i in range(3)]
    return Ca.of(ASTAR_BSTAR, eq(x[0], x[1] + x[2]) & cong(2, x[0] + x[1] + x[2], const(1, 3)))


def _parity():
    A = Nfa(1, "ab", [(0, "a", 0), (0, "b", 0)], 0, {0})
    return Ca.of(A, cong(2, var(0, 2), var(1, 2)))


def _equal_pa():
    A = Nfa(3, "ab#", [
        (0, "a", 0), (0, "b", 0),
        (0, "a", 1), (1, "a", 1),
        (0, "#", 2), (1, "#", 2),
        (2, "a", 2),
    ], 0, {2})
    vecs = [(0, 0), (0, 0), (1, 0), (1, 0), (0, 0), (0, 0), (0, 1)]
    return Pa(A, vecs, 2, eq(var(0, 2), var(1, 2)))


def _equal_counts():
    A = Nfa(1, "ab", [(0, "a", 0), (0, "b", 0)], 0, {0})
    return Pa(A, [(1, 0), (0, 1)], 2, eq(var(0, 2), var(1, 2)))


def _equal_counts_guess():
    # guesses where the word switches to a second phase; same letter vectors
    A = Nfa(2, "ab", [
        (0, "a", 0), (0, "b", 0), (0, "a", 1), (0, "b", 1), (1, "a", 1), (1, "b", 1),
    ], 0, {0, 1})
    return Pa(A, [(1, 0), (0, 1)] * 3, 2, eq(var(0, 2), var(1, 2)))


def _sigma_anbn():
    A = Nfa(3, "ab", [
        (0, "a", 0), (0, "b", 0),
        (0, "a", 1), (1, "a", 1),
        (1, "b", 2), (2, "b", 2),
    ], 0, {0, 1, 2})
    x = [var(i, 6) for i in range(6)]
    # counts of the guessed a^n b^n suffix must match
    return Ca.of(A, eq(x[2] + x[3], x[4] + x[5]))


def _pal():
    h = Fraction(1, 2)
    A = Nfa(3, "ab#", [
        (0, "a", 1), (0, "b", 1), (1, "a", 1), (1, "b", 1), (1, "#", 2), (2, "a", 2), (2, "b", 2),
    ], 0, {2})
    ident = ((1, 0), (0, 1))
    zero = ((0, 0), (0, 0))
    maps = [
        AffineMap(zero, (2, 1)),
        AffineMap(zero, (2, 0)),
        AffineMap(((2, 0), (1, 1)), (0, 0)),
        AffineMap(((2, 0), (0, 1)), (0, 0)),
        AffineMap(ident, (0, 0)),
        AffineMap(((h, 0), (-h, 1)), (0, 0)),
        AffineMap(((h, 0), (0, 1)), (0, 0)),
    ]
    # accept when p = 1 and v = 0
    C = QAffineSet(2, (QClause((AffineForm((1, 0), -1), AffineForm((0, 1), 0)), ()),))
    return Apa(A, 2, maps, C, "Q")


def _copy():
    # base-3 code with digits a=1, b=2 for each half; accept when codes match
    A = Nfa(2, "ab#", [(0, "a", 0), (0, "b", 0), (0, "#", 1), (1, "a", 1), (1, "b", 1)], 0, {1})
    first = ((3, 0), (0, 1))
    second = ((1, 0), (0, 3))
    ident = ((1, 0), (0, 1))
    maps = [
        AffineMap(first, (1, 0)),
        AffineMap(first, (2, 0)),
        AffineMap(ident, (0, 0)),
        AffineMap(second, (0, 1)),
        AffineMap(second, (0, 2)),
    ]
    C = QAffineSet(2, (QClause((AffineForm((1, -1), 0),), ()),))
    return Apa(A, 2, maps, C, "Q")


def _exp():
    A = Nfa(2, "ab", [(0, "a", 0), (0, "b", 1), (1, "b", 1)], 0, {1})
    ident = ((1, 0), (0, 1))
    maps = [
        AffineMap(((2, 0), (0, 1)), (1, 0)),
        AffineMap(ident, (0, 1)),
        AffineMap(ident, (0, 1)),
    ]
    x, y = var(0, 2), var(1, 2)
    return Apa(A, 2, maps, eq(y, x + const(1, 2)), "N")


def _nsum():
    # counters: 0 holds the a's still to match, 1 the b's of the chosen blocks
    s0, s1, cnt, skip, sc, acc = range(6)
    T = [
        (s0, "a", (None, None), s0, "R", (1, 0)),
        (s0, "♠", (None, None), s1, "R", (0, 0)),
        (sc, "c", (None, 1), sc, "R", (0, -1)),
        (sc, "♯", (None, 0), acc, "S", (0, 0)),
        (cnt, "b", (None, None), cnt, "R", (0, 1)),
        (cnt, "#", (None, None), s1, "R", (0, 0)),
        (cnt, "♣", (0, None), sc, "R", (0, 0)),
        (skip, "b", (None, None), skip, "R", (0, 0)),
        (skip, "#", (None, None), skip, "R", (0, 0)),
        (skip, "♣", (None, None), sc, "R", (0, 0)),
    ]
    for letter in ("b", "#", "♣"):
        T.append((s1, letter, (1, None), cnt, "S", (-1, 0)))
        T.append((s1, letter, (0, None), skip, "S", (0, 0)))
    return Rbcm(6, ("a", "♠", "b", "#", "♣", "c"), 2, T, s0, {acc}, 1)


def _regular(A):
    return Ca.of(A)


_BUILDERS = {
    "anbn": lambda: CorpusEntry(
        "anbn", "ca", _anbn(), is_anbn, ("a", "b"), 10, description="a^n b^n",
    ),
    "ab_star": lambda: CorpusEntry(
        "ab_star", "ca", _regular(Nfa(2, "ab", [(0, "a", 1), (1, "b", 0)], 0, {0})),
        lambda w: _s(w) == "ab" * (len(_s(w)) // 2), ("a", "b"), 10, description="(ab)*",
    ),
    "astarbstar": lambda: CorpusEntry(
        "astarbstar", "ca", _regular(ASTAR_BSTAR),
        lambda w: "ba" not in _s(w), ("a", "b"), 10, description="a*b*",
    ),
    "anbn_finite": lambda: CorpusEntry(
        "anbn_finite", "ca", _anbn_finite(), lambda w: _s(w) in ("ab", "aabb"),
        ("a", "b"), 10, description="{ab, aabb}",
    ),
    "empty": lambda: CorpusEntry(
        "empty", "ca", _empty(), lambda w: False, ("a", "b"), 10,
        description="a^n b^n of odd length, hence empty",
    ),
    "parity": lambda: CorpusEntry(
        "parity", "ca", _parity(), lambda w: (_count(w, "a") - _count(w, "b")) % 2 == 0,
        ("a", "b"), 10, description="|w|_a = |w|_b mod 2",
    ),
    "ab_or_ba_star": lambda: CorpusEntry(
        "ab_or_ba_star", "ca",
        _regular(Nfa(3, "ab", [(0, "a", 1), (1, "b", 0), (0, "b", 2), (2, "a", 0)], 0, {0})),
        lambda w: all(_s(w)[i:i + 2] in ("ab", "ba") for i in range(0, len(_s(w)), 2)),
        ("a", "b"), 10, description="(ab + ba)*",
    ),
    "equal": lambda: CorpusEntry(
        "equal", "pa", _equal_pa(), is_equal, ("a", "b", "#"), 7, reconstruction=True,
        description="{a,b}* {a^n # a^n}: guesses where the a^n block starts",
    ),
    "equal_counts": lambda: CorpusEntry(
        "equal_counts", "pa", _equal_counts(), lambda w: _count(w, "a") == _count(w, "b"),
        ("a", "b"), 10, description="|w|_a = |w|_b, letter vectors only",
    ),
    "equal_counts_guess": lambda: CorpusEntry(
        "equal_counts_guess", "pa", _equal_counts_guess(),
        lambda w: _count(w, "a") == _count(w, "b"), ("a", "b"), 8,
        description="|w|_a = |w|_b on a nondeterministic automaton",
    ),
    "sigma_anbn": lambda: CorpusEntry(
        "sigma_anbn", "ca", _sigma_anbn(), is_sigma_anbn, ("a", "b"), 8,
        description="{a,b}* {a^n b^n}; equals {a,b}* since n may be 0",
    ),
    "pal": lambda: CorpusEntry(
        "pal", "apa", _pal(), is_pal, ("a", "b", "#"), 9,
        description="{w # reverse(w) : w nonempty}, rational registers",
    ),
    "copy": lambda: CorpusEntry(
        "copy", "apa", _copy(), is_copy, ("a", "b", "#"), 8, reconstruction=True,
        description="{w # w}: base-3 codes of both halves compared",
    ),
    "exp": lambda: CorpusEntry(
        "exp", "apa", _exp(), is_exp, ("a", "b"), 10, description="a^n b^(2^n)",
    ),
    "anbn_apa": lambda: CorpusEntry(
        "anbn_apa", "apa", embed_ca(_anbn()), is_anbn, ("a", "b"), 8,
        description="a^n b^n with registers counting transitions",
    ),
    "nsum": lambda: CorpusEntry(
        "nsum", "rbcm", _nsum(), is_nsum, ("a", "♠", "b", "#", "♣", "c"), 6, reconstruction=True,
        description="a^n ♠ b^m1 # ... # b^mk ♣ c^(m1+...+mn), k >= n",
    ),
}


def names() -> list:
    return list(_BUILDERS)


def build(name: str) -> CorpusEntry:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise InvalidInputError(f"unknown corpus entry {name!r}; known: {', '.join(_BUILDERS)}") from None


def entries(model=None) -> list:
    out = [build(n) for n in _BUILDERS]
    return [e for e in out if model is None or e.model == model]


def validate(entry: CorpusEntry, bound: int | None = None) -> list:
    """Words up to ``bound`` on which machine and oracle disagree."""
    n = entry.bound if bound is None else bound
    if entry.model == "apa":
        accepted = accepted_upto(entry.machine, n)
        decide = lambda w: w in accepted  # noqa: E731
    else:
        decide = entry.machine.accepts
    return [w for w in words_upto(entry.alphabet, n) if decide(w) != bool(entry.oracle(w))]
