"""Pumping decompositions for constrained automata, and Nerode refutation.

For an accepting run ``pi`` of a word longer than ``l = p(2m+1)`` (``p``
states, ``m`` anchored elementary cycles) the run contains the same
elementary cycle twice, far enough apart: ``pi = eta_u eta_v eta_x eta_v
eta_z``.  Moving one copy of ``eta_v`` next to the other keeps both the
path valid and its transition counts, so ``u v v x z`` and ``u x v v z`` are
accepted as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple

from .automata import as_word, elementary_cycles, label_of, parikh_vector, path_states, words_upto
from .errors import InvalidInputError, UnsupportedError
from .parikh import Ca, find_run, membership


class PumpingConstants(NamedTuple):
    p: int
    m: int
    ell: int


def pumping_constants(M: Ca) -> PumpingConstants:
    A = M.automaton
    p = A.num_states
    m = len(elementary_cycles(A))
    return PumpingConstants(p, m, p * (2 * m + 1))


@dataclass(frozen=True)
class PumpDecomposition:
    u: tuple
    v: tuple
    x: tuple
    z: tuple
    eta_u: tuple
    eta_v: tuple
    eta_x: tuple
    eta_z: tuple

    @property
    def word(self):
        return self.u + self.v + self.x + self.v + self.z

    def pumped(self):
        """``(u v v x z, u x v v z)``."""
        return (
            self.u + self.v + self.v + self.x + self.z,
            self.u + self.x + self.v + self.v + self.z,
        )

    def pumped_paths(self):
        return (
            self.eta_u + self.eta_v + self.eta_v + self.eta_x + self.eta_z,
            self.eta_u + self.eta_x + self.eta_v + self.eta_v + self.eta_z,
        )


def size_ok(u, v, x, p, ell) -> bool:
    return 0 < len(v) <= p and len(x) > p and len(u) + 2 * len(v) + len(x) <= ell


def _cycle_factors(A, states, start):
    """Lengths ``L`` such that ``path[start:start+L]`` is an elementary cycle."""
    seen = {states[start]}
    for end in range(start + 1, len(states)):
        q = states[end]
        if q == states[start]:
            yield end - start
            return
        if q in seen:
            return
        seen.add(q)


def pump_decompose(M: Ca, w, run=None) -> PumpDecomposition:
    """Decomposition ``w = u v x v z`` along an accepting run.

    Repeated occurrences of one elementary cycle are searched from the left;
    the first pair meeting ``0 < |v| <= p``, ``|x| > p`` and ``|uvxv| <= l``
    is returned after both pumped words are checked to be accepted.
    """
    A = M.automaton
    w = A.check_word(w)
    p, _, ell = pumping_constants(M)
    if len(w) <= ell:
        raise InvalidInputError(f"word of length {len(w)} is not longer than l = {ell}")
    if run is None:
        run = find_run(M, w)
        if run is None:
            raise InvalidInputError("word is not accepted")
    run = tuple(run)
    if label_of(A, run) != w:
        raise InvalidInputError("run does not spell the word")
    states = path_states(A, run)
    for s1 in range(len(run)):
        for L in _cycle_factors(A, states, s1):
            cyc = run[s1:s1 + L]
            u = label_of(A, run[:s1])
            v = label_of(A, cyc)
            for s2 in range(s1 + L, len(run) - L + 1):
                if run[s2:s2 + L] != cyc:
                    continue
                x = label_of(A, run[s1 + L:s2])
                if not size_ok(u, v, x, p, ell):
                    continue
                d = PumpDecomposition(
                    u, v, x, label_of(A, run[s2 + L:]),
                    run[:s1], cyc, run[s1 + L:s2], run[s2 + L:],
                )
                _verify(M, d, run, p, ell)
                return d
    raise UnsupportedError("no decomposition along this run meets the size bounds")


def _verify(M, d, run, p, ell):
    n = M.automaton.size
    assert d.word == label_of(M.automaton, run)
    assert size_ok(d.u, d.v, d.x, p, ell)
    for path in d.pumped_paths():
        assert parikh_vector(path, n) == parikh_vector(run, n)
    for word in d.pumped():
        assert membership(M, word), "pumped word rejected"


def decompositions(w, p, ell) -> Iterator[tuple]:
    """Every ``(u, v, x, z)`` with ``w = u v x v z`` meeting the size bounds."""
    w = as_word(w)
    n = len(w)
    for i in range(n + 1):
        for lv in range(1, p + 1):
            for lx in range(p + 1, n):
                end = i + 2 * lv + lx
                if end > min(ell, n):
                    break
                u, v = w[:i], w[i:i + lv]
                x, v2 = w[i + lv:i + lv + lx], w[i + lv + lx:end]
                if v2 == v:
                    yield u, v, x, w[end:]


def pumping_fails(member: Callable, w, p, ell) -> bool:
    """True when no size-legal decomposition of ``w`` pumps inside the language."""
    for u, v, x, z in decompositions(w, p, ell):
        if member(u + v + v + x + z) and member(u + x + v + v + z):
            return False
    return True


def bounded_nerode_distinct(M, u, v, bound: int):
    """A suffix ``z`` with ``|z| <= bound`` accepted after exactly one of
    ``u`` and ``v``, or None.

    A returned suffix proves ``u`` and ``v`` inequivalent; None proves
    nothing beyond the bound.  ``M`` is any machine with ``accepts`` and
    ``alphabet``.
    """
    u, v = as_word(u), as_word(v)
    if u == v:
        return None
    for z in words_upto(M.alphabet, bound):
        if M.accepts(u + z) != M.accepts(v + z):
            return z
    return None
