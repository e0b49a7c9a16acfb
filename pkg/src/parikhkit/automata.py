"""Finite automata with epsilon moves, runs, products and Parikh images.

Transitions are identified by their index in ``Nfa.transitions``; every
count vector (Parikh image of a run) is ordered by that index.  Words are
tuples of symbols; plain strings are accepted wherever a word is expected
and read one character per symbol.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import Counter, InvalidInputError
from .semilinear import LinearSet, SemilinearSet

EPS = None


def as_word(w) -> tuple:
    if isinstance(w, str):
        return tuple(w)
    return tuple(w)


def word_str(w) -> str:
    w = tuple(w)
    if all(isinstance(a, str) and len(a) == 1 for a in w):
        return "".join(w)
    return " ".join(str(a) for a in w)


def words_upto(alphabet: Sequence, n: int) -> Iterator[tuple]:
    """All words of length <= n in length-lexicographic order."""
    alphabet = tuple(alphabet)
    for k in range(n + 1):
        yield from cartesian(alphabet, repeat=k)


class Transition(NamedTuple):
    src: int
    label: object  # a symbol, or EPS
    dst: int


@dataclass(frozen=True)
class Nfa:
    """Automaton ``(Q, Sigma, delta, q0, F)`` with ``Q = range(num_states)``."""

    num_states: int
    alphabet: tuple
    transitions: tuple = ()
    initial: int = 0
    finals: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "finals", frozenset(self.finals))
        ts = tuple(Transition(*t) for t in self.transitions)
        object.__setattr__(self, "transitions", ts)
        if self.num_states < 1:
            raise InvalidInputError("an automaton needs at least one state")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InvalidInputError("repeated alphabet symbol")
        sigma = set(self.alphabet)
        for i, (p, a, q) in enumerate(ts):
            if not (0 <= p < self.num_states and 0 <= q < self.num_states):
                raise InvalidInputError(f"transition {i} has an endpoint out of range")
            if a is not EPS and a not in sigma:
                raise InvalidInputError(f"transition {i} uses foreign symbol {a!r}")
        if not 0 <= self.initial < self.num_states:
            raise InvalidInputError("initial state out of range")
        if any(not 0 <= f < self.num_states for f in self.finals):
            raise InvalidInputError("final state out of range")

    @property
    def states(self):
        return range(self.num_states)

    @property
    def size(self):
        return len(self.transitions)

    @cached_property
    def out(self):
        """``out[q]``: indices of transitions leaving ``q``."""
        out = [[] for _ in self.states]
        for i, t in enumerate(self.transitions):
            out[t.src].append(i)
        return tuple(tuple(x) for x in out)

    @cached_property
    def has_epsilon(self):
        return any(t.label is EPS for t in self.transitions)

    @cached_property
    def is_deterministic(self):
        if self.has_epsilon:
            return False
        seen = set()
        for p, a, _ in self.transitions:
            if (p, a) in seen:
                return False
            seen.add((p, a))
        return True

    @cached_property
    def is_complete(self):
        have = {(p, a) for p, a, _ in self.transitions if a is not EPS}
        return all((q, a) in have for q in self.states for a in self.alphabet)

    def step(self, q, a):
        """Deterministic successor of ``q`` on ``a``, or None."""
        for i in self.out[q]:
            t = self.transitions[i]
            if t.label == a:
                return t.dst
        return None

    def eps_closure(self, states):
        seen = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            for i in self.out[q]:
                t = self.transitions[i]
                if t.label is EPS and t.dst not in seen:
                    seen.add(t.dst)
                    stack.append(t.dst)
        return frozenset(seen)

    def accepts(self, w) -> bool:
        cur = self.eps_closure({self.initial})
        for a in as_word(w):
            if a not in self.alphabet:
                raise InvalidInputError(f"foreign symbol {a!r}")
            nxt = {
                self.transitions[i].dst
                for q in cur
                for i in self.out[q]
                if self.transitions[i].label == a
            }
            cur = self.eps_closure(nxt)
        return bool(cur & self.finals)

    def check_word(self, w) -> tuple:
        w = as_word(w)
        for a in w:
            if a not in self.alphabet:
                raise InvalidInputError(f"foreign symbol {a!r}")
        return w

    def with_finals(self, finals) -> "Nfa":
        return Nfa(self.num_states, self.alphabet, self.transitions, self.initial, finals)


# -- paths ------------------------------------------------------------------


def check_path(A: Nfa, path: Sequence[int], start=None) -> int:
    """Validate ``path`` and return its end state."""
    q = A.initial if start is None else start
    for k, i in enumerate(path):
        if not 0 <= i < A.size:
            raise InvalidInputError(f"no transition with index {i}")
        t = A.transitions[i]
        if k == 0 and start is None:
            q = t.src
        if t.src != q:
            raise InvalidInputError(f"path breaks at step {k}")
        q = t.dst
    return q


def label_of(A: Nfa, path: Sequence[int]) -> tuple:
    """The word spelled by ``path``; epsilon moves contribute nothing."""
    check_path(A, path)
    return tuple(A.transitions[i].label for i in path if A.transitions[i].label is not EPS)


def path_states(A: Nfa, path: Sequence[int], start=None) -> list:
    q = A.initial if start is None else start
    states = [q]
    for i in path:
        q = A.transitions[i].dst
        states.append(q)
    return states


def is_accepting(A: Nfa, path: Sequence[int], finals=None) -> bool:
    finals = A.finals if finals is None else finals
    try:
        end = check_path(A, path, start=A.initial)
    except InvalidInputError:
        return False
    return end in finals


def parikh_vector(path: Iterable[int], n: int) -> tuple:
    v = [0] * n
    for i in path:
        v[i] += 1
    return tuple(v)


# -- products and determinization ----------------------------------------


class Product(NamedTuple):
    """Product automaton with maps back to the operand transitions.

    ``left[i]`` / ``right[i]`` is the operand transition used by product
    transition ``i``, or None when that side stays put (epsilon moves).
    ``pairs[q]`` is the pair of operand states of product state ``q``.
    """

    nfa: Nfa
    left: tuple
    right: tuple
    pairs: tuple


def product(A: Nfa, B: Nfa) -> Product:
    """Synchronous product on letters, interleaved on epsilon moves."""
    if set(A.alphabet) != set(B.alphabet):
        raise InvalidInputError("product of automata over different alphabets")
    start = (A.initial, B.initial)
    index = {start: 0}
    pairs = [start]
    trans, left, right = [], [], []
    queue = deque([start])

    def state(pq):
        if pq not in index:
            index[pq] = len(pairs)
            pairs.append(pq)
            queue.append(pq)
        return index[pq]

    while queue:
        p, q = queue.popleft()
        src = index[(p, q)]
        for i in A.out[p]:
            ta = A.transitions[i]
            if ta.label is EPS:
                trans.append((src, EPS, state((ta.dst, q))))
                left.append(i)
                right.append(None)
                continue
            for j in B.out[q]:
                tb = B.transitions[j]
                if tb.label == ta.label:
                    trans.append((src, ta.label, state((ta.dst, tb.dst))))
                    left.append(i)
                    right.append(j)
        for j in B.out[q]:
            tb = B.transitions[j]
            if tb.label is EPS:
                trans.append((src, EPS, state((p, tb.dst))))
                left.append(None)
                right.append(j)
    finals = {k for k, (p, q) in enumerate(pairs) if p in A.finals and q in B.finals}
    nfa = Nfa(len(pairs), A.alphabet, tuple(trans), 0, finals)
    return Product(nfa, tuple(left), tuple(right), tuple(pairs))


def line_automaton(w, alphabet) -> Nfa:
    """The automaton accepting exactly ``w``."""
    w = as_word(w)
    trans = tuple((k, a, k + 1) for k, a in enumerate(w))
    return Nfa(len(w) + 1, alphabet, trans, 0, {len(w)})


def coaccessible(A: Nfa, finals=None) -> set:
    finals = A.finals if finals is None else finals
    back = [[] for _ in A.states]
    for p, _, q in A.transitions:
        back[q].append(p)
    seen = set(finals)
    stack = list(finals)
    while stack:
        q = stack.pop()
        for p in back[q]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def accessible(A: Nfa) -> set:
    seen = {A.initial}
    stack = [A.initial]
    while stack:
        q = stack.pop()
        for i in A.out[q]:
            r = A.transitions[i].dst
            if r not in seen:
                seen.add(r)
                stack.append(r)
    return seen


def determinize_complete(A: Nfa) -> Nfa:
    """Subset construction completed with a single sink.

    Subsets that cannot reach a final subset are merged into that sink, so
    an automaton with empty language comes out as one non-final state.
    """
    if A.has_epsilon:
        raise InvalidInputError("determinize_complete needs an epsilon-free automaton")
    start = frozenset({A.initial})
    index = {start: 0}
    subsets = [start]
    delta = {}
    queue = deque([start])
    while queue:
        S = queue.popleft()
        for a in A.alphabet:
            T = frozenset(
                A.transitions[i].dst
                for q in S
                for i in A.out[q]
                if A.transitions[i].label == a
            )
            if T not in index:
                index[T] = len(subsets)
                subsets.append(T)
                queue.append(T)
            delta[(index[S], a)] = index[T]
    finals = {k for k, S in enumerate(subsets) if S & A.finals}
    raw = Nfa(
        len(subsets),
        A.alphabet,
        tuple((p, a, q) for (p, a), q in delta.items()),
        0,
        finals,
    )
    live = coaccessible(raw)
    if len(live) == len(subsets):
        return raw
    # renumber live subsets, then one sink for everything else
    order = sorted(live)
    if 0 not in live:
        return Nfa(1, A.alphabet, tuple((0, a, 0) for a in A.alphabet), 0, ())
    renum = {q: k for k, q in enumerate(order)}
    sink = len(order)
    trans = []
    for (p, a), q in delta.items():
        if p in live:
            trans.append((renum[p], a, renum.get(q, sink)))
    trans.extend((sink, a, sink) for a in A.alphabet)
    return Nfa(sink + 1, A.alphabet, tuple(trans), 0, {renum[f] for f in finals})


def complete(A: Nfa) -> tuple:
    """Add a sink so that every (state, letter) has a successor.

    Existing transitions keep their indices; the new ones are appended.
    Returns ``(automaton, number_of_added_transitions)``.
    """
    if A.is_complete:
        return A, 0
    have = {(p, a) for p, a, _ in A.transitions if a is not EPS}
    sink = A.num_states
    extra = [(q, a, sink) for q in A.states for a in A.alphabet if (q, a) not in have]
    extra.extend((sink, a, sink) for a in A.alphabet)
    B = Nfa(A.num_states + 1, A.alphabet, A.transitions + tuple(extra), A.initial, A.finals)
    return B, len(extra)


# -- cycles and Parikh images --------------------------------------------


def elementary_cycles(A: Nfa, budget=None) -> list:
    """Every cycle with no repeated state except its start, per start state.

    A cycle through states q and r is reported once anchored at q and once
    anchored at r; cycles are tuples of transition indices.
    """
    counter = Counter(budget, "elementary_cycles")
    cycles = []
    for s in A.states:
        stack = [(s, (), frozenset({s}))]
        while stack:
            q, path, seen = stack.pop()
            for i in A.out[q]:
                counter.tick()
                r = A.transitions[i].dst
                if r == s:
                    cycles.append(path + (i,))
                elif r not in seen:
                    stack.append((r, path + (i,), seen | {r}))
    cycles.sort(key=lambda c: (A.transitions[c[0]].src, len(c), c))
    return cycles


def cycle_states(A: Nfa, cycle) -> frozenset:
    return frozenset(A.transitions[i].src for i in cycle)


def _irreducible_runs(A: Nfa, finals, counter):
    """Accepting runs from which no elementary cycle can be cut out without
    losing a visited state.

    Cutting is monotone under extension, so the search prunes any prefix
    that already admits a cut.  Yields ``(path, visited_states)``.
    """
    first = {A.initial: 0}
    states = [A.initial]
    path = []

    def reducible():
        n = len(states) - 1
        q = states[n]
        j = max(k for k in range(n) if states[k] == q)
        inner = states[j + 1:n]
        if len(set(inner)) != len(inner):
            return False
        return all(first[s] <= j for s in inner)

    def go():
        q = states[-1]
        if q in finals:
            yield tuple(path), frozenset(first)
        for i in A.out[q]:
            counter.tick()
            r = A.transitions[i].dst
            added = r not in first
            if added:
                first[r] = len(states)
            states.append(r)
            path.append(i)
            if added or not reducible():
                yield from go()
            path.pop()
            states.pop()
            if added:
                del first[r]

    yield from go()


@dataclass(frozen=True)
class LinearPathScheme:
    """An accepting base run plus elementary cycles anchored on it.

    ``cycles[i] = (pos, cycle)``: the cycle starts and ends at the state the
    base run is in after ``pos`` transitions.
    """

    base: tuple
    cycles: tuple = ()

    def generate(self, counts: Sequence[int]) -> tuple:
        """Run with cycle ``i`` repeated ``counts[i]`` times at its anchor."""
        if len(counts) != len(self.cycles):
            raise InvalidInputError("one count per cycle expected")
        inserts = {}
        for (pos, cyc), k in zip(self.cycles, counts):
            inserts.setdefault(pos, []).extend(cyc * k)
        out = []
        for pos in range(len(self.base) + 1):
            out.extend(inserts.get(pos, ()))
            if pos < len(self.base):
                out.append(self.base[pos])
        return tuple(out)

    def linear_set(self, n: int) -> LinearSet:
        return LinearSet(
            parikh_vector(self.base, n),
            [parikh_vector(c, n) for _, c in self.cycles],
        )


def path_schemes(A: Nfa, finals=None, *, budget=None):
    """Lazily yield the schemes of :func:`bounded_sublanguage`, without repeats."""
    finals = A.finals if finals is None else frozenset(finals)
    counter = Counter(budget, "bounded_sublanguage")
    cycles = [(c, cycle_states(A, c)) for c in elementary_cycles(A, budget=budget)]
    seen = set()
    for path, visited in _irreducible_runs(A, finals, counter):
        key = (parikh_vector(path, A.size), visited)
        if key in seen:
            continue
        seen.add(key)
        states = path_states(A, path)
        first = {}
        for pos, q in enumerate(states):
            first.setdefault(q, pos)
        anchored = tuple(
            (first[A.transitions[c[0]].src], c) for c, qs in cycles if qs <= visited
        )
        yield LinearPathScheme(path, anchored)


def bounded_sublanguage(A: Nfa, finals=None, *, budget=None) -> list:
    """Linear path schemes whose runs have the Parikh image of all runs.

    One scheme per distinct (Parikh vector, visited states) of an
    irreducible accepting run; its cycles are all elementary cycles inside
    the visited states, each anchored at the first visit of its start state.
    """
    return list(path_schemes(A, finals, budget=budget))


def parikh_image(A: Nfa, finals=None, *, budget=None) -> SemilinearSet:
    """Transition-count vectors of all accepting runs, as a semilinear set."""
    schemes = bounded_sublanguage(A, finals, budget=budget)
    return SemilinearSet(A.size, tuple(s.linear_set(A.size) for s in schemes))


def realize_run(A: Nfa, target: Sequence[int], finals=None, *, budget=None):
    """An accepting run whose Parikh vector is ``target``, or None."""
    finals = A.finals if finals is None else frozenset(finals)
    rem = list(target)
    counter = Counter(budget, "realize_run")
    remaining = sum(rem)
    path = []
    failed = set()

    def go(q, remaining):
        if remaining == 0:
            return q in finals
        key = (q, tuple(rem))
        if key in failed:
            return False
        for i in A.out[q]:
            if rem[i]:
                counter.tick()
                rem[i] -= 1
                path.append(i)
                if go(A.transitions[i].dst, remaining - 1):
                    return True
                path.pop()
                rem[i] += 1
        failed.add(key)
        return False

    if go(A.initial, remaining):
        return tuple(path)
    return None


def accepting_runs_upto(A: Nfa, n: int, finals=None):
    """All accepting runs with at most ``n`` transitions (brute force)."""
    finals = A.finals if finals is None else finals

    def go(q, path):
        if q in finals:
            yield tuple(path)
        if len(path) == n:
            return
        for i in A.out[q]:
            path.append(i)
            yield from go(A.transitions[i].dst, path)
            path.pop()

    yield from go(A.initial, [])
