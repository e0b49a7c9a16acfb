"""Reversal-bounded counter machines.

The tape holds the input followed by the end marker ``END``.  A transition
``(p, letter, test, q, move, inc)`` fires in state ``p`` reading ``letter``
when each counter matches its test entry (0: counter is zero, 1: counter is
positive, None: either); it enters ``q``, moves the head right iff ``move``
is ``"R"`` and adds ``inc`` to the counters.  A word is accepted once some
execution reaches a final state.

A reversal is a switch of one counter between increasing and decreasing.
``reversal_bound`` is the declared maximum number of reversals per counter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .automata import as_word
from .errors import InvalidInputError, ResourceLimitError, UnsupportedError
from .parikh import Ca
from .semilinear import Formula, Less, positive_dnf

END = "♯"  # the sharp sign, outside every input alphabet


class RbcmTransition(NamedTuple):
    src: int
    letter: object
    test: tuple
    dst: int
    move: str
    inc: tuple

    def enabled(self, counters):
        return all(
            x is None or (x == 1) == (c > 0) for x, c in zip(self.test, counters)
        )


def _patterns_overlap(s, t):
    return all(a is None or b is None or a == b for a, b in zip(s, t))


@dataclass(frozen=True)
class Rbcm:
    num_states: int
    alphabet: tuple
    counters: int
    transitions: tuple
    initial: int = 0
    finals: frozenset = field(default_factory=frozenset)
    reversal_bound: int = 1

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "finals", frozenset(self.finals))
        if END in self.alphabet:
            raise InvalidInputError("the end marker cannot be an input letter")
        letters = set(self.alphabet) | {END}
        ts = []
        for t in self.transitions:
            t = RbcmTransition(*t)
            t = t._replace(test=tuple(t.test), inc=tuple(int(x) for x in t.inc))
            if not (0 <= t.src < self.num_states and 0 <= t.dst < self.num_states):
                raise InvalidInputError("transition endpoint out of range")
            if t.letter not in letters:
                raise InvalidInputError(f"transition reads foreign letter {t.letter!r}")
            if len(t.test) != self.counters or len(t.inc) != self.counters:
                raise InvalidInputError(f"tests and increments need {self.counters} entries")
            if any(x not in (0, 1, None) for x in t.test):
                raise InvalidInputError("test entries must be 0, 1 or None")
            if any(x not in (-1, 0, 1) for x in t.inc):
                raise InvalidInputError("increments must be -1, 0 or +1")
            if t.move not in ("S", "R"):
                raise InvalidInputError("head move must be 'S' or 'R'")
            ts.append(t)
        object.__setattr__(self, "transitions", tuple(ts))

    @cached_property
    def is_deterministic(self):
        by_key = {}
        for t in self.transitions:
            by_key.setdefault((t.src, t.letter), []).append(t)
        for group in by_key.values():
            for i, s in enumerate(group):
                for t in group[i + 1:]:
                    if (s.dst, s.move, s.inc) != (t.dst, t.move, t.inc) and _patterns_overlap(s.test, t.test):
                        return False
        return True

    def accepts(self, w) -> bool:
        return accepts(self, w)

    @cached_property
    def index(self):
        """Transitions grouped by (state, letter)."""
        out = {}
        for t in self.transitions:
            out.setdefault((t.src, t.letter), []).append(t)
        return out


class Config(NamedTuple):
    state: int
    head: int
    counters: tuple


@dataclass(frozen=True)
class Accept:
    trace: tuple
    reversals: tuple

    def dump(self) -> str:
        """One configuration per line: state, head index, counters."""
        return "\n".join(
            f"{c.state} {c.head} {' '.join(map(str, c.counters))}".rstrip() for c in self.trace
        )


@dataclass(frozen=True)
class Reject:
    over_bound: bool = False  # some branch broke the declared reversal bound


@dataclass(frozen=True)
class FuelExhausted:
    steps: int


def _update(dirs, revs, inc):
    nd, nr = list(dirs), list(revs)
    for i, v in enumerate(inc):
        if v:
            if dirs[i] and dirs[i] != v:
                nr[i] += 1
            nd[i] = v
    return tuple(nd), tuple(nr)


def simulate(M: Rbcm, w, fuel: int = 100_000):
    """Search the executions of ``M`` on ``w``.

    Returns ``Accept`` with the trace of the first accepting execution,
    ``Reject`` when every execution dies, or ``FuelExhausted`` once more
    than ``fuel`` steps were taken overall.  Branches exceeding the declared
    reversal bound are cut and reported through ``Reject.over_bound``.  On a
    deterministic machine, at most one transition may apply at each step.
    """
    w = as_word(w)
    if any(a not in M.alphabet for a in w):
        raise InvalidInputError("word uses a letter outside the alphabet")
    tape = w + (END,)
    k = M.counters
    index = M.index
    det = M.is_deterministic
    start = (M.initial, 0, (0,) * k, (0,) * k, (0,) * k)
    parent = {start: None}
    stack = [start]
    steps = 0
    over = False
    while stack:
        node = stack.pop()
        q, head, cs, dirs, revs = node
        if q in M.finals:
            trace = []
            while node is not None:
                trace.append(Config(node[0], node[1], node[2]))
                node = parent[node]
            return Accept(tuple(reversed(trace)), revs)
        enabled = [t for t in index.get((q, tape[head]), ()) if t.enabled(cs)]
        if det:
            assert len({(t.dst, t.move, t.inc) for t in enabled}) <= 1, "nondeterministic step"
        for t in enabled:
            steps += 1
            if steps > fuel:
                return FuelExhausted(steps - 1)
            ncs = tuple(c + v for c, v in zip(cs, t.inc))
            if min(ncs, default=0) < 0:
                continue
            nhead = head + (t.move == "R")
            if nhead >= len(tape):
                continue
            nd, nr = _update(dirs, revs, t.inc)
            if max(nr, default=0) > M.reversal_bound:
                over = True
                continue
            child = (t.dst, nhead, ncs, nd, nr)
            if child not in parent:
                parent[child] = node
                stack.append(child)
    return Reject(over)


def accepts(M: Rbcm, w, fuel: int = 100_000) -> bool:
    res = simulate(M, w, fuel)
    if isinstance(res, FuelExhausted):
        raise ResourceLimitError(f"simulation ran out of fuel after {res.steps} steps")
    return isinstance(res, Accept)


# -- compiling deterministic constrained automata ------------------------


class _Builder:
    """Incremental machine construction with counters allocated on demand."""

    def __init__(self):
        self.states = 0
        self.counters = 0
        self.trans = []  # (src, letter, {counter: test}, dst, move, {counter: inc})

    def state(self):
        self.states += 1
        return self.states - 1

    def counter(self):
        self.counters += 1
        return self.counters - 1

    def add(self, src, letter, dst, move="S", tests=None, inc=None):
        self.trans.append((src, letter, dict(tests or {}), dst, move, dict(inc or {})))

    def build(self, alphabet, initial, finals, reversal_bound):
        k = self.counters
        ts = []
        for src, letter, tests, dst, move, inc in self.trans:
            ts.append(
                (
                    src,
                    letter,
                    tuple(tests.get(i) for i in range(k)),
                    dst,
                    move,
                    tuple(inc.get(i, 0) for i in range(k)),
                )
            )
        return Rbcm(self.states, alphabet, k, tuple(ts), initial, finals, reversal_bound)


class _Checker:
    """Emits the stationary-head gadgets that evaluate a formula."""

    def __init__(self, b: _Builder, sources):
        self.b = b
        self.src = sources  # formula variable -> counter
        self.copies = {}

    def chain(self, state, incs, counter):
        """``incs`` unconditional increments of ``counter`` starting at ``state``."""
        for _ in range(incs):
            nxt = self.b.state()
            self.b.add(state, END, nxt, inc={counter: 1})
            state = nxt
        return state

    def add_multiple(self, state, var, coeff, target):
        """``target += coeff * x_var`` leaving ``x_var`` unchanged."""
        x = self.src[var]
        tmp = self.b.counter()
        self.copies[var] = self.copies.get(var, 0) + 1
        loop = state
        restore = self.b.state()
        step = self.b.state()
        self.b.add(loop, END, step, tests={x: 1}, inc={x: -1, tmp: 1, target: 1})
        back = self.chain(step, coeff - 1, target)
        self.b.add(back, END, loop)
        self.b.add(loop, END, restore, tests={x: 0})
        done = self.b.state()
        self.b.add(restore, END, restore, tests={tmp: 1}, inc={tmp: -1, x: 1})
        self.b.add(restore, END, done, tests={tmp: 0})
        return done

    def evaluate(self, state, coeffs, const):
        """Fresh counter holding ``const + sum coeffs[v] * x_v`` (all >= 0)."""
        g = self.b.counter()
        for v, c in coeffs:
            state = self.add_multiple(state, v, c, g)
        return self.chain(state, const, g), g

    def residue(self, state, m, coeffs, const):
        """Walk ``sum coeffs[v] * x_v + const`` modulo ``m`` through states.

        Returns ``{residue: state}`` for the states reached afterwards.
        """
        cur = {const % m: state}
        for v, c in coeffs:
            x = self.src[v]
            tmp = self.b.counter()
            self.copies[v] = self.copies.get(v, 0) + 1
            loops = {r: cur[r] if r in cur else self.b.state() for r in range(m)}
            restores = {r: self.b.state() for r in range(m)}
            after = {}
            for r in range(m):
                self.b.add(loops[r], END, loops[(r + c) % m], tests={x: 1}, inc={x: -1, tmp: 1})
                self.b.add(loops[r], END, restores[r], tests={x: 0})
                self.b.add(restores[r], END, restores[r], tests={tmp: 1}, inc={tmp: -1, x: 1})
                after[r] = self.b.state()
                self.b.add(restores[r], END, after[r], tests={tmp: 0})
            cur = after
        return cur

    def atom(self, state, atom, on_true, on_false):
        if isinstance(atom, Less):
            diff = atom.rhs - atom.lhs  # holds iff 0 < diff
            left = [(v, -c) for v, c in enumerate(diff.coeffs) if c < 0]
            right = [(v, c) for v, c in enumerate(diff.coeffs) if c > 0]
            state, g1 = self.evaluate(state, left, max(-diff.const, 0))
            state, g2 = self.evaluate(state, right, max(diff.const, 0))
            self.b.add(state, END, state, tests={g1: 1, g2: 1}, inc={g1: -1, g2: -1})
            self.b.add(state, END, on_true, tests={g1: 0, g2: 1})
            self.b.add(state, END, on_false, tests={g2: 0})
            return
        m = atom.modulus
        diff = atom.lhs - atom.rhs  # holds iff diff = 0 mod m
        coeffs = [(v, c % m) for v, c in enumerate(diff.coeffs) if c % m]
        for r, s in self.residue(state, m, coeffs, diff.const).items():
            self.b.add(s, END, on_true if r == 0 else on_false)


def compile_ca(M: Ca, phi: Formula | None = None) -> Rbcm:
    """Deterministic counter machine for a deterministic constrained automaton.

    While reading, counter ``i`` counts uses of transition ``i``.  On the end
    marker in a final state the head stays put and each DNF clause is
    checked in turn: terms are copied into fresh counters (restoring the
    sources afterwards), ``t < t'`` is decided by decrementing both copies
    together, and congruences by tracking the residue in the state.  The
    declared reversal bound is twice the largest number of copies taken of
    one transition counter (at least 1).

    ``phi`` overrides the constraint of a one-clause machine.
    """
    A = M.automaton
    if not A.is_deterministic:
        raise UnsupportedError("compilation needs a deterministic epsilon-free machine")
    clauses = M.clauses
    if phi is not None:
        if len(clauses) != 1:
            raise InvalidInputError("a formula override needs a one-clause machine")
        clauses = (clauses[0].__class__(clauses[0].finals, phi),)
    for c in clauses:
        if not isinstance(c.constraint, Formula):
            raise UnsupportedError("compilation needs constraints in formula form")
    b = _Builder()
    for _ in A.states:
        b.state()
    src = {i: b.counter() for i in range(A.size)}
    for i, (p, a, q) in enumerate(A.transitions):
        b.add(p, a, q, move="R", inc={src[i]: 1})
    accept = b.state()
    checker = _Checker(b, src)
    groups = {}
    for q in sorted(A.states):
        key = tuple(k for k, c in enumerate(clauses) if q in c.finals)
        if key:
            groups.setdefault(key, []).append(q)
    for key, states in groups.items():
        dnf = [cl for k in key for cl in positive_dnf(clauses[k].constraint).clauses]
        entry = b.state()
        for q in states:
            b.add(q, END, entry)
        cur = entry
        for n, clause in enumerate(dnf):
            fail = b.state() if n + 1 < len(dnf) else None
            dead = fail if fail is not None else b.state()
            for k, lit in enumerate(clause):
                nxt = accept if k + 1 == len(clause) else b.state()
                checker.atom(cur, lit.atom, nxt, dead)
                cur = nxt
            if not clause:
                b.add(cur, END, accept)
            cur = fail
    r = max(1, 2 * max(checker.copies.values(), default=0))
    return b.build(A.alphabet, A.initial, {accept}, r)
