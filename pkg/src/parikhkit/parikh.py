"""Parikh automata and constrained automata.

A constrained automaton (``Ca``) accepts a word when some accepting run
labelled by it has a transition-count vector inside a constraint.  A ``Ca``
carries a list of acceptance clauses ``(finals, constraint)``; the run is
accepting when it ends in the finals of some clause whose constraint holds.
A single clause is the usual definition; several clauses let complement of
deterministic machines stay deterministic.

A Parikh automaton (``Pa``) labels each transition with a vector and
constrains the sum of the vectors along the run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .automata import (
    EPS,
    Nfa,
    as_word,
    complete,
    determinize_complete,
    label_of,
    line_automaton,
    parikh_image,
    path_schemes,
    product,
    realize_run,
    words_upto,
)
from .errors import Counter, InvalidInputError, UnsupportedError
from .semilinear import (
    Cardinality,
    Formula,
    Kind,
    SemilinearSet,
    conjoin,
    contains,
    embed,
    intersect_image,
    negate,
    pullback,
    satisfying_point,
    sl_linear_image,
    sl_member,
    unit,
)


@dataclass(frozen=True)
class Clause:
    """Accept runs ending in ``finals`` whose count vector is in ``constraint``."""

    finals: frozenset
    constraint: object

    def __post_init__(self):
        object.__setattr__(self, "finals", frozenset(self.finals))


@dataclass(frozen=True)
class Ca:
    automaton: Nfa
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(c if isinstance(c, Clause) else Clause(*c) for c in self.clauses)
        n = self.automaton.size
        for c in clauses:
            if c.constraint.dim != n:
                raise InvalidInputError(
                    f"constraint of dimension {c.constraint.dim} for {n} transitions"
                )
            if any(not 0 <= f < self.automaton.num_states for f in c.finals):
                raise InvalidInputError("clause final state out of range")
        object.__setattr__(self, "clauses", clauses)

    @classmethod
    def of(cls, automaton: Nfa, constraint=None) -> "Ca":
        """One-clause machine using the automaton's own final states."""
        if constraint is None:
            constraint = Formula.true(automaton.size)
        return cls(automaton, (Clause(automaton.finals, constraint),))

    @property
    def alphabet(self):
        return self.automaton.alphabet

    @property
    def dim(self):
        return self.automaton.size

    @property
    def is_deterministic(self):
        return self.automaton.is_deterministic

    def accepts(self, w) -> bool:
        return membership(self, w)


@dataclass(frozen=True)
class Pa:
    """Automaton whose transition ``i`` carries ``vectors[i]`` in N^dim."""

    automaton: Nfa
    vectors: tuple
    dim: int
    constraint: object

    def __post_init__(self):
        vecs = tuple(tuple(int(x) for x in v) for v in self.vectors)
        if len(vecs) != self.automaton.size:
            raise InvalidInputError("one vector per transition expected")
        if any(len(v) != self.dim or min(v, default=0) < 0 for v in vecs):
            raise InvalidInputError(f"transition vectors must lie in N^{self.dim}")
        if self.constraint.dim != self.dim:
            raise InvalidInputError("constraint dimension differs from vector dimension")
        object.__setattr__(self, "vectors", vecs)

    @property
    def alphabet(self):
        return self.automaton.alphabet

    @property
    def is_deterministic(self):
        """At most one (target, vector) per (state, letter), no epsilon moves."""
        A = self.automaton
        if A.has_epsilon:
            return False
        seen = {}
        for (p, a, q), v in zip(A.transitions, self.vectors):
            if seen.setdefault((p, a), (q, v)) != (q, v):
                return False
        return True

    @property
    def is_lpa(self):
        """Vectors depend on the letter only."""
        if self.automaton.has_epsilon:
            return False
        seen = {}
        for t, v in zip(self.automaton.transitions, self.vectors):
            if seen.setdefault(t.label, v) != v:
                return False
        return True

    def accepts(self, w) -> bool:
        return pa_membership(self, w)


@dataclass(frozen=True)
class Morphism:
    """Monoid morphism given by the image of each source letter."""

    source: tuple
    target: tuple
    mapping: tuple  # pairs (letter, word)

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        items = self.mapping.items() if isinstance(self.mapping, dict) else self.mapping
        m = tuple((a, as_word(w)) for a, w in items)
        keys = [a for a, _ in m]
        if sorted(map(str, keys)) != sorted(map(str, self.source)) or len(set(keys)) != len(keys):
            raise InvalidInputError("morphism must map every source letter exactly once")
        tgt = set(self.target)
        if any(b not in tgt for _, w in m for b in w):
            raise InvalidInputError("morphism image uses a letter outside the target alphabet")
        object.__setattr__(self, "mapping", m)

    def image(self, a) -> tuple:
        return dict(self.mapping)[a]

    def __call__(self, w) -> tuple:
        d = dict(self.mapping)
        return tuple(b for a in as_word(w) for b in d[a])


class InclusionResult(NamedTuple):
    included: bool
    witness: tuple | None = None


# -- helpers ---------------------------------------------------------------


def letter_matrix(A: Nfa):
    """Row per letter, column per transition: 1 where the transition reads it."""
    return [[1 if t.label == a else 0 for t in A.transitions] for a in A.alphabet]


def _selection_matrix(back, nsrc, ntgt):
    """``x_src = S y`` where ``back[k]`` is the source index of target ``k``."""
    S = [[0] * ntgt for _ in range(nsrc)]
    for k, i in enumerate(back):
        if i is not None:
            S[i][k] += 1
    return S


def _pad(C, dim):
    """Extend ``C`` by unconstrained trailing coordinates."""
    return embed(C, dim, range(C.dim), free=range(C.dim, dim))


def _has_eps_cycle(A: Nfa) -> bool:
    eps = [[t.dst for i in A.out[q] for t in [A.transitions[i]] if t.label is EPS] for q in A.states]
    color = [0] * A.num_states

    def visit(q):
        color[q] = 1
        for r in eps[q]:
            if color[r] == 1 or (color[r] == 0 and visit(r)):
                return True
        color[q] = 2
        return False

    return any(color[q] == 0 and visit(q) for q in A.states)


# -- Parikh automata -------------------------------------------------------


def pa_membership(P: Pa, w) -> bool:
    """Search over (state, position, vector sum)."""
    A = P.automaton
    w = A.check_word(w)
    if _has_eps_cycle(A):
        return membership(pa_to_ca(P), w)
    zero = (0,) * P.dim
    seen = set()
    stack = [(A.initial, 0, zero)]
    while stack:
        conf = stack.pop()
        if conf in seen:
            continue
        seen.add(conf)
        q, k, v = conf
        if k == len(w) and q in A.finals and contains(P.constraint, v):
            return True
        for i in A.out[q]:
            t = A.transitions[i]
            if t.label is EPS:
                nk = k
            elif k < len(w) and t.label == w[k]:
                nk = k + 1
            else:
                continue
            stack.append((t.dst, nk, tuple(a + b for a, b in zip(v, P.vectors[i]))))
    return False


def pa_to_ca(P: Pa) -> Ca:
    """Equivalent constrained automaton.

    Parallel transitions are distinct indices here, so no merging is needed:
    the count constraint is the pullback of ``C`` along the weight matrix
    whose column ``t`` is the vector of transition ``t``.  Identical
    duplicate transitions are dropped, so a deterministic PA yields a
    deterministic CA.
    """
    A = P.automaton
    keep = {}
    for i, (t, v) in enumerate(zip(A.transitions, P.vectors)):
        keep.setdefault((t, v), i)
    order = sorted(keep.values())
    trans = tuple(A.transitions[i] for i in order)
    B = Nfa(A.num_states, A.alphabet, trans, A.initial, A.finals)
    W = [[P.vectors[i][r] for i in order] for r in range(P.dim)]
    return Ca.of(B, pullback(P.constraint, W, ncols=len(order)))


# -- membership and emptiness --------------------------------------------


def _dfs_run(M: Ca, w):
    A = M.automaton
    n = A.size
    seen = set()
    path = []

    def go(q, k, counts):
        key = (q, k, counts)
        if key in seen:
            return None
        seen.add(key)
        if k == len(w):
            for c in M.clauses:
                if q in c.finals and contains(c.constraint, counts):
                    return tuple(path)
        for i in A.out[q]:
            t = A.transitions[i]
            if t.label is EPS:
                nk = k
            elif k < len(w) and t.label == w[k]:
                nk = k + 1
            else:
                continue
            path.append(i)
            found = go(t.dst, nk, counts[:i] + (counts[i] + 1,) + counts[i + 1:])
            if found is not None:
                return found
            path.pop()
        return None

    return go(A.initial, 0, (0,) * n)


def _product_ca(M: Ca, B: Nfa, finals_b=None) -> tuple:
    """Product of ``M`` with a plain automaton; constraints pulled back."""
    prod = product(M.automaton, B)
    finals_b = B.finals if finals_b is None else finals_b
    S = _selection_matrix(prod.left, M.dim, prod.nfa.size)
    clauses = []
    for c in M.clauses:
        finals = {
            k for k, (p, q) in enumerate(prod.pairs) if p in c.finals and q in finals_b
        }
        clauses.append(Clause(finals, pullback(c.constraint, S, ncols=prod.nfa.size)))
    return Ca(prod.nfa, tuple(clauses)), prod


def _clause_witness(M: Ca, budget=None):
    """``(clause index, count vector)`` of some accepted run, or None."""
    for k, c in enumerate(M.clauses):
        if not c.finals:
            continue
        # one scheme at a time, so an accepted run ends the search early
        for scheme in path_schemes(M.automaton, c.finals, budget=budget):
            img = SemilinearSet(M.dim, (scheme.linear_set(M.dim),))
            v = _point_in(img, c.constraint, budget)
            if v is not None:
                return k, v
    return None


def _point_in(S: SemilinearSet, C, budget=None):
    """Some member of ``S`` inside ``C``, stopping at the first component that has one."""
    if not isinstance(C, Formula):
        hit = intersect_image(S, C, budget=budget)
        return None if hit.is_empty() else hit.components[0].base
    for comp in S.components:
        m = len(comp.periods)
        if m == 0:
            if contains(C, comp.base):
                return comp.base
            continue
        cols = [tuple(p[i] for p in comp.periods) for i in range(S.dim)]
        k = satisfying_point(C.substitute(cols, comp.base, m), budget=budget)
        if k is not None:
            return tuple(b + sum(c * x for c, x in zip(row, k)) for b, row in zip(comp.base, cols))
    return None


def find_run(M: Ca, w, *, budget=None):
    """An accepted run labelled ``w``, or None."""
    w = M.automaton.check_word(w)
    if not _has_eps_cycle(M.automaton):
        return _dfs_run(M, w)
    line = line_automaton(w, M.alphabet)
    P, prod = _product_ca(M, line)
    hit = _clause_witness(P, budget)
    if hit is None:
        return None
    k, v = hit
    run = realize_run(P.automaton, v, P.clauses[k].finals, budget=budget)
    return tuple(prod.left[i] for i in run)


def membership(M: Ca, w, *, budget=None) -> bool:
    """Whether ``w`` is accepted.

    Without epsilon cycles this is a direct search over runs labelled ``w``;
    otherwise ``M`` is intersected with the one-word automaton for ``w`` and
    tested for emptiness.
    """
    return find_run(M, w, budget=budget) is not None


def is_empty(M: Ca, *, budget=None) -> bool:
    return _clause_witness(M, budget) is None


def accepted_vectors(M: Ca, *, budget=None) -> list:
    """Per clause, the accepted count vectors in generator form."""
    out = []
    for c in M.clauses:
        img = parikh_image(M.automaton, c.finals, budget=budget)
        out.append(intersect_image(img, c.constraint, budget=budget))
    return out


def cardinality(M: Ca, *, budget=None) -> Cardinality:
    """Empty, finitely many accepted words (with their count) or infinite.

    The accepted count vectors are mapped to letter counts; the language is
    finite exactly when that image is, and the words are then counted by
    membership over the finitely many candidate letter vectors.
    """
    L = letter_matrix(M.automaton)
    images = [sl_linear_image(S, L) for S in accepted_vectors(M, budget=budget)]
    if all(S.is_empty() for S in images):
        return Cardinality(Kind.EMPTY)
    if any(c.periods for S in images for c in S.components):
        return Cardinality(Kind.INFINITE)
    letters = {c.base for S in images for c in S.components}
    maxlen = max(sum(v) for v in letters)
    counter = Counter(budget, "cardinality")
    count = 0
    for w in words_upto(M.alphabet, maxlen):
        v = tuple(w.count(a) for a in M.alphabet)
        if v in letters:
            counter.tick()
            count += membership(M, w, budget=budget)
    return Cardinality(Kind.FINITE, count)


# -- complement, inclusion, universality ---------------------------------


def _require_formulas(M: Ca):
    for c in M.clauses:
        if not isinstance(c.constraint, Formula):
            raise UnsupportedError("complement needs constraints in formula form")


def complement_det(M: Ca) -> Ca:
    """Complement of a deterministic machine, still deterministic.

    After completion every word has exactly one run.  The run is rejected
    when every clause whose finals contain its end state has a false
    constraint, so states are grouped by the set of clauses they belong to
    and each group gets the conjunction of the negated constraints.
    """
    if not M.is_deterministic:
        raise UnsupportedError("complement_det needs a deterministic epsilon-free machine")
    _require_formulas(M)
    A, _ = complete(M.automaton)
    n = A.size
    groups = {}
    for q in A.states:
        key = tuple(k for k, c in enumerate(M.clauses) if q in c.finals)
        groups.setdefault(key, set()).add(q)
    clauses = []
    for key, states in groups.items():
        phi = Formula.true(n)
        for k in key:
            phi = phi & _pad(negate(M.clauses[k].constraint), n)
        if phi.clauses:
            clauses.append(Clause(states, phi))
    return Ca(A.with_finals(set().union(*[c.finals for c in clauses])), tuple(clauses))


def _witness(I: Ca, budget=None):
    hit = _clause_witness(I, budget)
    if hit is None:
        return None
    k, v = hit
    run = realize_run(I.automaton, v, I.clauses[k].finals, budget=budget)
    return label_of(I.automaton, run)


def inclusion(M1: Ca, M2: Ca, *, budget=None) -> InclusionResult:
    """Whether ``L(M1)`` is contained in ``L(M2)``; ``M2`` deterministic.

    Decided by emptiness of ``M1`` intersected with the complement of
    ``M2``.  On failure a witness word is read off a run realizing a member
    of the nonempty intersection.
    """
    I = combine(M1, complement_det(M2), "intersection", budget=budget)
    w = _witness(I, budget)
    if w is None:
        return InclusionResult(True)
    return InclusionResult(False, w)


def sigma_star(alphabet) -> Ca:
    alphabet = tuple(alphabet)
    A = Nfa(1, alphabet, tuple((0, a, 0) for a in alphabet), 0, {0})
    return Ca.of(A)


def is_universal(M: Ca, *, budget=None) -> InclusionResult:
    """Universality of a deterministic machine, as inclusion of Sigma*."""
    return inclusion(sigma_star(M.alphabet), M, budget=budget)


# -- closure constructions ------------------------------------------------


def _same_alphabet(M1, M2):
    if set(M1.alphabet) != set(M2.alphabet):
        raise InvalidInputError("machines over different alphabets")


def _shift(trans, by):
    return tuple((p + by, a, q + by) for p, a, q in trans)


def union(M1: Ca, M2: Ca) -> Ca:
    _same_alphabet(M1, M2)
    A1, A2 = M1.automaton, M2.automaton
    n1, m1, m2 = A1.num_states, A1.size, A2.size
    trans = (
        _shift(A1.transitions, 1)
        + _shift(A2.transitions, 1 + n1)
        + ((0, EPS, A1.initial + 1), (0, EPS, A2.initial + 1 + n1))
    )
    dim = m1 + m2 + 2
    clauses = []
    for c in M1.clauses:
        others = [i for i in range(dim) if i >= m1]
        clauses.append(Clause({f + 1 for f in c.finals}, embed(c.constraint, dim, range(m1), free=others)))
    for c in M2.clauses:
        others = [i for i in range(dim) if not m1 <= i < m1 + m2]
        clauses.append(
            Clause({f + 1 + n1 for f in c.finals}, embed(c.constraint, dim, range(m1, m1 + m2), free=others))
        )
    finals = set().union(*[c.finals for c in clauses]) if clauses else set()
    A = Nfa(1 + n1 + A2.num_states, A1.alphabet, trans, 0, finals)
    return Ca(A, tuple(clauses))


def intersection(M1: Ca, M2: Ca, *, budget=None) -> Ca:
    _same_alphabet(M1, M2)
    prod = product(M1.automaton, M2.automaton)
    n = prod.nfa.size
    L = _selection_matrix(prod.left, M1.dim, n)
    R = _selection_matrix(prod.right, M2.dim, n)
    clauses = []
    for c1 in M1.clauses:
        C1 = pullback(c1.constraint, L, ncols=n, budget=budget)
        for c2 in M2.clauses:
            finals = {
                k for k, (p, q) in enumerate(prod.pairs) if p in c1.finals and q in c2.finals
            }
            C2 = pullback(c2.constraint, R, ncols=n, budget=budget)
            clauses.append(Clause(finals, conjoin(C1, C2, budget=budget)))
    finals = set().union(*[c.finals for c in clauses]) if clauses else set()
    return Ca(prod.nfa.with_finals(finals), tuple(clauses))


def concatenation(M1: Ca, M2: Ca, *, budget=None) -> Ca:
    _same_alphabet(M1, M2)
    A1, A2 = M1.automaton, M2.automaton
    n1, m1, m2 = A1.num_states, A1.size, A2.size
    sources = sorted(set().union(*[c.finals for c in M1.clauses]) if M1.clauses else ())
    bridges = tuple((f, EPS, A2.initial + n1) for f in sources)
    trans = A1.transitions + _shift(A2.transitions, n1) + bridges
    dim = m1 + m2 + len(bridges)
    bridge_index = {f: m1 + m2 + k for k, f in enumerate(sources)}
    right = range(m1, m1 + m2)
    clauses = []
    for c1 in M1.clauses:
        allowed = [bridge_index[f] for f in c1.finals]
        left = embed(c1.constraint, dim, range(m1), free=list(right) + allowed)
        for c2 in M2.clauses:
            rest = [i for i in range(dim) if not m1 <= i < m1 + m2]
            second = embed(c2.constraint, dim, right, free=rest)
            clauses.append(
                Clause({f + n1 for f in c2.finals}, conjoin(left, second, budget=budget))
            )
    finals = set().union(*[c.finals for c in clauses]) if clauses else set()
    A = Nfa(n1 + A2.num_states, A1.alphabet, trans, A1.initial, finals)
    return Ca(A, tuple(clauses))


def combine(M1: Ca, M2: Ca, op: str, *, budget=None) -> Ca:
    if op == "union":
        return union(M1, M2)
    if op in ("intersection", "intersect"):
        return intersection(M1, M2, budget=budget)
    if op in ("concatenation", "concat"):
        return concatenation(M1, M2, budget=budget)
    raise InvalidInputError(f"unknown operation {op!r}")


def apply_morphism(M: Ca, h: Morphism, *, budget=None) -> Ca:
    """Machine for ``h(L(M))``.

    A transition reading ``a`` becomes a chain spelling ``h(a)`` through
    fresh states (an epsilon move when ``h(a)`` is empty).  Every run crosses
    a chain completely, so the count of the original transition is the count
    of the first edge of its chain.
    """
    A = M.automaton
    if set(h.source) != set(A.alphabet):
        raise InvalidInputError("morphism source differs from the machine alphabet")
    trans = []
    first = []
    nstates = A.num_states
    for p, a, q in A.transitions:
        word = () if a is EPS else h.image(a)
        first.append(len(trans))
        if len(word) <= 1:
            trans.append((p, word[0] if word else EPS, q))
            continue
        cur = p
        for k, b in enumerate(word):
            nxt = q if k == len(word) - 1 else nstates
            if nxt == nstates:
                nstates += 1
            trans.append((cur, b, nxt))
            cur = nxt
    n = len(trans)
    S = [[0] * n for _ in range(A.size)]
    for t, k in enumerate(first):
        S[t][k] = 1
    B = Nfa(nstates, h.target, tuple(trans), A.initial, A.finals)
    clauses = tuple(
        Clause(c.finals, pullback(c.constraint, S, ncols=n, budget=budget)) for c in M.clauses
    )
    return Ca(B, clauses)


def _spelling_paths(A: Nfa, q, word, counter):
    """Epsilon-free paths from ``q`` spelling ``word``."""
    paths = [((), q)]
    for b in word:
        nxt = []
        for path, r in paths:
            for i in A.out[r]:
                t = A.transitions[i]
                if t.label == b:
                    counter.tick()
                    nxt.append((path + (i,), t.dst))
        paths = nxt
    return paths


def inverse_morphism(M: Ca, h: Morphism, *, budget=None) -> Ca:
    """Machine for ``h^-1(L(M))``.

    Without epsilon moves in ``M``, each path from ``q`` to ``q'`` spelling
    ``h(a)`` becomes one transition ``(q, a, q')``; deterministic input and a
    morphism with nonempty images give deterministic output.  With epsilon
    moves, the result instead reads ``a`` and then simulates ``M`` on
    ``h(a)`` through states ``(q, a, i)`` using epsilon moves, which keeps
    arbitrarily long epsilon detours.
    """
    A = M.automaton
    if set(h.target) != set(A.alphabet):
        raise InvalidInputError("morphism target differs from the machine alphabet")
    counter = Counter(budget, "inverse_morphism")
    if not A.has_epsilon:
        trans, cols = [], []
        for q in A.states:
            for a in h.source:
                for path, r in _spelling_paths(A, q, h.image(a), counter):
                    trans.append((q, a, r))
                    cols.append(path)
        W = [[path.count(t) for path in cols] for t in range(A.size)]
        B = Nfa(A.num_states, h.source, tuple(trans), A.initial, A.finals)
        return Ca(B, tuple(Clause(c.finals, pullback(c.constraint, W, ncols=len(trans), budget=budget)) for c in M.clauses))

    index = {}

    def state(key):
        if key not in index:
            index[key] = A.num_states + len(index)
        return index[key]

    trans, back = [], []
    for i, (p, a, q) in enumerate(A.transitions):
        if a is EPS:
            trans.append((p, EPS, q))
            back.append(i)
    for a in h.source:
        word = h.image(a)
        for q in A.states:
            trans.append((q, a, state((q, a, 0))))
            back.append(None)
            trans.append((state((q, a, len(word))), EPS, q))
            back.append(None)
        for k in range(len(word) + 1):
            for i, (p, b, q) in enumerate(A.transitions):
                if b is EPS:
                    trans.append((state((p, a, k)), EPS, state((q, a, k))))
                    back.append(i)
                elif k < len(word) and b == word[k]:
                    trans.append((state((p, a, k)), EPS, state((q, a, k + 1))))
                    back.append(i)
    n = len(trans)
    S = _selection_matrix(back, A.size, n)
    B = Nfa(A.num_states + len(index), h.source, tuple(trans), A.initial, A.finals)
    return Ca(B, tuple(Clause(c.finals, pullback(c.constraint, S, ncols=n, budget=budget)) for c in M.clauses))


def commutative_closure(M: Ca, *, budget=None) -> Pa:
    """One-state deterministic PA for the words commuting with ``L(M)``.

    The constraint is the set of letter-count vectors of ``L(M)``.
    """
    L = letter_matrix(M.automaton)
    k = len(M.alphabet)
    comps = []
    for S in accepted_vectors(M, budget=budget):
        comps.extend(sl_linear_image(S, L).components)
    C = SemilinearSet(k, tuple(comps))
    A = Nfa(1, M.alphabet, tuple((0, a, 0) for a in M.alphabet), 0, {0})
    return Pa(A, tuple(unit(i, k) for i in range(k)), k, C)


def parikh_of_language(M: Ca, *, budget=None) -> SemilinearSet:
    """Letter-count vectors of the accepted words."""
    return commutative_closure(M, budget=budget).constraint


# -- Parikh automata on letters -------------------------------------------


def _require_lpa(P: Pa):
    if not P.is_lpa:
        raise InvalidInputError("not a PA on letters: vectors must depend on the letter only")


def letter_vectors(P: Pa) -> dict:
    _require_lpa(P)
    vecs = {a: (0,) * P.dim for a in P.alphabet}
    for t, v in zip(P.automaton.transitions, P.vectors):
        vecs[t.label] = v
    return vecs


def lpa_determinize(P: Pa) -> Pa:
    """Deterministic PA on letters for the same language."""
    vecs = letter_vectors(P)
    D = determinize_complete(P.automaton)
    return Pa(D, tuple(vecs[t.label] for t in D.transitions), P.dim, P.constraint)


def lpa_restriction_form(P: Pa, *, budget=None):
    """``(R, C')`` with ``L(P) = {w in L(R) | letter counts of w in C'}``."""
    vecs = letter_vectors(P)
    V = [[vecs[a][r] for a in P.alphabet] for r in range(P.dim)]
    Cp = pullback(P.constraint, V, ncols=len(P.alphabet), budget=budget)
    return P.automaton, Cp


def lpa_blocker(P: Pa, E: Nfa, bound: int, *, budget=None):
    """First word of ``L(E)`` (length-lex, length <= bound) with no
    permutation in ``L(P)``, or None.

    A None result only covers words up to ``bound``.
    """
    _require_lpa(P)
    if set(E.alphabet) != set(P.alphabet):
        raise InvalidInputError("blocker candidates over a different alphabet")
    reach = parikh_of_language(pa_to_ca(P), budget=budget)
    for w in words_upto(P.alphabet, bound):
        if E.accepts(w):
            v = tuple(w.count(a) for a in P.alphabet)
            if not sl_member(v, reach):
                return w
    return None
