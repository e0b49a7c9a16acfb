"""Affine maps and affine Parikh automata over N, Z or Q.

An APA applies one affine map per transition to a register vector that
starts at zero; a run is accepting when it ends in a final state with the
registers inside the constraint.  Maps compose left to right:
``compose(f, g)`` is "first f, then g".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import lcm
from typing import NamedTuple, Sequence

from .automata import Nfa, complete
from .errors import Counter, DimensionError, InvalidInputError, UnsupportedError
from .parikh import Ca
from .semilinear import (
    Formula,
    Literal,
    Less,
    QAffineSet,
    SemilinearSet,
    Term,
    contains,
    disjoin,
    embed,
    unit,
)

DOMAINS = ("N", "Z", "Q")


def _coerce(x, domain):
    x = Fraction(x)
    if domain == "Q":
        return x
    if x.denominator != 1:
        raise InvalidInputError(f"non-integral entry {x} in a {domain}-valued map")
    if domain == "N" and x < 0:
        raise InvalidInputError(f"negative entry {x} in an N-valued map")
    return int(x)


@dataclass(frozen=True)
class AffineMap:
    """``x -> matrix . x + offset`` on column vectors."""

    matrix: tuple
    offset: tuple

    def __post_init__(self):
        M = tuple(tuple(row) for row in self.matrix)
        v = tuple(self.offset)
        d = len(v)
        if len(M) != d or any(len(row) != d for row in M):
            raise DimensionError("affine map needs a square matrix matching its offset")
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "offset", v)

    @classmethod
    def identity(cls, d):
        return cls(tuple(unit(i, d) for i in range(d)), (0,) * d)

    @classmethod
    def constant(cls, v):
        d = len(v)
        return cls(((0,) * d,) * d, tuple(v))

    @property
    def dim(self):
        return len(self.offset)

    @property
    def is_linear(self):
        return not any(self.offset)

    @cached_property
    def _rows(self):
        return tuple(
            tuple((j, c) for j, c in enumerate(row) if c) for row in self.matrix
        )

    def __call__(self, x):
        return tuple(
            sum(c * x[j] for j, c in row) + o for row, o in zip(self._rows, self.offset)
        )

    def entries(self):
        return [c for row in self.matrix for c in row] + list(self.offset)

    def scale(self, c):
        return AffineMap(
            tuple(tuple(c * x for x in row) for row in self.matrix),
            tuple(c * x for x in self.offset),
        )

    def coerce(self, domain):
        return AffineMap(
            tuple(tuple(_coerce(x, domain) for x in row) for row in self.matrix),
            tuple(_coerce(x, domain) for x in self.offset),
        )


def compose(f: AffineMap, g: AffineMap) -> AffineMap:
    """``x -> g(f(x))`` as ``(Mg.Mf, Mg.vf + vg)``."""
    if f.dim != g.dim:
        raise DimensionError(f"composing maps of dimension {f.dim} and {g.dim}")
    d = f.dim
    Mf, Mg = f.matrix, g.matrix
    M = tuple(
        tuple(sum(Mg[i][k] * Mf[k][j] for k in range(d)) for j in range(d))
        for i in range(d)
    )
    v = tuple(
        sum(Mg[i][k] * f.offset[k] for k in range(d)) + g.offset[i] for i in range(d)
    )
    return AffineMap(M, v)


@dataclass(frozen=True)
class Apa:
    automaton: Nfa
    dim: int
    maps: tuple
    constraint: object
    domain: str = "N"

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise InvalidInputError(f"domain must be one of {DOMAINS}")
        if self.automaton.has_epsilon:
            raise InvalidInputError("affine Parikh automata have no epsilon moves")
        maps = tuple(
            (m if isinstance(m, AffineMap) else AffineMap(*m)).coerce(self.domain)
            for m in self.maps
        )
        if len(maps) != self.automaton.size:
            raise InvalidInputError("one affine map per transition expected")
        if any(m.dim != self.dim for m in maps):
            raise DimensionError(f"every map must have dimension {self.dim}")
        if self.constraint.dim != self.dim:
            raise DimensionError("constraint dimension differs from register dimension")
        object.__setattr__(self, "maps", maps)

    @property
    def alphabet(self):
        return self.automaton.alphabet

    @property
    def is_deterministic(self):
        return self.automaton.is_deterministic

    def accepts(self, w) -> bool:
        return apa_membership(self, w)


def path_map(A: Apa, path: Sequence[int]) -> AffineMap:
    """``U(path)``: the composition of the transition maps in run order."""
    return reduce(compose, (A.maps[i] for i in path), AffineMap.identity(A.dim))


def run_registers(A: Apa, path: Sequence[int]) -> list:
    """Register values before the run and after each transition."""
    x = (0,) * A.dim
    trace = [x]
    for i in path:
        x = A.maps[i](x)
        trace.append(x)
    return trace


def apa_find_run(A: Apa, w):
    """``(path, register trace)`` of an accepting run on ``w``, or None."""
    T = A.automaton
    w = T.check_word(w)
    seen = set()
    stack = [(T.initial, 0, (0,) * A.dim, ())]
    while stack:
        q, k, x, path = stack.pop()
        if (q, k, x) in seen:
            continue
        seen.add((q, k, x))
        if k == len(w):
            if q in T.finals and contains(A.constraint, x):
                return path, run_registers(A, path)
            continue
        for i in T.out[q]:
            t = T.transitions[i]
            if t.label == w[k]:
                stack.append((t.dst, k + 1, A.maps[i](x), path + (i,)))
    return None


def apa_membership(A: Apa, w) -> bool:
    return apa_find_run(A, w) is not None


def accepted_upto(A: Apa, n: int) -> set:
    """Every accepted word of length <= n, sharing work between prefixes."""
    T = A.automaton
    level = {(): {(T.initial, (0,) * A.dim)}}
    out = set()
    for k in range(n + 1):
        nxt = {}
        for w, confs in level.items():
            if any(q in T.finals and contains(A.constraint, x) for q, x in confs):
                out.add(w)
            if k == n:
                continue
            for a in T.alphabet:
                succ = {
                    (T.transitions[i].dst, A.maps[i](x))
                    for q, x in confs
                    for i in T.out[q]
                    if T.transitions[i].label == a
                }
                if succ:
                    nxt[w + (a,)] = succ
        level = nxt
    return out


# -- transformations -------------------------------------------------------


def _block_matrix(d, blocks):
    """Square matrix of size d assembled from ``{(row, col): value}``."""
    M = [[0] * d for _ in range(d)]
    for (i, j), c in blocks.items():
        M[i][j] = c
    return tuple(tuple(r) for r in M)


def _pad_constraint(C, dim):
    return embed(C, dim, range(C.dim), free=range(C.dim, dim))


def linearize(A: Apa) -> Apa:
    """Equivalent APA whose maps are linear except on first transitions.

    A fresh initial state copies the outgoing transitions of the old one.
    Registers become ``(x, y_1, ..., y_m)`` with ``y_i`` holding the offset
    of transition ``i``: first transitions load ``(v_i, v_1, ..., v_m)``,
    the others map ``x`` to ``M_i x + y_i`` and keep every ``y``.
    """
    T = A.automaton
    d, m = A.dim, T.size
    D = d * (1 + m)
    offsets = [A.maps[i].offset for i in range(m)]
    loaded = tuple(x for v in offsets for x in v)
    maps, trans = [], []
    for i, t in enumerate(T.transitions):
        M = A.maps[i].matrix
        blocks = {}
        for r in range(d):
            for c in range(d):
                if M[r][c]:
                    blocks[(r, c)] = M[r][c]
            blocks[(r, d * (1 + i) + r)] = 1
        for r in range(d, D):
            blocks[(r, r)] = 1
        trans.append(t)
        maps.append(AffineMap(_block_matrix(D, blocks), (0,) * D))
    fresh = T.num_states
    for i in T.out[T.initial]:
        t = T.transitions[i]
        trans.append((fresh, t.label, t.dst))
        maps.append(AffineMap.constant(tuple(offsets[i]) + loaded))
    finals = set(T.finals) | ({fresh} if T.initial in T.finals else set())
    B = Nfa(T.num_states + 1, T.alphabet, tuple(trans), fresh, finals)
    return Apa(B, D, tuple(maps), _pad_constraint(A.constraint, D), A.domain)


def _integral_scale(f: AffineMap) -> int:
    return reduce(lcm, (Fraction(x).denominator for x in f.entries()), 1)


def _split(x):
    return (x, 0) if x >= 0 else (0, -x)


def _pos_neg(f: AffineMap) -> AffineMap:
    """Map on ``(z+, z-)`` tracking ``z = z+ - z-`` with natural entries."""
    E = f.dim
    blocks = {}
    for i, row in enumerate(f.matrix):
        for j, c in enumerate(row):
            p, n = _split(c)
            for (r, s), val in (((i, j), p), ((i, E + j), n), ((E + i, j), n), ((E + i, E + j), p)):
                if val:
                    blocks[(r, s)] = val
    offset = tuple(_split(o)[0] for o in f.offset) + tuple(_split(o)[1] for o in f.offset)
    return AffineMap(_block_matrix(2 * E, blocks), offset)


def rationals_to_naturals(A: Apa) -> Apa:
    """Equivalent N-APA for a Q-APA whose constraint is a ``QAffineSet``.

    Steps: linearize; add a register ``h`` that first transitions set to 1
    and the others keep, plus one block per constraint clause holding the
    clause's affine forms evaluated on the new registers (linear in the old
    registers and ``h``); scale every map by the lcm of its denominators,
    which multiplies the final registers by a positive factor and so keeps
    every sign; split each register into positive and negative parts.  The
    constraint becomes a formula comparing the two parts.
    """
    if not isinstance(A.constraint, QAffineSet):
        raise UnsupportedError("rational conversion needs a QAffineSet constraint")
    eps_accepted = A.automaton.initial in A.automaton.finals and (0,) * A.dim in A.constraint
    L = linearize(A)
    T = L.automaton
    D = L.dim
    C = L.constraint
    h = D
    blocks = []  # (first index, forms, number of equalities)
    nxt = D + 1
    for clause in C.clauses:
        forms = clause.eqs + clause.gts
        blocks.append((nxt, forms, len(clause.eqs)))
        nxt += len(forms)
    E = nxt
    first = {i for i, t in enumerate(T.transitions) if t.src == T.initial}

    maps = []
    for i, f in enumerate(L.maps):
        if i in first:
            x = tuple(f.offset)
            v = list(x) + [1] + [0] * (E - D - 1)
            for start, forms, _ in blocks:
                for k, g in enumerate(forms):
                    v[start + k] = g.eval(x)
            g_map = AffineMap.constant(tuple(v))
        else:
            M = f.matrix
            rows = [list(M[r]) + [0] * (E - D) for r in range(D)]
            rows.append([0] * D + [1] + [0] * (E - D - 1))
            for start, forms, _ in blocks:
                for g in forms:
                    # g(M x) + const * h
                    row = [sum(g.coeffs[r] * M[r][j] for r in range(D)) for j in range(D)]
                    row += [g.const] + [0] * (E - D - 1)
                    rows.append(row)
            g_map = AffineMap(tuple(tuple(r) for r in rows), (0,) * E)
        c = _integral_scale(g_map)
        maps.append(_pos_neg(g_map.scale(c).coerce("Z")))

    def pos(i):
        return Term.var(i, 2 * E)

    def neg(i):
        return Term.var(E + i, 2 * E)

    clauses = []
    for start, forms, neq in blocks:
        lits = [Literal(Less(neg(h), pos(h)))]
        for k in range(len(forms)):
            z = start + k
            if k < neq:
                lits += [Literal(Less(pos(z), neg(z) + 1)), Literal(Less(neg(z), pos(z) + 1))]
            else:
                lits.append(Literal(Less(neg(z), pos(z))))
        clauses.append(tuple(lits))
    if eps_accepted:
        clauses.append((Literal(Less(pos(h), neg(h) + 1)), Literal(Less(neg(h), pos(h) + 1))))
    phi = Formula(2 * E, tuple(clauses))
    return Apa(T, 2 * E, tuple(maps), phi, "N")


def vec(q: int, v: Sequence, k: int, d: int) -> tuple:
    """Block vector: block ``q`` is ``(1, v)``, the others are zero."""
    out = [0] * (k * (d + 1))
    out[q * (d + 1)] = 1
    out[q * (d + 1) + 1:(q + 1) * (d + 1)] = list(v)
    return tuple(out)


def letter_matrix(A: Apa, a) -> tuple:
    """Block matrix sending ``vec(p, v)`` to ``vec(q, M v + b)`` for ``(p, a, q)``."""
    T = A.automaton
    k, d = T.num_states, A.dim
    N = k * (d + 1)
    blocks = {}
    for i, (p, b, q) in enumerate(T.transitions):
        if b != a:
            continue
        f = A.maps[i]
        r0, c0 = q * (d + 1), p * (d + 1)
        blocks[(r0, c0)] = 1
        for r in range(d):
            if f.offset[r]:
                blocks[(r0 + 1 + r, c0)] = f.offset[r]
            for c in range(d):
                if f.matrix[r][c]:
                    blocks[(r0 + 1 + r, c0 + 1 + c)] = f.matrix[r][c]
    return _block_matrix(N, blocks)


def normalize_two_state(A: Apa) -> Apa:
    """Equivalent deterministic APA over the two-state automaton.

    Registers hold ``vec(q, x)`` for the current state ``q`` and registers
    ``x``; letter ``a`` acts by one block matrix for all states.  The first
    transition loads the image of ``vec(q0, 0)``.

    A missing transition sends the registers to the zero vector, which is
    also the value before any letter.  When the empty word is accepted the
    automaton is first completed with a sink so the two cannot be confused.
    """
    T = A.automaton
    if not T.is_deterministic:
        raise InvalidInputError("two-state normalization needs a deterministic APA")
    eps_ok = T.initial in T.finals and contains(A.constraint, (0,) * A.dim)
    if eps_ok and not T.is_complete:
        T, added = complete(T)
        ident = AffineMap.identity(A.dim)
        A = Apa(T, A.dim, A.maps + (ident,) * added, A.constraint, A.domain)
    k, d = T.num_states, A.dim
    N = k * (d + 1)
    start = vec(T.initial, (0,) * d, k, d)
    trans, maps = [], []
    for a in T.alphabet:
        U = AffineMap(letter_matrix(A, a), (0,) * N)
        trans.append((0, a, 1))
        maps.append(AffineMap.constant(U(start)))
        trans.append((1, a, 1))
        maps.append(U)
    C = A.constraint
    parts = []
    for f in sorted(T.finals):
        base = f * (d + 1)
        parts.append(embed(C, N, range(base + 1, base + 1 + d), fixed={base: 1}))
    if eps_ok:
        parts.append(embed(_full_like(C, 0), N, ()))
    G = reduce(disjoin, parts) if parts else _empty_like(C, N)
    B = Nfa(2, T.alphabet, tuple(trans), 0, {0, 1})
    return Apa(B, N, tuple(maps), G, A.domain)


def _full_like(C, dim):
    if isinstance(C, Formula):
        return Formula.true(dim)
    if isinstance(C, QAffineSet):
        return QAffineSet.full(dim)
    return SemilinearSet.full(dim)


def _empty_like(C, dim):
    if isinstance(C, Formula):
        return Formula.false(dim)
    if isinstance(C, QAffineSet):
        return QAffineSet(dim, ())
    return SemilinearSet.empty(dim)


def embed_ca(M: Ca) -> Apa:
    """N-APA with ``U(t) = (Id, e_t)``: registers count transitions."""
    T = M.automaton
    if T.has_epsilon:
        raise InvalidInputError("embedding needs an epsilon-free machine")
    if len(M.clauses) != 1:
        raise UnsupportedError("embedding needs a single acceptance clause")
    (clause,) = M.clauses
    n = T.size
    ident = tuple(unit(i, n) for i in range(n))
    maps = tuple(AffineMap(ident, unit(i, n)) for i in range(n))
    return Apa(T.with_finals(clause.finals), n, maps, clause.constraint, "N")


class RegisterBound(NamedTuple):
    c: int
    bound: int
    largest: int
    runs: int
    ok: bool


def register_bound(c, d, n):
    """``(c(d+1))^(n-1) c``."""
    return (c * (d + 1)) ** (n - 1) * c if n >= 1 else 0


def register_bound_check(A: Apa, n: int, *, budget=None) -> RegisterBound:
    """Check the register growth bound on every run of length 1..n.

    Runs of length ``k`` are compared against the bound for ``k``, which is
    at most the bound for ``n``.
    """
    if A.domain != "N":
        raise UnsupportedError("the growth bound is stated for N-valued registers")
    c = max((x for f in A.maps for x in f.entries()), default=0)
    d = A.dim
    T = A.automaton
    counter = Counter(budget, "register_bound_check")
    largest, runs, ok = 0, 0, True
    frontier = [(T.initial, (0,) * d)]
    for k in range(1, n + 1):
        limit = register_bound(c, d, k)
        nxt = []
        for q, x in frontier:
            for i in T.out[q]:
                counter.tick()
                y = A.maps[i](x)
                runs += 1
                top = max(y, default=0)
                largest = max(largest, top)
                ok = ok and top <= limit
                nxt.append((T.transitions[i].dst, y))
        frontier = nxt
    return RegisterBound(c, register_bound(c, d, n), largest, runs, ok)
