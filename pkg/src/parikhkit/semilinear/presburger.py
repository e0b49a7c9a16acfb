"""Quantifier-free Presburger formulas in disjunctive normal form.

Atoms are ``t < t'`` and ``t == t' (mod m)`` over affine integer terms; a
literal is an atom with a negation flag.  Formulas combine with ``&``, ``|``
and ``~`` and stay in DNF.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Sequence, Union

from ..errors import DimensionError, InvalidInputError, ResourceLimitError
from .hilbert import hilbert_basis, some_solution
from .sets import LinearSet, SemilinearSet, unit

MAX_CLAUSES = 20_000


@dataclass(frozen=True)
class Term:
    """Affine term ``const + sum coeffs[i] * x_i``."""

    coeffs: tuple
    const: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "const", int(self.const))

    @classmethod
    def var(cls, i, dim):
        if not 0 <= i < dim:
            raise DimensionError(f"variable x{i} out of range for dimension {dim}")
        return cls(unit(i, dim), 0)

    @classmethod
    def constant(cls, c, dim):
        return cls((0,) * dim, c)

    @classmethod
    def linear(cls, coeffs, const=0):
        return cls(tuple(coeffs), const)

    @property
    def dim(self):
        return len(self.coeffs)

    def _lift(self, other):
        if isinstance(other, Term):
            if other.dim != self.dim:
                raise DimensionError("terms of different dimension")
            return other
        return Term.constant(int(other), self.dim)

    def __add__(self, other):
        other = self._lift(other)
        return Term(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
            self.const + other.const,
        )

    __radd__ = __add__

    def __neg__(self):
        return Term(tuple(-a for a in self.coeffs), -self.const)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, k):
        k = int(k)
        return Term(tuple(k * a for a in self.coeffs), k * self.const)

    __rmul__ = __mul__

    def eval(self, v):
        return self.const + sum(c * x for c, x in zip(self.coeffs, v))

    def substitute(self, M, offset, ncols=None):
        """Rewrite under ``x = M y + offset``."""
        if ncols is None:
            ncols = len(M[0]) if M else 0
        coeffs = [0] * ncols
        const = self.const
        for c, row, o in zip(self.coeffs, M, offset):
            if c:
                const += c * o
                for j, m in enumerate(row):
                    coeffs[j] += c * m
        return Term(tuple(coeffs), const)

    def reindex(self, dim, positions):
        """Place coordinate ``i`` at ``positions[i]`` in a space of size ``dim``."""
        coeffs = [0] * dim
        for c, p in zip(self.coeffs, positions):
            coeffs[p] += c
        return Term(tuple(coeffs), self.const)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 1:
                parts.append(f"x{i}")
            elif c:
                parts.append(f"{c}*x{i}")
        if self.const or not parts:
            parts.append(str(self.const))
        return " + ".join(parts)


@dataclass(frozen=True)
class Less:
    lhs: Term
    rhs: Term

    def holds(self, v):
        return self.lhs.eval(v) < self.rhs.eval(v)

    def map_terms(self, f):
        return Less(f(self.lhs), f(self.rhs))

    def __str__(self):
        return f"{self.lhs} < {self.rhs}"


@dataclass(frozen=True)
class Cong:
    modulus: int
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if int(self.modulus) < 2:
            raise InvalidInputError(f"congruence modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "modulus", int(self.modulus))

    def holds(self, v):
        return (self.lhs.eval(v) - self.rhs.eval(v)) % self.modulus == 0

    def map_terms(self, f):
        return Cong(self.modulus, f(self.lhs), f(self.rhs))

    def __str__(self):
        return f"{self.lhs} = {self.rhs} (mod {self.modulus})"


Atom = Union[Less, Cong]


@dataclass(frozen=True)
class Literal:
    atom: Atom
    negated: bool = False

    def holds(self, v):
        return self.atom.holds(v) != self.negated

    def __str__(self):
        return f"not({self.atom})" if self.negated else str(self.atom)


def _negate_literal(lit: Literal) -> list:
    """Positive literals whose disjunction is the negation of ``lit``."""
    a = lit.atom
    if lit.negated:
        return [Literal(a)]
    if isinstance(a, Less):
        return [Literal(Less(a.rhs, a.lhs + 1))]
    return [Literal(Cong(a.modulus, a.lhs, a.rhs + r)) for r in range(1, a.modulus)]


def _dedup(seq):
    return tuple(dict.fromkeys(seq))


@dataclass(frozen=True)
class Formula:
    """Disjunction of conjunctions of literals over ``dim`` variables."""

    dim: int
    clauses: tuple = ()

    def __post_init__(self):
        clauses = []
        for clause in self.clauses:
            lits = []
            for lit in clause:
                if not isinstance(lit, Literal):
                    lit = Literal(lit)
                for t in (lit.atom.lhs, lit.atom.rhs):
                    if t.dim != self.dim:
                        raise DimensionError(
                            f"term of dimension {t.dim} in formula of dimension {self.dim}"
                        )
                lits.append(lit)
            clauses.append(_dedup(lits))
        object.__setattr__(self, "clauses", _dedup(clauses))

    @classmethod
    def true(cls, dim):
        return cls(dim, ((),))

    @classmethod
    def false(cls, dim):
        return cls(dim, ())

    @classmethod
    def atom(cls, atom, dim=None):
        dim = atom.lhs.dim if dim is None else dim
        return cls(dim, ((Literal(atom),),))

    def __and__(self, other):
        return conjoin(self, other)

    def __or__(self, other):
        if other.dim != self.dim:
            raise DimensionError("formulas of different dimension")
        return Formula(self.dim, self.clauses + other.clauses)

    def __invert__(self):
        return formula_negate(self)

    def __call__(self, v):
        return formula_eval(self, v)

    def map_terms(self, dim, f):
        return Formula(
            dim,
            tuple(
                tuple(Literal(l.atom.map_terms(f), l.negated) for l in clause)
                for clause in self.clauses
            ),
        )

    def substitute(self, M, offset=None, ncols=None):
        """The formula ``phi(M y + offset)`` over ``y``.

        ``ncols`` is the dimension of ``y`` when ``M`` has no rows.
        """
        M = [tuple(int(x) for x in row) for row in M]
        if len(M) != self.dim:
            raise DimensionError(
                f"substitution has {len(M)} rows, formula has {self.dim} variables"
            )
        if ncols is None:
            if not M:
                raise DimensionError("ncols required for an empty substitution")
            ncols = len(M[0])
        offset = tuple(offset) if offset is not None else (0,) * self.dim
        return self.map_terms(ncols, lambda t: t.substitute(M, offset, ncols))

    def reindex(self, dim, positions):
        return self.map_terms(dim, lambda t: t.reindex(dim, positions))

    def size(self):
        return sum(len(c) for c in self.clauses)

    def __str__(self):
        if not self.clauses:
            return "false"
        return " | ".join(
            "(" + " & ".join(str(l) for l in c) + ")" if c else "true"
            for c in self.clauses
        )


def var(i, dim):
    return Term.var(i, dim)


def const(c, dim):
    return Term.constant(c, dim)


def lt(t1: Term, t2: Term) -> Formula:
    return Formula.atom(Less(t1, t2))


def le(t1: Term, t2: Term) -> Formula:
    return Formula.atom(Less(t1, t2 + 1))


def eq(t1: Term, t2: Term) -> Formula:
    return Formula(t1.dim, ((Literal(Less(t1, t2 + 1)), Literal(Less(t2, t1 + 1))),))


def cong(m: int, t1: Term, t2: Term) -> Formula:
    return Formula.atom(Cong(m, t1, t2))


def conjoin(f: Formula, g: Formula, *, max_clauses=MAX_CLAUSES) -> Formula:
    if f.dim != g.dim:
        raise DimensionError("formulas of different dimension")
    if len(f.clauses) * len(g.clauses) > max_clauses:
        raise ResourceLimitError("DNF conjunction exceeds clause budget")
    return Formula(f.dim, tuple(a + b for a, b in cartesian(f.clauses, g.clauses)))


def formula_eval(phi: Formula, v: Sequence[int]) -> bool:
    v = tuple(v)
    if len(v) != phi.dim:
        raise DimensionError(f"vector of dimension {len(v)} vs formula of dimension {phi.dim}")
    return any(all(l.holds(v) for l in clause) for clause in phi.clauses)


def formula_negate(phi: Formula, *, max_clauses=MAX_CLAUSES) -> Formula:
    """Negation, re-normalised to DNF with positive atoms only."""
    result = [()]
    for clause in phi.clauses:
        options = [p for lit in clause for p in _negate_literal(lit)]
        if len(result) * len(options) > max_clauses:
            raise ResourceLimitError("negation exceeds DNF clause budget")
        result = _absorb(
            c for c in (_dedup(r + (p,)) for r in result for p in options)
            if not _clause_contradictory(c)
        )
    return Formula(phi.dim, tuple(result))


def _difference(atom):
    d = atom.lhs - atom.rhs
    return d.coeffs, d.const


def _clause_contradictory(clause) -> bool:
    """Cheap syntactic unsatisfiability test for a clause of positive literals."""
    upper = {}  # coeffs -> tightest k with c.x + k < 0, i.e. c.x <= -k - 1
    residues = {}  # (modulus, coeffs mod m) -> required residue of c.x
    for lit in clause:
        coeffs, k = _difference(lit.atom)
        if isinstance(lit.atom, Less):
            if not any(coeffs):
                if k >= 0:
                    return True
                continue
            upper[coeffs] = max(upper.get(coeffs, k), k)
            neg = tuple(-c for c in coeffs)
            # c.x <= -k - 1 and -c.x <= -k' - 1 need k + k' <= -2
            if neg in upper and upper[coeffs] + upper[neg] > -2:
                return True
        else:
            m = lit.atom.modulus
            key = (m, tuple(c % m for c in coeffs))
            r = -k % m
            if not any(key[1]):
                if r:
                    return True
                continue
            if residues.setdefault(key, r) != r:
                return True
    return False


def _absorb(clauses) -> list:
    """Drop duplicate clauses and clauses that contain another clause."""
    kept = []
    for c in sorted(_dedup(clauses), key=len):
        s = frozenset(c)
        if not any(t <= s for _, t in kept):
            kept.append((c, s))
    return [c for c, _ in kept]


def positive_dnf(phi: Formula, *, max_clauses=MAX_CLAUSES) -> Formula:
    """Equivalent formula without negated literals."""
    clauses = []
    for clause in phi.clauses:
        choices = [
            [lit] if not lit.negated else _negate_literal(Literal(lit.atom))
            for lit in clause
        ]
        for combo in cartesian(*choices):
            clauses.append(tuple(combo))
            if len(clauses) > max_clauses:
                raise ResourceLimitError("positive DNF exceeds clause budget")
    return Formula(phi.dim, tuple(clauses))


def _clause_system(clause, d):
    """Rows ``(coeffs over x + aux, rhs)`` encoding a positive clause."""
    rows = []
    aux = 0
    for lit in clause:
        a = lit.atom
        diff = [l - r for l, r in zip(a.lhs.coeffs, a.rhs.coeffs)]
        if isinstance(a, Less):
            # lhs + 1 + s = rhs
            rows.append((diff, [("s", aux, 1)], a.rhs.const - a.lhs.const - 1))
            aux += 1
        else:
            # lhs - rhs = m (u - u')
            m = a.modulus
            rows.append((diff, [("u", aux, -m), ("u", aux + 1, m)], a.rhs.const - a.lhs.const))
            aux += 2
    A = []
    b = []
    for diff, extras, rhs in rows:
        row = list(diff) + [0] * aux
        for _, j, c in extras:
            row[d + j] += c
        A.append(row)
        b.append(rhs)
    return A, b, d + aux


def clause_generators(clause, d, *, budget=None):
    """Generator form of the solutions of one positive clause."""
    if not clause:
        return [LinearSet((0,) * d, [unit(i, d) for i in range(d)])]
    A, b, n = _clause_system(clause, d)
    P, H = hilbert_basis(A, b, ncols=n, budget=budget)
    periods = [h[:d] for h in H]
    return [LinearSet(p[:d], periods) for p in P]


def formula_to_generators(phi: Formula, *, budget=None) -> SemilinearSet:
    """Semilinear set of the naturals satisfying ``phi``.

    Each positive clause becomes one linear Diophantine system: ``t < t'``
    as ``t + 1 + s = t'`` with a slack ``s``, and ``t = t' (mod m)`` as
    ``t - t' = m(u - u')``; the solutions are projected back onto ``x``.
    """
    pos = positive_dnf(phi)
    comps = []
    for clause in pos.clauses:
        comps.extend(clause_generators(clause, phi.dim, budget=budget))
    return SemilinearSet(phi.dim, tuple(comps))


def satisfying_point(phi: Formula, *, budget=None):
    """Some natural vector satisfying ``phi``, or None."""
    for clause in positive_dnf(phi).clauses:
        if not clause:
            return (0,) * phi.dim
        A, b, n = _clause_system(clause, phi.dim)
        x = some_solution(A, b, ncols=n, budget=budget)
        if x is not None:
            return tuple(x[: phi.dim])
    return None


def is_satisfiable(phi: Formula, *, budget=None) -> bool:
    """Whether some natural vector satisfies ``phi``."""
    return satisfying_point(phi, budget=budget) is not None
