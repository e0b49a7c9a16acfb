"""Operations that accept a constraint in either representation.

A constraint is a ``SemilinearSet`` (generator form), a ``Formula``
(quantifier-free Presburger, needed wherever complement is involved) or, for
rational affine automata, a ``QAffineSet``.

Capabilities:

=====================  =========  =======  =======
operation              generator  formula  qaffine
=====================  =========  =======  =======
contains               yes        yes      yes
to_generators          yes        yes      no
pullback               yes        yes      no
embed                  yes        yes      yes
conjoin (same form)    yes        yes      no
complement             no         yes      no
=====================  =========  =======  =======
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from ..errors import DimensionError, UnsupportedError
from .presburger import Formula, Less, Literal, Term, conjoin as formula_and
from .presburger import formula_eval, formula_negate, formula_to_generators
from .qaffine import AffineForm, QAffineSet, QClause
from .sets import (
    LinearSet,
    SemilinearSet,
    sl_affine_image,
    sl_intersect,
    sl_member,
    sl_preimage,
    unit,
)

Constraint = Union[SemilinearSet, Formula, QAffineSet]


def dim_of(C: Constraint) -> int:
    return C.dim


def form_of(C: Constraint) -> str:
    if isinstance(C, SemilinearSet):
        return "semilinear"
    if isinstance(C, Formula):
        return "formula"
    if isinstance(C, QAffineSet):
        return "qaffine"
    raise TypeError(f"not a constraint: {type(C).__name__}")


def contains(C: Constraint, v) -> bool:
    if isinstance(C, SemilinearSet):
        return sl_member(v, C)
    if isinstance(C, Formula):
        return formula_eval(C, v)
    return tuple(v) in C


def full(dim: int, form: str = "formula") -> Constraint:
    if form == "formula":
        return Formula.true(dim)
    if form == "semilinear":
        return SemilinearSet.full(dim)
    return QAffineSet.full(dim)


def to_generators(C: Constraint, *, budget=None) -> SemilinearSet:
    if isinstance(C, SemilinearSet):
        return C
    if isinstance(C, Formula):
        return formula_to_generators(C, budget=budget)
    raise UnsupportedError("rational constraints have no generator form")


def negate(C: Constraint) -> Formula:
    if isinstance(C, Formula):
        return formula_negate(C)
    raise UnsupportedError(f"complement needs formula form, got {form_of(C)}")


def pullback(C: Constraint, M, offset=None, *, ncols=None, budget=None) -> Constraint:
    """``{y | M y + offset in C}``, kept in the form of ``C``."""
    if isinstance(C, Formula):
        return C.substitute(M, offset, ncols)
    if isinstance(C, SemilinearSet):
        return sl_preimage(C, M, offset, ncols=ncols, budget=budget)
    raise UnsupportedError("pullback of rational constraints")


def _fix_atoms(dim, i, value):
    x = Term.var(i, dim)
    return (Literal(Less(x, Term.constant(value + 1, dim))),
            Literal(Less(Term.constant(value - 1, dim), x)))


def embed(C: Constraint, dim: int, positions, free=(), fixed=None) -> Constraint:
    """Place ``C`` on ``positions`` inside a ``dim``-dimensional space.

    Coordinates listed in ``free`` are unconstrained; every other coordinate
    not covered by ``positions`` must equal ``fixed.get(i, 0)``.
    """
    positions = list(positions)
    if len(positions) != C.dim:
        raise DimensionError(f"{len(positions)} positions for a constraint of dimension {C.dim}")
    fixed = dict(fixed or {})
    free = set(free)
    rest = [i for i in range(dim) if i not in positions and i not in free]
    if isinstance(C, SemilinearSet):
        comps = []
        for c in C.components:
            base = [0] * dim
            for i in rest:
                base[i] = fixed.get(i, 0)
            for x, p in zip(c.base, positions):
                base[p] = x
            periods = []
            for q in c.periods:
                v = [0] * dim
                for x, p in zip(q, positions):
                    v[p] = x
                periods.append(tuple(v))
            periods.extend(unit(i, dim) for i in sorted(free))
            comps.append(LinearSet(tuple(base), periods))
        return SemilinearSet(dim, tuple(comps))
    if isinstance(C, Formula):
        extra = tuple(lit for i in rest for lit in _fix_atoms(dim, i, fixed.get(i, 0)))
        moved = C.reindex(dim, positions)
        return Formula(dim, tuple(c + extra for c in moved.clauses))
    moved = C.reindex(dim, positions)
    extra = tuple(
        AffineForm(unit(i, dim), -Fraction(fixed.get(i, 0))) for i in rest
    )
    return QAffineSet(dim, tuple(QClause(c.eqs + extra, c.gts) for c in moved.clauses))


def conjoin(C1: Constraint, C2: Constraint, *, budget=None) -> Constraint:
    """Intersection; formula if both are formulas, generators otherwise."""
    if C1.dim != C2.dim:
        raise DimensionError(f"dimension mismatch: {C1.dim} vs {C2.dim}")
    if isinstance(C1, Formula) and isinstance(C2, Formula):
        return formula_and(C1, C2)
    if isinstance(C1, QAffineSet) and isinstance(C2, QAffineSet):
        return QAffineSet(
            C1.dim,
            tuple(QClause(a.eqs + b.eqs, a.gts + b.gts) for a in C1.clauses for b in C2.clauses),
        )
    return sl_intersect(to_generators(C1, budget=budget), to_generators(C2, budget=budget), budget=budget)


def disjoin(C1: Constraint, C2: Constraint, *, budget=None) -> Constraint:
    if C1.dim != C2.dim:
        raise DimensionError(f"dimension mismatch: {C1.dim} vs {C2.dim}")
    if isinstance(C1, Formula) and isinstance(C2, Formula):
        return C1 | C2
    if isinstance(C1, QAffineSet) and isinstance(C2, QAffineSet):
        return QAffineSet(C1.dim, C1.clauses + C2.clauses)
    S1, S2 = to_generators(C1, budget=budget), to_generators(C2, budget=budget)
    return SemilinearSet(C1.dim, S1.components + S2.components)


def intersect_image(S: SemilinearSet, C: Constraint, *, budget=None) -> SemilinearSet:
    """``S`` intersected with ``C``, in generator form.

    For a formula, each component ``a + P k`` is handled by substituting into
    the formula and solving over the coefficients ``k``, which keeps the
    systems small.
    """
    if S.dim != C.dim:
        raise DimensionError(f"dimension mismatch: {S.dim} vs {C.dim}")
    if isinstance(C, SemilinearSet):
        return sl_intersect(S, C, budget=budget)
    if not isinstance(C, Formula):
        raise UnsupportedError("intersection with a rational constraint")
    comps = []
    for c in S.components:
        m = len(c.periods)
        if m == 0:
            if formula_eval(C, c.base):
                comps.append(c)
            continue
        cols = [tuple(p[i] for p in c.periods) for i in range(S.dim)]
        sub = C.substitute(cols, c.base, m)
        ks = formula_to_generators(sub, budget=budget)
        comps.extend(sl_affine_image(ks, cols, c.base).components)
    return SemilinearSet(S.dim, tuple(comps))
