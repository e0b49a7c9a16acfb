"""Finite unions of rational polyhedra ``{f_i(x) = 0, g_j(x) > 0}``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DimensionError


@dataclass(frozen=True)
class AffineForm:
    """``const + sum coeffs[i] * x_i`` with rational coefficients."""

    coeffs: tuple
    const: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "const", Fraction(self.const))

    @property
    def dim(self):
        return len(self.coeffs)

    def eval(self, v):
        return self.const + sum(c * x for c, x in zip(self.coeffs, v))

    def reindex(self, dim, positions):
        coeffs = [Fraction(0)] * dim
        for c, p in zip(self.coeffs, positions):
            coeffs[p] += c
        return AffineForm(tuple(coeffs), self.const)


@dataclass(frozen=True)
class QClause:
    eqs: tuple = ()
    gts: tuple = ()

    def holds(self, v):
        return all(f.eval(v) == 0 for f in self.eqs) and all(g.eval(v) > 0 for g in self.gts)


@dataclass(frozen=True)
class QAffineSet:
    dim: int
    clauses: tuple = ()

    def __post_init__(self):
        clauses = tuple(
            c if isinstance(c, QClause) else QClause(*c) for c in self.clauses
        )
        for c in clauses:
            for f in c.eqs + c.gts:
                if f.dim != self.dim:
                    raise DimensionError(
                        f"affine form of arity {f.dim} in a set of dimension {self.dim}"
                    )
        object.__setattr__(self, "clauses", clauses)

    @classmethod
    def full(cls, dim):
        return cls(dim, (QClause(),))

    def __contains__(self, v):
        v = tuple(v)
        if len(v) != self.dim:
            raise DimensionError(f"vector of dimension {len(v)} vs set of dimension {self.dim}")
        return any(c.holds(v) for c in self.clauses)

    def reindex(self, dim, positions):
        return QAffineSet(
            dim,
            tuple(
                QClause(
                    tuple(f.reindex(dim, positions) for f in c.eqs),
                    tuple(g.reindex(dim, positions) for g in c.gts),
                )
                for c in self.clauses
            ),
        )
