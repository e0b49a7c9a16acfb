"""Linear and semilinear subsets of N^d in generator form."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, NamedTuple, Sequence

from ..errors import DimensionError
from .hilbert import hilbert_basis


def nat_vector(v, dim=None):
    """Coerce to a tuple of nonnegative ints, checking the dimension."""
    out = tuple(int(x) for x in v)
    if any(x < 0 for x in out):
        raise ValueError(f"negative entry in natural vector {out}")
    if dim is not None and len(out) != dim:
        raise DimensionError(f"expected dimension {dim}, got {len(out)}")
    return out


def unit(i, dim):
    return tuple(1 if j == i else 0 for j in range(dim))


def mat_vec(M, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def _columns(vectors, dim):
    return [tuple(v[i] for v in vectors) for i in range(dim)]


@dataclass(frozen=True)
class LinearSet:
    """``{base + k_1 p_1 + ... + k_n p_n | k_i in N}``.

    Zero periods are dropped and duplicates merged at construction.
    """

    base: tuple
    periods: tuple = ()

    def __post_init__(self):
        base = nat_vector(self.base)
        dim = len(base)
        seen = []
        for p in self.periods:
            p = nat_vector(p, dim)
            if any(p) and p not in seen:
                seen.append(p)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "periods", tuple(sorted(seen)))

    @property
    def dim(self):
        return len(self.base)

    def __contains__(self, v):
        return _lin_member(tuple(v), self)


@lru_cache(maxsize=1 << 16)
def _lin_member(v, lin):
    rem = tuple(a - b for a, b in zip(v, lin.base))
    if any(x < 0 for x in rem):
        return False
    periods = lin.periods

    @lru_cache(maxsize=None)
    def go(i, rem):
        if not any(rem):
            return True
        if i == len(periods):
            return False
        p = periods[i]
        kmax = min(r // x for r, x in zip(rem, p) if x > 0)
        for k in range(kmax, -1, -1):
            if go(i + 1, tuple(r - k * x for r, x in zip(rem, p))):
                return True
        return False

    return go(0, rem)


@dataclass(frozen=True)
class SemilinearSet:
    """Finite union of linear sets of a common dimension."""

    dim: int
    components: tuple = field(default=())

    def __post_init__(self):
        if self.dim < 0:
            raise DimensionError("negative dimension")
        comps = []
        for c in self.components:
            if not isinstance(c, LinearSet):
                c = LinearSet(*c)
            if c.dim != self.dim:
                raise DimensionError(
                    f"component of dimension {c.dim} in a set of dimension {self.dim}"
                )
            comps.append(c)
        object.__setattr__(self, "components", tuple(dict.fromkeys(comps)))

    @classmethod
    def empty(cls, dim):
        return cls(dim, ())

    @classmethod
    def full(cls, dim):
        """All of N^dim."""
        return cls(dim, (LinearSet((0,) * dim, [unit(i, dim) for i in range(dim)]),))

    @classmethod
    def linear(cls, base, periods=()):
        lin = LinearSet(base, periods)
        return cls(lin.dim, (lin,))

    @classmethod
    def points(cls, dim, vectors):
        return cls(dim, tuple(LinearSet(v) for v in vectors))

    def is_empty(self):
        return not self.components

    def __contains__(self, v):
        return sl_member(v, self)

    def __or__(self, other):
        return sl_union(self, other)

    def __and__(self, other):
        return sl_intersect(self, other)


def _check_same_dim(a, b):
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


def sl_member(v, S: SemilinearSet) -> bool:
    """Membership by bounded search over period coefficients."""
    v = tuple(int(x) for x in v)
    if len(v) != S.dim:
        raise DimensionError(f"vector of dimension {len(v)} vs set of dimension {S.dim}")
    if any(x < 0 for x in v):
        return False
    return any(_lin_member(v, c) for c in S.components)


def sl_union(S1, S2):
    _check_same_dim(S1, S2)
    return SemilinearSet(S1.dim, S1.components + S2.components)


def _lin_intersect(l1: LinearSet, l2: LinearSet, budget):
    if not l1.periods:
        return [l1] if l1.base in l2 else []
    if not l2.periods:
        return [l2] if l2.base in l1 else []
    d = l1.dim
    m1, m2 = len(l1.periods), len(l2.periods)
    # base1 + P1 k = base2 + P2 l  <=>  [P1 | -P2] (k, l) = base2 - base1
    A = [
        [p[i] for p in l1.periods] + [-p[i] for p in l2.periods]
        for i in range(d)
    ]
    rhs = [b2 - b1 for b1, b2 in zip(l1.base, l2.base)]
    P, H = hilbert_basis(A, rhs, ncols=m1 + m2, budget=budget)
    if not P:
        return []
    cols = _columns(l1.periods, d)

    def image(k):
        return mat_vec(cols, k[:m1])

    periods = [image(h) for h in H]
    return [
        LinearSet(tuple(a + b for a, b in zip(l1.base, image(p))), periods)
        for p in P
    ]


def sl_intersect(S1: SemilinearSet, S2: SemilinearSet, *, budget=None) -> SemilinearSet:
    """Intersection, pairing components and solving for common members."""
    _check_same_dim(S1, S2)
    out = []
    for c1 in S1.components:
        for c2 in S2.components:
            out.extend(_lin_intersect(c1, c2, budget))
    return SemilinearSet(S1.dim, tuple(out))


def sl_intersects(S1: SemilinearSet, S2: SemilinearSet, *, budget=None) -> bool:
    """Whether the intersection is nonempty."""
    _check_same_dim(S1, S2)
    return any(
        _lin_intersect(c1, c2, budget)
        for c1 in S1.components
        for c2 in S2.components
    )


def _check_matrix(M, d):
    M = [tuple(int(x) for x in row) for row in M]
    if any(len(row) != d for row in M):
        raise DimensionError(f"matrix must have {d} columns")
    return M


def sl_linear_image(S: SemilinearSet, M) -> SemilinearSet:
    """``{M v | v in S}`` for a nonnegative integer matrix ``M``."""
    M = _check_matrix(M, S.dim)
    if any(x < 0 for row in M for x in row):
        raise ValueError("linear image needs a nonnegative matrix")
    return sl_affine_image(S, M, (0,) * len(M))


def sl_affine_image(S: SemilinearSet, M, offset) -> SemilinearSet:
    """``{M v + offset | v in S}``; all images must stay in N^e."""
    M = _check_matrix(M, S.dim)
    offset = tuple(int(x) for x in offset)
    if len(offset) != len(M):
        raise DimensionError("offset length must match matrix rows")
    comps = []
    for c in S.components:
        base = tuple(a + b for a, b in zip(mat_vec(M, c.base), offset))
        comps.append(LinearSet(base, [mat_vec(M, p) for p in c.periods]))
    return SemilinearSet(len(M), tuple(comps))


def sl_preimage(
    S: SemilinearSet, M, offset=None, *, ncols=None, budget=None
) -> SemilinearSet:
    """``{x in N^n | M x + offset in S}`` for an integer matrix ``M`` (e x n).

    ``ncols`` gives ``n`` when ``M`` has no rows.
    """
    M = [tuple(int(x) for x in row) for row in M]
    if len(M) != S.dim:
        raise DimensionError(f"matrix has {len(M)} rows, set has dimension {S.dim}")
    n = len(M[0]) if M else ncols
    if n is None:
        raise DimensionError("preimage of a zero-dimensional set needs ncols")
    offset = tuple(int(x) for x in offset) if offset is not None else (0,) * S.dim
    comps = []
    for c in S.components:
        # M x - P k = base - offset
        A = [list(M[i]) + [-p[i] for p in c.periods] for i in range(S.dim)]
        rhs = [a - o for a, o in zip(c.base, offset)]
        P, H = hilbert_basis(A, rhs, ncols=n + len(c.periods), budget=budget)
        periods = [h[:n] for h in H]
        comps.extend(LinearSet(p[:n], periods) for p in P)
    return SemilinearSet(n, tuple(comps))


def sl_concat(C: SemilinearSet, D: SemilinearSet) -> SemilinearSet:
    """``C.D``: concatenations of a member of ``C`` with a member of ``D``."""
    zc, zd = (0,) * C.dim, (0,) * D.dim
    comps = []
    for c, e in cartesian(C.components, D.components):
        periods = [p + zd for p in c.periods] + [zc + p for p in e.periods]
        comps.append(LinearSet(c.base + e.base, periods))
    return SemilinearSet(C.dim + D.dim, tuple(comps))


def sl_project(S: SemilinearSet, coords: Sequence[int]) -> SemilinearSet:
    """Keep only the given coordinates, in the given order."""
    M = [unit(i, S.dim) for i in coords]
    return sl_linear_image(S, M)


class Kind(enum.Enum):
    EMPTY = "empty"
    FINITE = "finite"
    INFINITE = "infinite"


class Cardinality(NamedTuple):
    kind: Kind
    count: int | None = None

    def __str__(self):
        if self.kind is Kind.FINITE:
            return f"finite({self.count})"
        return self.kind.value


def sl_cardinality(S: SemilinearSet) -> Cardinality:
    if not S.components:
        return Cardinality(Kind.EMPTY)
    if any(c.periods for c in S.components):
        return Cardinality(Kind.INFINITE)
    return Cardinality(Kind.FINITE, len({c.base for c in S.components}))


def sl_members_upto(S: SemilinearSet, bound: int) -> set:
    """All members with every entry at most ``bound``."""
    out = set()
    for c in S.components:
        if any(x > bound for x in c.base):
            continue
        stack = [c.base]
        seen = {c.base}
        while stack:
            v = stack.pop()
            out.add(v)
            for p in c.periods:
                w = tuple(a + b for a, b in zip(v, p))
                if w not in seen and all(x <= bound for x in w):
                    seen.add(w)
                    stack.append(w)
    return out


def iter_box(dim: int, bound: int) -> Iterable[tuple]:
    """Every vector of N^dim with entries at most ``bound``."""
    return cartesian(range(bound + 1), repeat=dim)
