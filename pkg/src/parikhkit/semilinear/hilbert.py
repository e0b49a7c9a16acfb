"""Minimal nonnegative solutions of linear Diophantine systems.

Completion procedure of Contejean and Devie: vectors are grown one unit at a
time from the unit vectors, a coordinate ``j`` is only incremented when the
current defect ``A.x`` points against column ``j`` (``<Ax, Ae_j> < 0``), and
every candidate dominating an already found solution is discarded.

The inhomogeneous system ``Ax = b`` is solved through the homogeneous system
``Ax - b*y = 0`` with the extra coordinate ``y`` capped at 1: solutions found
with ``y = 1`` are the minimal solutions of ``Ax = b`` and those with ``y = 0``
the Hilbert basis of ``Ax = 0``.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from ..errors import Counter, DimensionError

Vec = tuple


class HilbertResult(NamedTuple):
    """Minimal particular solutions and Hilbert basis, both sorted."""

    particular: tuple
    homogeneous: tuple


def _dominates(u, v):
    return all(a >= b for a, b in zip(u, v))


def _setup(A, b, ncols):
    rows = [tuple(int(x) for x in row) for row in A]
    if rows:
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise DimensionError("ragged matrix")
        if ncols is not None and ncols != n:
            raise DimensionError(f"matrix has {n} columns, expected {ncols}")
    elif ncols is None:
        raise DimensionError("ncols required for a matrix without rows")
    else:
        n = ncols
    r = len(rows)
    rhs = tuple(int(x) for x in b) if b is not None else (0,) * r
    if len(rhs) != r:
        raise DimensionError(f"right-hand side has {len(rhs)} entries, expected {r}")
    return rows, rhs, n


def _complete(rows, rhs, n, counter):
    """Yield the minimal solutions of the homogenized system, level by level."""
    r = len(rows)
    cols = [tuple(rows[i][j] for i in range(r)) for j in range(n)]
    cols.append(tuple(-x for x in rhs))
    width = n + 1
    zero = (0,) * r

    found: list[Vec] = []
    frontier: list[tuple[Vec, Vec]] = []
    for j in range(width):
        e = tuple(1 if i == j else 0 for i in range(width))
        frontier.append((e, cols[j]))

    while frontier:
        level = []
        for v, s in frontier:
            if s == zero:
                found.append(v)
                yield v
            else:
                level.append((v, s))
        nxt: dict[Vec, Vec] = {}
        for v, s in level:
            for j in range(width):
                if j == n and v[n] >= 1:
                    continue
                c = cols[j]
                if sum(x * y for x, y in zip(s, c)) >= 0:
                    continue
                w = v[:j] + (v[j] + 1,) + v[j + 1:]
                if w in nxt:
                    continue
                if any(_dominates(w, f) for f in found):
                    continue
                counter.tick()
                nxt[w] = tuple(x + y for x, y in zip(s, c))
        frontier = list(nxt.items())


def hilbert_basis(
    A: Sequence[Sequence[int]],
    b: Sequence[int] | None = None,
    *,
    ncols: int | None = None,
    budget: int | None = None,
) -> HilbertResult:
    """Solve ``A x = b`` over the naturals.

    Returns ``(P, H)``: ``H`` is the set of minimal nonzero solutions of
    ``A x = 0`` and ``P`` the set of minimal solutions of ``A x = b``, so the
    full solution set is ``{p + sum k_i h_i}``.  When ``b`` is zero, ``P`` is
    ``{0}``.

    ``ncols`` is only needed when ``A`` has no rows.  Raises
    ``ResourceLimitError`` once more than ``budget`` frontier nodes have been
    generated.
    """
    rows, rhs, n = _setup(A, b, ncols)
    found = list(_complete(rows, rhs, n, Counter(budget, "hilbert_basis")))
    particular = sorted(v[:n] for v in found if v[n] == 1)
    homogeneous = sorted(v[:n] for v in found if v[n] == 0)
    return HilbertResult(tuple(particular), tuple(homogeneous))


def some_solution(
    A: Sequence[Sequence[int]],
    b: Sequence[int] | None = None,
    *,
    ncols: int | None = None,
    budget: int | None = None,
):
    """One minimal solution of ``A x = b`` over the naturals, or None.

    Runs the same completion as ``hilbert_basis`` but stops at the first
    solution of the inhomogeneous system.  Identical columns are merged
    first, since any solution can move its weight onto one of them.
    """
    rows, rhs, n = _setup(A, b, ncols)
    keep = {}
    for j in range(n):
        keep.setdefault(tuple(r[j] for r in rows), j)
    reps = sorted(keep.values())
    reduced = [tuple(r[j] for j in reps) for r in rows]
    for v in _complete(reduced, rhs, len(reps), Counter(budget, "some_solution")):
        if v[len(reps)] == 1:
            x = [0] * n
            for j, val in zip(reps, v):
                x[j] = val
            return tuple(x)
    return None
