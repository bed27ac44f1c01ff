"""Exact Gaussian elimination over any exact field.

Entries may be ``Cyclotomic``, ``mpq``, ``Fraction`` or ``int``; nothing here
depends on the concrete type beyond ``+ - * /`` and truthiness for the zero
test. Matrices are lists of rows. Internally rows are sparse dicts
``{column: value}`` so intertwiner systems with many structural zeros stay
cheap.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from gmpy2 import mpq


class SingularMatrixError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class Solution:
    """A particular solution together with a basis of the homogeneous solutions."""

    particular: list
    nullspace: list[list]


def _exact(x):
    # plain ints would turn into floats under ``/``
    return mpq(x) if isinstance(x, int) else x


def _sparse(rows: Sequence[Sequence[Any]]) -> list[dict[int, Any]]:
    return [{j: _exact(x) for j, x in enumerate(row) if x} for row in rows]


def _check_rect(A: Sequence[Sequence[Any]], ncols: int | None = None) -> int:
    widths = {len(row) for row in A}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    width = widths.pop() if widths else (ncols or 0)
    if ncols is not None and width != ncols:
        raise ValueError(f"expected {ncols} columns, got {width}")
    return width


def rref_sparse(rows: list[dict[int, Any]], ncols: int) -> tuple[list[dict[int, Any]], list[int]]:
    """Reduced row echelon form of sparse rows.

    Pivot choice is the first nonzero entry in column order; arithmetic is
    exact, so only fill-in matters. Returns the nonzero reduced rows (one per
    pivot, normalized to a leading 1) and their pivot columns.
    """
    pivot_rows: dict[int, dict[int, Any]] = {}
    for row in rows:
        row = {j: x for j, x in row.items() if x}
        # pivot rows are kept fully reduced, so one pass suffices
        for col in [c for c in row if c in pivot_rows]:
            factor = row[col]
            for j, x in pivot_rows[col].items():
                v = row.get(j)
                v = -factor * x if v is None else v - factor * x
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
        if not row:
            continue
        col = min(row)
        inv = 1 / row[col]
        row = {j: x * inv for j, x in row.items()}
        # back-substitute into existing pivot rows to keep the form reduced
        for pcol, prow in pivot_rows.items():
            factor = prow.get(col)
            if factor:
                for j, x in row.items():
                    v = prow.get(j)
                    v = -factor * x if v is None else v - factor * x
                    if v:
                        prow[j] = v
                    else:
                        prow.pop(j, None)
        pivot_rows[col] = row
    pivots = sorted(pivot_rows)
    return [pivot_rows[c] for c in pivots], pivots


def rank(A: Sequence[Sequence[Any]]) -> int:
    ncols = _check_rect(A)
    return len(rref_sparse(_sparse(A), ncols)[1])


def _nullspace_from_rref(reduced, pivots, ncols, zero, one) -> list[list]:
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for row, p in zip(reduced, pivots):
            x = row.get(free)
            if x:
                vec[p] = -x
        basis.append(vec)
    return basis


def _field_constants(A) -> tuple[Any, Any]:
    for row in A:
        for x in row:
            x = _exact(x)
            return x * 0, x * 0 + 1
    return mpq(0), mpq(1)


def nullspace(A: Sequence[Sequence[Any]], ncols: int | None = None) -> list[list]:
    """Exact basis of ``{x : A x = 0}``; its length is ``cols - rank``."""
    ncols = _check_rect(A, ncols)
    zero, one = _field_constants(A)
    reduced, pivots = rref_sparse(_sparse(A), ncols)
    return _nullspace_from_rref(reduced, pivots, ncols, zero, one)


def nullspace_sparse(rows: list[dict[int, Any]], ncols: int, zero=0, one=1) -> list[list]:
    reduced, pivots = rref_sparse(rows, ncols)
    return _nullspace_from_rref(reduced, pivots, ncols, zero, one)


def solve(A: Sequence[Sequence[Any]], b: Sequence[Any]) -> Solution | None:
    """Solve ``A x = b`` exactly.

    Returns ``None`` when the system is inconsistent. For underdetermined
    systems the particular solution sets every free variable to zero.
    """
    if len(A) != len(b):
        raise ValueError(f"{len(A)} rows but right-hand side of length {len(b)}")
    ncols = _check_rect(A)
    zero, one = _field_constants(list(A) + [list(b)])
    rows = _sparse(A)
    for row, rhs in zip(rows, b):
        if rhs:
            row[ncols] = _exact(rhs)
    reduced, pivots = rref_sparse(rows, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    particular = [zero] * ncols
    for row, p in zip(reduced, pivots):
        particular[p] = row.get(ncols, zero)
    reduced = [{j: x for j, x in row.items() if j != ncols} for row in reduced]
    return Solution(particular, _nullspace_from_rref(reduced, pivots, ncols, zero, one))


def inverse(A: Sequence[Sequence[Any]]) -> list[list]:
    n = len(A)
    _check_rect(A, n)
    zero, one = _field_constants(A)
    rows = _sparse(A)
    for i, row in enumerate(rows):
        row[n + i] = one
    reduced, pivots = rref_sparse(rows, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return [[row.get(n + j, zero) for j in range(n)] for row in reduced]


def matmul(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]]) -> list[list]:
    if A and len(A[0]) != len(B):
        raise ValueError("dimension mismatch in matmul")
    zero, _ = _field_constants(list(A) + list(B))
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [zero] * cols
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(B[k]):
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def matvec(A: Sequence[Sequence[Any]], v: Sequence[Any]) -> list:
    return [row[0] for row in matmul(A, [[x] for x in v])] if A else []


def identity(n: int, zero=0, one=1) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]
