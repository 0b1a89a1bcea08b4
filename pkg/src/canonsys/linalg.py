"""Exact Gaussian elimination over CycloNum."""

from __future__ import annotations

from typing import Sequence

from .cyclo import CycloNum
from .poly import ExpVec, Poly

__all__ = ["rref", "rank", "polys_to_rows", "rows_to_polys"]


def rref(rows: Sequence[Sequence[CycloNum]]) -> tuple[list[list[CycloNum]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows if any(not c.is_zero() for c in r)]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(mat)) if not mat[i][c].is_zero()), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = mat[r][c].inv()
        mat[r] = [v * inv if not v.is_zero() else v for v in mat[r]]
        pivot_row = mat[r]
        for i in range(len(mat)):
            if i == r:
                continue
            f = mat[i][c]
            if f.is_zero():
                continue
            mat[i] = [v - f * w if not w.is_zero() else v for v, w in zip(mat[i], pivot_row)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence[CycloNum]]) -> int:
    return len(rref(rows)[1])


def polys_to_rows(polys: Sequence[Poly], basis: Sequence[ExpVec]) -> list[list[CycloNum]]:
    zero = CycloNum.from_rational(0)
    index = {e: k for k, e in enumerate(basis)}
    rows = []
    for p in polys:
        row = [zero] * len(basis)
        for e, c in p.terms.items():
            row[index[e]] = c
        rows.append(row)
    return rows


def rows_to_polys(rows: Sequence[Sequence[CycloNum]], basis: Sequence[ExpVec], n: int) -> list[Poly]:
    return [Poly._raw(n, {e: c for e, c in zip(basis, row) if not c.is_zero()}) for row in rows]
