"""Exact linear algebra over Q.

Dense row lists of ``fmpq`` backed by FLINT's ``fmpq_mat`` for elimination.
Every basis returned here is the reduced row echelon form of its span, so
results are canonical and reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from flint import fmpq, fmpq_mat

Row = list  # list[fmpq]

__all__ = [
    "to_fmpq",
    "matrix",
    "echelon",
    "rank",
    "nullspace",
    "annihilator",
    "coords_in_echelon",
    "complement_in",
    "det",
    "matmul_is_zero",
]


def to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    return fmpq(x)


def matrix(rows: Sequence[Sequence], ncols: int) -> fmpq_mat:
    flat = [to_fmpq(x) for r in rows for x in r]
    return fmpq_mat(len(rows), ncols, flat)


def echelon(rows: Sequence[Sequence], ncols: int) -> tuple[list[Row], list[int]]:
    """RREF basis of the row span and its pivot columns."""
    if not rows or ncols == 0:
        return [], []
    R, r = matrix(rows, ncols).rref()
    flat = R.entries()
    basis = [flat[i * ncols:(i + 1) * ncols] for i in range(r)]
    pivots = []
    for row in basis:
        for j, x in enumerate(row):
            if x != 0:
                pivots.append(j)
                break
    return basis, pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return matrix(rows, ncols).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Row]:
    """Basis of ``{x : M x = 0}``, columns of ``M`` indexed 0..ncols-1."""
    basis, pivots = echelon(rows, ncols)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [fmpq(0)] * ncols
        x[f] = fmpq(1)
        for row, p in zip(basis, pivots):
            x[p] = -row[f]
        out.append(x)
    return out


def annihilator(span_rows: Sequence[Sequence], ncols: int) -> list[Row]:
    """Rows ``N`` with ``N x = 0`` iff ``x`` lies in the span of ``span_rows``."""
    return nullspace(span_rows, ncols)


def coords_in_echelon(vec: Sequence, basis: Sequence[Row], pivots: Sequence[int]):
    """Coordinates of ``vec`` in an RREF basis, or ``None`` if not in the span."""
    c = [vec[p] for p in pivots]
    for j in range(len(vec)):
        s = sum((ci * b[j] for ci, b in zip(c, basis)), fmpq(0))
        if s != vec[j]:
            return None
    return c


def complement_in(sub_rows: Sequence[Sequence], basis: Sequence[Row],
                  pivots: Sequence[int]) -> list[int]:
    """Indices into ``basis`` whose vectors span a complement of ``sub`` in it.

    ``basis`` must be RREF with ``pivots``; ``sub`` must lie in its span.
    Coordinates of a vector in ``basis`` are its entries at the pivot columns,
    so the complement is read off the non-pivot columns of ``sub``'s echelon
    form in those coordinates.
    """
    k = len(basis)
    if k == 0:
        return []
    sub_coords = [[r[p] for p in pivots] for r in sub_rows]
    _, subpiv = echelon(sub_coords, k)
    taken = set(subpiv)
    return [i for i in range(k) if i not in taken]


def det(rows: Sequence[Sequence]) -> fmpq:
    n = len(rows)
    if n == 0:
        return fmpq(1)
    return matrix(rows, n).det()


def matmul_is_zero(a: fmpq_mat, b: fmpq_mat) -> bool:
    if a.nrows() == 0 or a.ncols() == 0 or b.ncols() == 0:
        return True
    prod = a * b
    return all(x == 0 for x in prod.entries())
