"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction` (or ``int``).  A matrix
with zero rows or zero columns is represented by its shape alone, so every
helper takes explicit ``nrows``/``ncols`` where the list cannot carry them.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def zeros(nrows: int, ncols: int) -> Matrix:
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def as_fraction_matrix(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    out = [[Fraction(x) for x in row] for row in rows]
    if ncols is not None:
        for row in out:
            if len(row) != ncols:
                raise ValueError(f"row of length {len(row)}, expected {ncols}")
    return out


def matmul(a: Matrix, b: Matrix, inner: int, ncols: int) -> Matrix:
    """Product of an ``len(a) x inner`` and an ``inner x ncols`` matrix."""
    out = zeros(len(a), ncols)
    for i, row in enumerate(a):
        orow = out[i]
        for k in range(inner):
            x = row[k]
            if x:
                brow = b[k]
                for j in range(ncols):
                    if brow[j]:
                        orow[j] += x * brow[j]
    return out


def is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def hstack(blocks: Sequence[Matrix], nrows: int) -> Matrix:
    out: Matrix = [[] for _ in range(nrows)]
    for block in blocks:
        for i in range(nrows):
            out[i].extend(block[i])
    return out


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    out: Matrix = []
    for block in blocks:
        out.extend(list(row) for row in block)
    return out


def transpose(a: Matrix, ncols: int) -> Matrix:
    return [[row[j] for row in a] for j in range(ncols)]


def _integer_rows(a: Matrix) -> list[list[int]]:
    rows = []
    for row in a:
        den = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * den) for x in row])
    return rows


def rank(a: Matrix) -> int:
    """Rank by fraction-free (Bareiss) elimination."""
    m = _integer_rows(a)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == nrows:
            break
    return r


def rref(a: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(row) for row in a]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(a: Matrix, ncols: int) -> Matrix:
    """Basis of ``{y : a y = 0}`` as the columns of an ``ncols x k`` matrix."""
    red, pivots = rref(a, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = zeros(ncols, len(free))
    for k, fc in enumerate(free):
        basis[fc][k] = Fraction(1)
        for row, pc in zip(red, pivots):
            basis[pc][k] = -row[fc]
    return basis


def column_basis(a: Matrix, nrows: int, ncols: int) -> Matrix:
    """Independent columns of ``a`` spanning its column space (``nrows x r``)."""
    if nrows == 0:
        return []
    _, pivots = rref(a, ncols)
    return [[row[c] for c in pivots] for row in a]


def left_annihilator(b: Matrix, nrows: int, ncols: int) -> Matrix:
    """Rows spanning ``{z : z b = 0}``; their joint kernel is the column space of ``b``."""
    ns = nullspace(transpose(b, ncols), nrows)
    return transpose(ns, len(ns[0])) if ns else []


def det(a: Matrix) -> Fraction:
    n = len(a)
    m = [list(row) for row in a]
    out = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(map(Fraction, row)) + identity(n)[i] for i, row in enumerate(a)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]
