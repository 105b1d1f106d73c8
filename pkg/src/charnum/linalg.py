"""Small dense linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`.  Everything here is
exact; sizes in this package never exceed a few dozen rows, so plain Gaussian
elimination is adequate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ConsistencyError, UsageError

Matrix = list[list[Fraction]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def _row_echelon(m: Matrix) -> tuple[Matrix, list[int]]:
    m = [row[:] for row in m]
    pivots: list[int] = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(_row_echelon(as_matrix(rows))[1])


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``a @ x = b`` for a system with a unique solution.

    ``a`` may have more rows than columns as long as the system is
    consistent.  Raises :class:`ConsistencyError` otherwise.
    """
    a = as_matrix(a)
    if len(a) != len(b):
        raise UsageError("row count of matrix and right-hand side differ")
    ncols = len(a[0]) if a else 0
    aug = [row + [Fraction(v)] for row, v in zip(a, b)]
    red, pivots = _row_echelon(aug)
    if ncols in pivots:
        raise ConsistencyError("linear system is inconsistent")
    if len(pivots) != ncols:
        raise ConsistencyError("linear system is underdetermined")
    return [red[i][ncols] for i in range(ncols)]


def det(a: Sequence[Sequence]) -> Fraction:
    m = as_matrix(a)
    n = len(m)
    if any(len(row) != n for row in m):
        raise UsageError("determinant of a non-square matrix")
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(a: Sequence[Sequence]) -> Matrix:
    m = as_matrix(a)
    n = len(m)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = _row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise UsageError("matrix is singular")
    return [row[n:] for row in red]


def matvec(a: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    return [sum((Fraction(v) * w for v, w in zip(row, x)), Fraction(0)) for row in a]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*b))
    return [[sum((Fraction(x) * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def signature(a: Sequence[Sequence]) -> int:
    """Signature of a symmetric rational matrix by congruence diagonalisation.

    Uses a symmetric LDL^T elimination; when every remaining diagonal entry
    vanishes, the basis change e_i -> e_i + e_j manufactures a nonzero pivot
    from an off-diagonal entry.
    """
    m = as_matrix(a)
    n = len(m)
    if any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
        raise UsageError("signature requires a symmetric matrix")
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j] != 0), None)
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            # row/column operation: e_i <- e_i + e_j
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            if m[i][piv] != 0:
                f = m[i][piv] / d
                for k in range(n):
                    m[i][k] -= f * m[piv][k]
                for k in range(n):
                    m[k][i] -= f * m[k][piv]
    return pos - neg
