"""Exact dense linear algebra over integers and rationals.

Rank decisions and the loop-cutset computation must not depend on floating
point: entries are small integers and the relevant determinants are units, so
exact arithmetic is cheap at desk scale.  Forward elimination uses the
fraction-free Bareiss scheme on integer matrices; general rational work falls
back to ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction


Matrix = list[list[Fraction]]


def frac_matrix(rows) -> Matrix:
    """Copy any nested numeric sequence into a Fraction matrix."""
    return [[Fraction(x) for x in row] for row in rows]


def rank_exact(rows) -> int:
    """Rank of a matrix with exact rational arithmetic."""
    m = frac_matrix(rows)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        for r in range(rank + 1, nrows):
            if m[r][col] == 0:
                continue
            factor = m[r][col] * inv
            for c in range(col, ncols):
                m[r][c] -= factor * m[rank][c]
        rank += 1
        if rank == nrows:
            break
    return rank


def bareiss_solve(a_rows, b_rows) -> Matrix:
    """Solve A X = B exactly for square integer (or rational) A.

    Forward elimination is fraction-free (Bareiss): intermediate values stay
    integers when the input is integer, with exact divisions by the previous
    pivot.  Back substitution returns Fractions.

    Raises ValueError if A is singular.
    """
    n = len(a_rows)
    if n == 0:
        return []
    width = len(b_rows[0]) if b_rows else 0
    aug = [[Fraction(x) for x in a_rows[r]] + [Fraction(x) for x in b_rows[r]] for r in range(n)]
    total = n + width

    prev = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if aug[r][k] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        pivot = aug[k][k]
        for i in range(k + 1, n):
            row_i, row_k = aug[i], aug[k]
            lead = row_i[k]
            for j in range(k + 1, total):
                row_i[j] = (pivot * row_i[j] - lead * row_k[j]) / prev
            row_i[k] = Fraction(0)
        prev = pivot

    x = [[Fraction(0)] * width for _ in range(n)]
    for r in range(n - 1, -1, -1):
        for c in range(width):
            s = aug[r][n + c]
            for j in range(r + 1, n):
                s -= aug[r][j] * x[j][c]
            x[r][c] = s / aug[r][r]
    return x


def row_reduce(aug: Matrix) -> int:
    """In-place reduced row echelon form over Fractions; returns the rank."""
    if not aug:
        return 0
    nrows, ncols = len(aug), len(aug[0])
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [v * inv for v in aug[rank]]
        for r in range(nrows):
            if r != rank and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * p for v, p in zip(aug[r], aug[rank])]
        rank += 1
    return rank
