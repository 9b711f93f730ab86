"""Exact linear algebra over the integers, the rationals, and GF(p).

Everything is fraction-free or Fraction-based; no floats.  Problem sizes
are tiny (ambient dimension at most 30), so clarity wins over asymptotics:
Bareiss elimination for integer determinants and square solves, Gaussian
elimination over Fraction or GF(p) for ranks and span membership, and a
textbook Smith normal form for lattice diagnostics.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

# Statuses returned by solve_square_int.
UNIQUE = "unique"
SINGULAR_CONSISTENT = "singular-consistent"
SINGULAR_INCONSISTENT = "singular-inconsistent"


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix via Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    mat = [list(r) for r in rows]
    if any(len(r) != n for r in mat):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if mat[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            mat[k], mat[piv] = mat[piv], mat[k]
            sign = -sign
        pk = mat[k][k]
        for i in range(k + 1, n):
            row_i = mat[i]
            mik = row_i[k]
            row_k = mat[k]
            for j in range(k + 1, n):
                # Bareiss: this division is exact.
                row_i[j] = (pk * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return sign * mat[n - 1][n - 1]


def solve_square_int(aug: list[list[int]]):
    """Solve A y = b for square integer A, given as augmented rows [A | b].

    Returns (status, det, num, den): on UNIQUE the solution is the exact
    rational vector num[i] / den with integer num and a single common
    nonzero integer den (so callers can classify signs without building
    Fractions); on either singular status det is 0 and num is None.
    Rows are consumed destructively; pass a copy if needed.
    """
    n = len(aug)
    if n == 0:
        return UNIQUE, 1, [], 1
    original = [row[:] for row in aug]
    sign = 1
    prev = 1
    singular = False
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k]), None)
        if piv is None:
            singular = True
            break
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
            sign = -sign
        pk = aug[k][k]
        for i in range(k + 1, n):
            row_i = aug[i]
            mik = row_i[k]
            if mik == 0 and pk == prev:
                continue
            row_k = aug[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (pk * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    if singular:
        if _rational_consistent(original):
            return SINGULAR_CONSISTENT, 0, None, 0
        return SINGULAR_INCONSISTENT, 0, None, 0
    den = aug[n - 1][n - 1]
    det = sign * den
    # Back-substitute in scaled integers: num[i] = den * y[i] is det(A_i)
    # up to the row-swap sign (Cramer), so every division below is exact.
    # Eliminated rows are still valid equations of the original system.
    num = [0] * n
    num[n - 1] = aug[n - 1][n]
    for i in range(n - 2, -1, -1):
        row = aug[i]
        acc = row[n] * den
        for j in range(i + 1, n):
            if row[j]:
                acc -= row[j] * num[j]
        num[i] = acc // row[i]
    return UNIQUE, det, num, den


def _rational_consistent(aug: list[list[int]]) -> bool:
    """rank(A) == rank([A|b]) for an augmented integer system."""
    rows = [[Fraction(x) for x in r] for r in aug]
    n = len(rows)
    width = len(rows[0])
    pivot_row = 0
    for col in range(width - 1):
        piv = next((i for i in range(pivot_row, n) if rows[i][col]), None)
        if piv is None:
            continue
        rows[pivot_row], rows[piv] = rows[piv], rows[pivot_row]
        prow = rows[pivot_row]
        inv = prow[col]
        for i in range(pivot_row + 1, n):
            f = rows[i][col]
            if f:
                ri = rows[i]
                scale = f / inv
                for j in range(col, width):
                    ri[j] -= scale * prow[j]
        pivot_row += 1
    return all(row[width - 1] == 0 for row in rows[pivot_row:])


def solve_in_span(columns: Sequence[Sequence[int]], target: Sequence[int]):
    """Express target as a rational combination of the given column vectors.

    Returns the coefficient list, or None if target is outside the span.
    The columns must be linearly independent (flag-cone generators always
    are); dependence raises ValueError.
    """
    k = len(columns)
    if k == 0:
        return [] if not any(target) else None
    n = len(target)
    rows = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])]
            for i in range(n)]
    pivots: list[int] = []
    pivot_row = 0
    for col in range(k):
        piv = next((i for i in range(pivot_row, n) if rows[i][col]), None)
        if piv is None:
            continue
        rows[pivot_row], rows[piv] = rows[piv], rows[pivot_row]
        prow = rows[pivot_row]
        for i in range(n):
            if i != pivot_row and rows[i][col]:
                ri = rows[i]
                scale = ri[col] / prow[col]
                for j in range(col, k + 1):
                    ri[j] -= scale * prow[j]
        pivots.append(col)
        pivot_row += 1
    if len(pivots) < k:
        raise ValueError("span generators are linearly dependent")
    if any(rows[i][k] for i in range(pivot_row, n)):
        return None
    coeffs = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        coeffs[col] = rows[r][k] / rows[r][col]
    return coeffs


def rank_rational(rows: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank of a matrix with exact rational entries."""
    mat = [[Fraction(x) for x in r] for r in rows]
    if not mat:
        return 0
    n, width = len(mat), len(mat[0])
    rank = 0
    for col in range(width):
        piv = next((i for i in range(rank, n) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        for i in range(rank + 1, n):
            if mat[i][col]:
                ri = mat[i]
                scale = ri[col] / prow[col]
                for j in range(col, width):
                    ri[j] -= scale * prow[j]
        rank += 1
        if rank == n:
            break
    return rank


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank of an integer matrix over GF(p)."""
    mat = [[x % p for x in r] for r in rows]
    if not mat:
        return 0
    n, width = len(mat), len(mat[0])
    rank = 0
    for col in range(width):
        piv = next((i for i in range(rank, n) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        inv = pow(prow[col], p - 2, p) if p > 2 else prow[col]
        for i in range(rank + 1, n):
            if mat[i][col]:
                ri = mat[i]
                scale = (ri[col] * inv) % p
                for j in range(col, width):
                    ri[j] = (ri[j] - scale * prow[j]) % p
        rank += 1
        if rank == n:
            break
    return rank


def smith_invariant_factors(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    mat = [list(r) for r in rows]
    m = len(mat)
    n = len(mat[0]) if m else 0
    factors: list[int] = []
    top = 0
    while top < m and top < n:
        # Find a nonzero pivot of least absolute value.
        best = None
        for i in range(top, m):
            for j in range(top, n):
                v = mat[i][j]
                if v and (best is None or abs(v) < abs(mat[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        mat[top], mat[bi] = mat[bi], mat[top]
        for row in mat:
            row[top], row[bj] = row[bj], row[top]
        # Clear the pivot row and column by remainder steps.
        dirty = True
        while dirty:
            dirty = False
            p = mat[top][top]
            for i in range(top + 1, m):
                if mat[i][top]:
                    q = mat[i][top] // p
                    for j in range(top, n):
                        mat[i][j] -= q * mat[top][j]
                    if mat[i][top]:
                        mat[top], mat[i] = mat[i], mat[top]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(top + 1, n):
                if mat[top][j]:
                    q = mat[top][j] // p
                    for row in mat:
                        row[j] -= q * row[top]
                    if mat[top][j]:
                        for row in mat:
                            row[top], row[j] = row[j], row[top]
                        dirty = True
                        break
        # Enforce divisibility of the remaining block by the pivot.
        p = abs(mat[top][top])
        adjusted = False
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if mat[i][j] % p:
                    for jj in range(top, n):
                        mat[top][jj] += mat[i][jj]
                    adjusted = True
                    break
            if adjusted:
                break
        if adjusted:
            continue
        factors.append(p)
        top += 1
    return factors


def lattice_index(rows: Sequence[Sequence[int]]) -> int:
    """Index in Z^n of the lattice spanned by n integer row vectors.

    For the square full-rank case this is |det|; the Smith normal form
    covers anything else (0 means the rows do not span a finite-index
    sublattice).
    """
    n = len(rows[0]) if rows else 0
    if len(rows) == n:
        d = det_int(rows)
        if d:
            return abs(d)
    factors = smith_invariant_factors(rows)
    if len(factors) < n:
        return 0
    prod = 1
    for f in factors:
        prod *= f
    return prod


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def lcm_all(values: Sequence[int]) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
