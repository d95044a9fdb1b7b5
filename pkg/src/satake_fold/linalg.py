"""Small exact linear algebra helpers: integer matrices, Fraction solves, Smith form.

Matrices are tuples of row tuples.  Vectors are plain tuples.  Nothing here is
supposed to be fast on large inputs; ranks in this package stay in single digits.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Matrix = tuple[tuple, ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_vec(m: Matrix, v: Sequence) -> tuple:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return sum(x * y for x, y in zip(u, v))


def frac_inverse(m: Matrix) -> Matrix:
    """Inverse of a square matrix over Fraction.  Raises ValueError if singular."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def int_inverse(m: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    inv = frac_inverse(m)
    out = []
    for row in inv:
        irow = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not invertible over the integers")
            irow.append(int(x))
        out.append(tuple(irow))
    return tuple(out)


def solve_columns(cols: Sequence[Sequence], target: Sequence) -> Optional[tuple]:
    """Solve sum_j x_j * cols[j] == target for x over Fraction.

    The columns must be linearly independent; returns None when the target is
    outside their span, otherwise the unique coefficient tuple.
    """
    n = len(cols)
    d = len(target)
    if n == 0:
        return () if all(t == 0 for t in target) else None
    a = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(d)]
    row = 0
    pivots = []
    for col in range(n):
        piv = next((r for r in range(row, d) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("columns are linearly dependent")
        a[row], a[piv] = a[piv], a[row]
        inv = Fraction(1) / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(d):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    for r in range(row, d):
        if a[r][n] != 0:
            return None
    return tuple(a[r][n] for r in range(n))


def scaled_left_inverse(cols: Sequence[Sequence]) -> tuple[Matrix, int]:
    """Integer pair (L, den) with L @ column-matrix == den * identity.

    Used for fast repeated coefficient extraction: coefficients of v in the
    column basis are (L @ v) / den, valid exactly when the scaled residual
    check against the columns passes.
    """
    n = len(cols)
    # Left inverse G^{-1} A^T with G the Gram matrix of the columns.
    gram = tuple(tuple(Fraction(dot(cols[i], cols[j])) for j in range(n)) for i in range(n))
    ginv = frac_inverse(gram)
    at = tuple(tuple(Fraction(c[i]) for i in range(len(cols[0]))) for c in cols)
    lfrac = mat_mul(ginv, at)
    den = 1
    for row in lfrac:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    lint = tuple(tuple(int(x * den) for x in row) for row in lfrac)
    return lint, den


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (u, d, v) with u @ m @ v == d, u and v unimodular, d diagonal.

    Diagonal entries are nonnegative and satisfy d[i] | d[i+1].  The algorithm
    is deterministic so downstream basis choices are reproducible.
    """
    rows = len(m)
    ncols = len(m[0]) if rows else 0
    a = [list(row) for row in m]
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    size = min(rows, ncols)
    while t < size:
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, ncols):
                x = abs(a[i][j])
                if x != 0 and (best is None or x < best):
                    best, pivot = x, (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        if a[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, rows):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                add_row(t, i, -q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, ncols):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                add_col(t, j, -q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # Pivot divides every remaining entry, or fold an offending row in and retry.
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, ncols):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        t += 1
    d = tuple(tuple(a[i][j] for j in range(ncols)) for i in range(rows))
    return (tuple(tuple(row) for row in u), d, tuple(tuple(row) for row in v))
