"""Small dense linear algebra over the rationals.

Everything here works on sequences of ``Fraction`` (or ``int``) and returns
``Fraction`` entries. Matrices are lists of rows. Sizes are tiny (ambient
dimension plus a handful), so plain Gauss-Jordan elimination is adequate.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = Sequence[Fraction]
Matrix = Sequence[Sequence[Fraction]]


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def add(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def scale(c, u) -> tuple:
    return tuple(c * a for a in u)


def mat_vec(A: Matrix, v) -> tuple:
    return tuple(dot(row, v) for row in A)


def row_reduce(A: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns (rref rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(M):
            break
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(A: Matrix) -> int:
    """Rank by fraction-free elimination on rows scaled to integers."""
    rows = [list(common_denominator(row)[0]) for row in A]
    rows = [r for r in rows if any(r)]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [pr[c] * a - f * b for a, b in zip(rows[i], pr)]
        r += 1
        if r == len(rows):
            break
    return r


def nullspace(A: Matrix, ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of {x : A x = 0}; ``ncols`` is needed when ``A`` has no rows."""
    if not A:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    n = len(A[0])
    R, pivots = row_reduce(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(A: Matrix, b: Vector) -> tuple[Fraction, ...] | None:
    """Unique solution of a square nonsingular system, else ``None``."""
    n = len(A)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        return None
    return tuple(R[i][n] for i in range(n))


def solve_any(A: Matrix, b: Vector) -> tuple[Fraction, ...] | None:
    """Some solution of A x = b (free variables set to 0), or ``None``."""
    if not A:
        return None
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = row_reduce(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return tuple(x)


def det(A: Matrix) -> Fraction:
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            out = -out
        out *= M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return out


def int_det(A) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    M = [list(row) for row in A]
    n = len(M)
    sign, prev = 1, 1
    for c in range(n - 1):
        if M[c][c] == 0:
            piv = next((i for i in range(c + 1, n) if M[i][c] != 0), None)
            if piv is None:
                return 0
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                M[i][j] = (M[i][j] * M[c][c] - M[i][c] * M[c][j]) // prev
        prev = M[c][c]
    return sign * M[n - 1][n - 1] if n else 1


def inverse(A: Matrix) -> list[list[Fraction]] | None:
    n = len(A)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    R, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [row[n:] for row in R]


def primitive_integer(v) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector (same direction)."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in ints)


def common_denominator(p) -> tuple[tuple[int, ...], int]:
    """Write a rational vector as (integer numerators, positive common denominator)."""
    den = 1
    for x in p:
        d = x.denominator if isinstance(x, Fraction) else 1
        den = den * d // gcd(den, d)
    return tuple(int(x * den) for x in p), den
