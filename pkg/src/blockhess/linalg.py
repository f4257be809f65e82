"""Exact dense linear algebra kernels.

Matrices are plain lists of lists.  Entries may be ints, Fractions, or
MultiPoly values; every routine here is fraction-free or otherwise exact.
The typed, contract-carrying wrappers live in :mod:`blockhess.hessian`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .ring import MultiPoly, Scalar

Matrix = list[list]


def copy_matrix(m: Sequence[Sequence]) -> Matrix:
    return [list(row) for row in m]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    n, m, q = len(a), len(b[0]), len(b)
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            s = 0
            for t in range(q):
                s = s + a[i][t] * b[t][j]
            out[i][j] = s
    return out


def _is_poly(m: Sequence[Sequence]) -> bool:
    return any(isinstance(e, MultiPoly) for row in m for e in row)


def _exquo(a, b):
    """Exact division a / b in the entry domain."""
    if isinstance(a, MultiPoly):
        return a.exact_divide(b)
    if isinstance(b, MultiPoly):
        if a == 0:
            return MultiPoly.zero(b.nvars)
        raise ArithmeticError("scalar divided by polynomial")
    q = Fraction(a) / Fraction(b)
    return q.numerator if q.denominator == 1 else q


def _pivot_weight(e) -> int:
    """Pivot preference: fewer terms / smaller magnitude keeps swell down."""
    if isinstance(e, MultiPoly):
        return len(e.terms)
    if isinstance(e, Fraction):
        return abs(e.numerator) + e.denominator
    return abs(e)


def det_cofactor(m: Sequence[Sequence]):
    """Determinant by cofactor expansion; intended for n < 5 and test oracles."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        a = m[0][j]
        if isinstance(a, (int, Fraction)) and a == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = a * det_cofactor(minor)
        total = total - term if j % 2 else total + term
    return total


def det_bareiss(m: Sequence[Sequence]):
    """Fraction-free determinant (Bareiss) with full pivoting.

    Works over any integral domain whose elements support *, -, and exact
    division (ints, Fractions, MultiPoly).  Row/column swaps are tracked in
    the sign, so zero diagonals (ubiquitous here) are harmless.
    """
    a = copy_matrix(m)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for r in range(n - 1):
        # full pivot search over the trailing block
        best = None
        for i in range(r, n):
            for j in range(r, n):
                e = a[i][j]
                if isinstance(e, MultiPoly):
                    if e.is_zero():
                        continue
                elif e == 0:
                    continue
                w = _pivot_weight(e)
                if best is None or w < best[0]:
                    best = (w, i, j)
        if best is None:
            return 0 * a[0][0] if isinstance(a[0][0], MultiPoly) else 0
        _, pi, pj = best
        if pi != r:
            a[pi], a[r] = a[r], a[pi]
            sign = -sign
        if pj != r:
            for row in a:
                row[pj], row[r] = row[r], row[pj]
            sign = -sign
        pivot = a[r][r]
        for i in range(r + 1, n):
            for j in range(r + 1, n):
                num = pivot * a[i][j] - a[i][r] * a[r][j]
                a[i][j] = _exquo(num, prev)
        prev = pivot
    last = a[n - 1][n - 1]
    return last if sign == 1 else -last


def det_exact_generic(m: Sequence[Sequence]):
    """Dispatch: cofactor expansion below size 5, Bareiss elimination above."""
    if len(m) < 5 and not _is_poly(m):
        return det_cofactor(m)
    return det_bareiss(m)


def rank_mod(m: Sequence[Sequence[int]], p: int) -> int:
    """Rank over GF(p) by Gaussian elimination.  Lower-bounds the Q-rank."""
    a = [[int(e) % p for e in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def det_mod(m: Sequence[Sequence[int]], p: int) -> int:
    """Determinant over GF(p) by Gaussian elimination with row swaps."""
    a = [[int(e) % p for e in row] for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det % p
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
    return det % p


def rank_fraction(m: Sequence[Sequence[Scalar]]) -> int:
    """Exact rank over Q by Gaussian elimination on Fractions."""
    a = [[Fraction(e) for e in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def rref_fraction(m: Sequence[Sequence[Scalar]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q; returns (rref, pivot column list)."""
    a = [[Fraction(e) for e in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def kernel_vector(m: Sequence[Sequence[Scalar]]) -> list[Fraction] | None:
    """One nonzero rational kernel vector of a square matrix, or None if invertible."""
    n = len(m)
    rref, pivots = rref_fraction(m)
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    c0 = free[0]
    v = [Fraction(0)] * n
    v[c0] = Fraction(1)
    for r, c in enumerate(pivots):
        v[c] = -rref[r][c0]
    return v


def mat_vec(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def adjugate(m: Sequence[Sequence]):
    """Classical adjugate via cofactors; test-oracle sizes only."""
    n = len(m)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [m[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            cof = det_cofactor(minor)
            out[j][i] = cof if (i + j) % 2 == 0 else -cof
    return out


def span_equal(rows_a: Sequence[Sequence[Scalar]], rows_b: Sequence[Sequence[Scalar]]) -> bool:
    """Do two row families span the same subspace of Q^n?"""
    ra = rank_fraction(rows_a) if rows_a else 0
    rb = rank_fraction(rows_b) if rows_b else 0
    if ra != rb:
        return False
    joint = [list(r) for r in rows_a] + [list(r) for r in rows_b]
    return (rank_fraction(joint) if joint else 0) == ra
