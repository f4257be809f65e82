"""Block skew-symmetric Hessians of the chart form.

``assemble`` turns an ExteriorArray into the k(N-k) x k(N-k) matrix of
second partials of the dehomogenized form at the chart origin.  Rows and
columns are labeled by pairs (p, t) with p in 1..k and t in k+1..N, grouped
into k blocks of side N-k.  The diagonal blocks vanish and off-diagonal
blocks are skew because the form is multilinear in the frame rows; those
facts are checked, never assumed, in the tests.

Also here: exact determinant/rank front ends, the row/column reordering
that exchanges the (k, N) and (N-k, N) block layouts, and the direct-sum
embedding of two Hessians into a larger one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from . import linalg
from .exterior import ChartPoint, ExteriorArray, act_gl, act_translation, w_swap_matrix
from .multiindex import first_index, sort_with_sign
from .ring import MultiPoly, Scalar, scalar_from_string, scalar_to_string


class HessianMatrix:
    """Square matrix of side k(N-k) with (p, t)-labeled rows and columns."""

    __slots__ = ("k", "N", "rows")

    def __init__(self, k: int, N: int, rows: Sequence[Sequence]):
        side = k * (N - k)
        rows = [list(r) for r in rows]
        if len(rows) != side or any(len(r) != side for r in rows):
            raise ValueError(f"matrix must be {side}x{side} for (k,N)=({k},{N})")
        self.k = k
        self.N = N
        self.rows = rows

    @property
    def side(self) -> int:
        return self.k * (self.N - self.k)

    def label(self, i: int) -> tuple[int, int]:
        """Row index (0-based) -> label (p, t)."""
        w = self.N - self.k
        return i // w + 1, self.k + 1 + i % w

    def index_of(self, p: int, t: int) -> int:
        """Label (p, t) -> 0-based row index."""
        return (p - 1) * (self.N - self.k) + (t - self.k - 1)

    def entry(self, p: int, t: int, pp: int, tt: int):
        return self.rows[self.index_of(p, t)][self.index_of(pp, tt)]

    def block(self, i: int, j: int) -> list[list]:
        """The (N-k) x (N-k) block at block position (i, j), 1-based."""
        w = self.N - self.k
        r0, c0 = (i - 1) * w, (j - 1) * w
        return [row[c0 : c0 + w] for row in self.rows[r0 : r0 + w]]

    def block_grid(self) -> list[list[list[list]]]:
        return [[self.block(i, j) for j in range(1, self.k + 1)] for i in range(1, self.k + 1)]

    def structure_errors(self) -> list[str]:
        """Violations of the expected shape: symmetry, zero diagonal blocks,
        skew off-diagonal blocks.  Empty list means structurally valid."""
        errs = []
        n = self.side
        w = self.N - self.k
        for i in range(n):
            for j in range(n):
                if self.rows[i][j] != self.rows[j][i]:
                    errs.append(f"not symmetric at ({i},{j})")
                blk_i, blk_j = i // w, j // w
                if blk_i == blk_j and self.rows[i][j] != 0:
                    errs.append(f"diagonal block {blk_i + 1} nonzero at ({i},{j})")
        for bi in range(1, self.k + 1):
            for bj in range(bi + 1, self.k + 1):
                blk = self.block(bi, bj)
                for u in range(w):
                    for v in range(w):
                        if blk[u][v] != -blk[v][u]:
                            errs.append(f"block ({bi},{bj}) not skew at ({u},{v})")
        return errs

    def is_structurally_valid(self) -> bool:
        return not self.structure_errors()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HessianMatrix)
            and (self.k, self.N) == (other.k, other.N)
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"HessianMatrix(k={self.k}, N={self.N}, side={self.side})"

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        def ser(e):
            if isinstance(e, MultiPoly):
                return e.to_str(coefficient_names(self.k, self.N))
            return scalar_to_string(e)

        return {"k": self.k, "N": self.N, "rows": [[ser(e) for e in row] for row in self.rows]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "HessianMatrix":
        k, N = int(data["k"]), int(data["N"])
        rows = [[scalar_from_string(e) for e in row] for row in data["rows"]]
        return cls(k, N, rows)


@dataclass(frozen=True)
class BlockDecomposition:
    """Per-block split of a Hessian along a chart-column split (k1, k2).

    Each off-diagonal block A of side k1 + k2 decomposes as
    [[S1, U], [-U^T, S2]] with S1, S2 skew of sides k1, k2 and U arbitrary.
    ``sub`` maps the block position (i, j), i < j, to (S1, S2, U).
    """

    k: int
    N: int
    k1: int
    k2: int
    sub: dict[tuple[int, int], tuple[list[list], list[list], list[list]]]

    def __post_init__(self):
        if self.k1 < self.k2 or self.k2 < 2:
            raise ValueError(f"split sizes must satisfy k1 >= k2 >= 2, got ({self.k1},{self.k2})")
        if self.k1 + self.k2 != self.N - self.k:
            raise ValueError("split sizes must add up to the block side")


def decompose_blocks(H: HessianMatrix, k1: int, k2: int) -> BlockDecomposition:
    """Split every off-diagonal block of H along chart columns (k1 | k2)."""
    sub = {}
    for i in range(1, H.k + 1):
        for j in range(i + 1, H.k + 1):
            blk = H.block(i, j)
            s1 = [row[:k1] for row in blk[:k1]]
            s2 = [row[k1:] for row in blk[k1:]]
            u = [row[k1:] for row in blk[:k1]]
            sub[(i, j)] = (s1, s2, u)
    return BlockDecomposition(H.k, H.N, k1, k2, sub)


# ---------------------------------------------------------------------------
# assembly


def assemble(A: ExteriorArray) -> HessianMatrix:
    """Second partials of the dehomogenized form at the chart origin.

    Entry ((p,t), (p',t')) is the coefficient symbol with t at position p
    and t' at position p' (resolved through the sign of sorting); same-block
    entries vanish because the form is affine in each frame row.
    """
    k, N = A.k, A.N
    side = k * (N - k)
    poly_nvars = _array_poly_nvars(A)
    zero = MultiPoly.zero(poly_nvars) if poly_nvars is not None else 0
    rows = [[zero] * side for _ in range(side)]
    H = HessianMatrix(k, N, rows)
    for p in range(1, k + 1):
        for pp in range(p + 1, k + 1):
            for t in range(k + 1, N + 1):
                for tt in range(k + 1, N + 1):
                    if t == tt:
                        continue
                    c = A.positional_get((t, tt), (p, pp))
                    H.rows[H.index_of(p, t)][H.index_of(pp, tt)] = c
                    H.rows[H.index_of(pp, tt)][H.index_of(p, t)] = c
    return H


def _array_poly_nvars(A: ExteriorArray) -> int | None:
    for c in A.coeffs.values():
        if isinstance(c, MultiPoly):
            return c.nvars
    return None


def coefficient_names(k: int, N: int) -> list[str]:
    """Names of the independent entry symbols, ordered (p, p', t, t')."""
    return [
        f"a_{p}_{pp}_{t}_{tt}"
        for p in range(1, k + 1)
        for pp in range(p + 1, k + 1)
        for t in range(k + 1, N + 1)
        for tt in range(t + 1, N + 1)
    ]


def symbolic_coefficient_array(k: int, N: int) -> ExteriorArray:
    """ExteriorArray whose degree-2 replacement coefficients are fresh
    variables, one per (p < p', t < t'); everything else zero."""
    n = comb(k, 2) * comb(N - k, 2)
    coeffs: dict[tuple[int, ...], MultiPoly] = {}
    v = 0
    for p in range(1, k + 1):
        for pp in range(p + 1, k + 1):
            for t in range(k + 1, N + 1):
                for tt in range(t + 1, N + 1):
                    raw = list(first_index(k, N))
                    raw[p - 1] = t
                    raw[pp - 1] = tt
                    idx, sign = sort_with_sign(raw, N)
                    # positional symbol = sign * a_idx, so a_idx = sign * var
                    coeffs[idx] = sign * MultiPoly.variable(v, n)
                    v += 1
    if v != n:
        raise AssertionError("variable count mismatch")
    return ExteriorArray(k, N, coeffs)


def assemble_symbolic(k: int, N: int) -> HessianMatrix:
    """Fully symbolic Hessian: one variable per independent entry pattern,
    every other entry produced by the structural relations."""
    return assemble(symbolic_coefficient_array(k, N))


def assemble_dual(A: ExteriorArray) -> HessianMatrix:
    """Hessian at the opposite coordinate point, in swapped-chart coordinates.

    Conjugating by the block swap w moves the chart around the opposite
    point back to the standard one, so this is assemble(A . w).  Row label
    (p, t) of the result is the swapped-chart coordinate pair (p, t - k).
    """
    return assemble(act_gl(A, w_swap_matrix(A.k, A.N)))


def hessian_at(A: ExteriorArray, X: ChartPoint) -> HessianMatrix:
    """Hessian of the chart form at the point X (translate, then assemble)."""
    return assemble(act_translation(A, X))


# ---------------------------------------------------------------------------
# exact linear algebra front ends


def _rows_of(M) -> list[list]:
    return M.rows if isinstance(M, HessianMatrix) else [list(r) for r in M]


def det_exact(M):
    """Exact determinant over ints, rationals, or MultiPoly entries."""
    return linalg.det_exact_generic(_rows_of(M))


def det_mod(M, p: int) -> int:
    """Determinant over GF(p) (integer entries reduced mod p)."""
    return linalg.det_mod(_rows_of(M), p)


def rank_exact(M) -> int:
    """Exact rank over Q, cross-checked against a mod-p lower bound."""
    rows = _rows_of(M)
    if not rows:
        return 0
    r = linalg.rank_fraction(rows)
    try:
        from .ring import WORD_PRIMES, scalar_mod

        p = WORD_PRIMES[0]
        rp = linalg.rank_mod([[scalar_mod(e, p) for e in row] for row in rows], p)
    except ZeroDivisionError:
        rp = 0
    if rp > r:
        raise AssertionError(f"mod-p rank {rp} exceeds exact rank {r}")
    return r


def corank(M) -> int:
    rows = _rows_of(M)
    return len(rows) - rank_exact(rows)


def block_row_rank(H: HessianMatrix, i: int) -> int:
    """Rank of the i-th natural row block (height N-k, full width).

    Full rank here means N-k.  (A k-row reading of the blocks also exists;
    that one is ``row_band_rank``.)
    """
    if not 1 <= i <= H.k:
        raise ValueError(f"block index {i} outside [1, {H.k}]")
    w = H.N - H.k
    rows = H.rows[(i - 1) * w : i * w]
    return linalg.rank_fraction(rows)


def row_band_rank(H: HessianMatrix, t_index: int) -> int:
    """Rank of the k rows {(p, k + t_index) : p = 1..k} (full width).

    These are the height-k row blocks of the column-swapped layout; full
    rank means k.  Kept separate from ``block_row_rank`` because the two
    groupings disagree about what a "row block" is.
    """
    if not 1 <= t_index <= H.N - H.k:
        raise ValueError(f"band index {t_index} outside [1, {H.N - H.k}]")
    rows = [H.rows[H.index_of(p, H.k + t_index)] for p in range(1, H.k + 1)]
    return linalg.rank_fraction(rows)


# ---------------------------------------------------------------------------
# duality reordering


def duality_permutation(k: int, N: int) -> list[int]:
    """Row/column order that regroups the (k, N) layout as an (N-k, N) one.

    Position r of the result holds the old 1-based index; entry (p, t) moves
    so that labels are regrouped by t first: [1, (N-k)+1, 2(N-k)+1, ...],
    then [2, (N-k)+2, ...], and so on.
    """
    w = N - k
    return [j + (p - 1) * w for j in range(1, w + 1) for p in range(1, k + 1)]


def apply_permutation(M, perm: Sequence[int]) -> list[list]:
    """Reorder rows and columns by the same 1-based permutation."""
    rows = _rows_of(M)
    return [[rows[pi - 1][pj - 1] for pj in perm] for pi in perm]


def dualize_layout(H: HessianMatrix) -> HessianMatrix:
    """Apply the duality reordering and relabel as an (N-k, N) Hessian."""
    return HessianMatrix(H.N - H.k, H.N, apply_permutation(H, duality_permutation(H.k, H.N)))


# ---------------------------------------------------------------------------
# specialization embedding


def specialize_embed(H1: HessianMatrix, H2: HessianMatrix) -> HessianMatrix:
    """Direct-sum embedding into the Hessian shape for (k, a + b - k).

    Each block of the result carries H1's block on the first a-k chart
    columns, H2's block on the last b-k, and zeros in between; regrouping
    rows/columns by source turns it into blockdiag(H1, H2), so the
    determinant is exactly det(H1) * det(H2).
    """
    if H1.k != H2.k:
        raise ValueError(f"mixed k: {H1.k} vs {H2.k}")
    k = H1.k
    a, b = H1.N, H2.N
    k1, k2 = a - k, b - k
    if k1 < 1 or k2 < 1:
        raise ValueError("each factor needs at least one chart column")
    N = a + b - k
    side = k * (N - k)
    zero = 0
    for H in (H1, H2):
        nv = _matrix_poly_nvars(H)
        if nv is not None:
            zero = MultiPoly.zero(nv)
            break
    out = HessianMatrix(k, N, [[zero] * side for _ in range(side)])
    for p in range(1, k + 1):
        for pp in range(1, k + 1):
            for u in range(1, N - k + 1):
                for v in range(1, N - k + 1):
                    if u <= k1 and v <= k1:
                        e = H1.entry(p, k + u, pp, k + v)
                    elif u > k1 and v > k1:
                        e = H2.entry(p, k + u - k1, pp, k + v - k1)
                    else:
                        continue
                    if e != 0:
                        out.rows[out.index_of(p, k + u)][out.index_of(pp, k + v)] = e
    return out


def _matrix_poly_nvars(H: HessianMatrix) -> int | None:
    for row in H.rows:
        for e in row:
            if isinstance(e, MultiPoly):
                return e.nvars
    return None


def grouping_permutation(k: int, a: int, b: int) -> list[int]:
    """1-based permutation that turns specialize_embed(H1, H2) into
    blockdiag(H1, H2) when applied to rows and columns."""
    k1, k2 = a - k, b - k
    w = k1 + k2
    first = [(p - 1) * w + u for p in range(1, k + 1) for u in range(1, k1 + 1)]
    second = [(p - 1) * w + k1 + u for p in range(1, k + 1) for u in range(1, k2 + 1)]
    return first + second


def position_split_embed(H1: HessianMatrix, H2: HessianMatrix) -> HessianMatrix:
    """Stack two Hessians on disjoint row-position groups.

    Both factors must agree on the number of chart columns m; the result is
    the (k1 + k2, k1 + k2 + m) Hessian whose blocks (p, q) with p, q <= k1
    come from H1, blocks with p, q > k1 from H2, and all cross blocks zero.
    In the natural row order that is exactly blockdiag(H1, H2), so ranks add
    and the determinant is det(H1) * det(H2).
    """
    m = H1.N - H1.k
    if H2.N - H2.k != m:
        raise ValueError(f"chart-column mismatch: {m} vs {H2.N - H2.k}")
    k = H1.k + H2.k
    side = k * m
    zero = 0
    for H in (H1, H2):
        nv = _matrix_poly_nvars(H)
        if nv is not None:
            zero = MultiPoly.zero(nv)
            break
    rows = [[zero] * side for _ in range(side)]
    off = H1.k * m
    for r in range(H1.k * m):
        rows[r][: H1.k * m] = list(H1.rows[r])
    for r in range(H2.k * m):
        rows[off + r][off:] = list(H2.rows[r])
    return HessianMatrix(k, k + m, rows)


# ---------------------------------------------------------------------------
# adjugate rank


def adjugate_rank_check(M) -> bool:
    """True iff the matrix has corank exactly 1 and its adjugate has rank 1.

    Route one: exact elimination must find corank 1 and a kernel vector.
    Route two: the cofactor complementary to nonzero kernel coordinates
    must be a nonzero determinant (the adjugate is a rank-one outer product
    of kernel vectors, so that single entry certifies rank >= 1).
    """
    rows = _rows_of(M)
    n = len(rows)
    if n == 0 or linalg.rank_fraction(rows) != n - 1:
        return False
    v = linalg.kernel_vector(rows)
    u = linalg.kernel_vector([list(col) for col in zip(*rows)])
    if v is None or u is None:
        raise AssertionError("corank 1 but no kernel vector found")
    if any(x != 0 for x in linalg.mat_vec(rows, v)):
        raise AssertionError("kernel vector fails to annihilate the matrix")
    j = next(i for i, x in enumerate(v) if x != 0)
    i = next(r for r, x in enumerate(u) if x != 0)
    minor = [
        [rows[r][c] for c in range(n) if c != j]
        for r in range(n)
        if r != i
    ]
    return linalg.det_exact_generic(minor) != 0
