"""Alternating coefficient arrays and the multilinear form F(A, x).

An ``ExteriorArray`` A holds the coefficients a_I of a degree-k alternating
array on C^N.  The associated form on the chart E around the coordinate
point of If = (1..k) is

    F(A, x) = sum_I a_I eta_I([Id_k | X])

where eta_I is the k x k minor with columns I.  Positional accessors expose
the shifted coefficient symbols (value t placed at position p of If, sign of
sorting applied), which is how every Hessian entry and defining form
downstream is expressed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import det_cofactor
from .multiindex import (
    MultiIndex,
    enumerate_indices,
    first_index,
    is_valid_index,
    last_index,
    sort_with_sign,
    star,
)
from .ring import MultiPoly, Scalar, scalar_from_string, scalar_to_string


class ExteriorArray:
    """Map MultiIndex -> coefficient, stored on sorted keys only.

    Access with an arbitrary tuple resolves through sort_with_sign, so the
    alternating relations a(permuted I) = sign * a(I) and a(repeat) = 0 hold
    by construction.
    """

    __slots__ = ("k", "N", "coeffs")

    def __init__(self, k: int, N: int, coeffs: Mapping[MultiIndex, Scalar] | None = None):
        if not 1 <= k <= N:
            raise ValueError(f"need 1 <= k <= N, got k={k}, N={N}")
        self.k = k
        self.N = N
        self.coeffs: dict[MultiIndex, Scalar] = {}
        if coeffs:
            for I, c in coeffs.items():
                I = tuple(I)
                if not is_valid_index(I, k, N):
                    raise ValueError(f"key {I} is not a sorted multiindex for (k,N)=({k},{N})")
                if c != 0:
                    self.coeffs[I] = c

    def get(self, I: Sequence[int]):
        """Coefficient at an arbitrary (possibly unsorted) tuple."""
        idx, sign = sort_with_sign(I, self.N)
        if sign == 0:
            return 0
        c = self.coeffs.get(idx, 0)
        return c if sign == 1 else -c

    def positional_get(self, values: Sequence[int], positions: Sequence[int]):
        """The coefficient symbol with values t_1..t_r at positions p_1..p_r.

        Builds the tuple obtained from If by writing t_i into position p_i,
        then resolves through the sign of sorting.  r = 0 returns a_{1..k}.
        """
        if len(values) != len(positions):
            raise ValueError("values/positions length mismatch")
        if len(set(positions)) != len(positions):
            raise ValueError(f"repeated positions {positions}")
        raw = list(first_index(self.k, self.N))
        for t, p in zip(values, positions):
            if not 1 <= p <= self.k:
                raise ValueError(f"position {p} outside [1, {self.k}]")
            if not self.k < t <= self.N:
                raise ValueError(f"value {t} outside ({self.k}, {self.N}]")
            raw[p - 1] = t
        return self.get(raw)

    def items(self):
        """Nonzero entries in lexicographic key order."""
        return sorted(self.coeffs.items())

    def support(self) -> set[MultiIndex]:
        return set(self.coeffs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ExteriorArray)
            and (self.k, self.N) == (other.k, other.N)
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        return f"ExteriorArray(k={self.k}, N={self.N}, nnz={len(self.coeffs)})"

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "N": self.N,
            "entries": [
                {"I": list(I), "c": scalar_to_string(c)} for I, c in self.items()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ExteriorArray":
        k, N = int(data["k"]), int(data["N"])
        coeffs: dict[MultiIndex, Scalar] = {}
        for ent in data.get("entries", ()):
            I = tuple(int(v) for v in ent["I"])
            if not is_valid_index(I, k, N):
                raise ValueError(f"entry index {list(I)} must be sorted, distinct, in [1,{N}]")
            if I in coeffs:
                raise ValueError(f"duplicate entry index {list(I)}")
            coeffs[I] = scalar_from_string(ent["c"])
        return cls(k, N, coeffs)


@dataclass(frozen=True)
class ChartPoint:
    """The k x (N-k) coordinate matrix X on the chart E; rows = positions."""

    k: int
    N: int
    X: tuple[tuple, ...]

    @classmethod
    def from_rows(cls, k: int, N: int, rows: Sequence[Sequence]) -> "ChartPoint":
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != k or any(len(r) != N - k for r in rows):
            raise ValueError(f"chart point must be {k}x{N - k}")
        return cls(k, N, rows)

    @classmethod
    def zero(cls, k: int, N: int) -> "ChartPoint":
        return cls.from_rows(k, N, [[0] * (N - k) for _ in range(k)])

    def entry(self, p: int, t: int):
        """x^p_t with p in [1,k], t in [k+1,N]."""
        return self.X[p - 1][t - self.k - 1]

    def frame(self) -> list[list]:
        """The k x N row frame [Id_k | X]."""
        return [
            [1 if c == p else 0 for c in range(1, self.k + 1)] + list(self.X[p - 1])
            for p in range(1, self.k + 1)
        ]

    def neg(self) -> "ChartPoint":
        return ChartPoint.from_rows(self.k, self.N, [[-e for e in row] for row in self.X])


GroupElement = Sequence[Sequence]  # N x N matrix


def frame_minor(frame: Sequence[Sequence], I: MultiIndex):
    """The k x k minor of a k x N row frame with columns I (1-based)."""
    sub = [[row[c - 1] for c in I] for row in frame]
    return det_cofactor(sub)


def plucker_minor(X: ChartPoint, I: MultiIndex):
    """eta_I at the chart point: minor of [Id_k | X] with columns I."""
    if not is_valid_index(tuple(I), X.k, X.N):
        raise ValueError(f"invalid multiindex {I}")
    return frame_minor(X.frame(), tuple(I))


def evaluate_form(A: ExteriorArray, X: "ChartPoint | Sequence[Sequence]"):
    """F(A, x) = sum_I a_I eta_I at a chart point or explicit k x N frame."""
    frame = X.frame() if isinstance(X, ChartPoint) else [list(r) for r in X]
    total = 0
    for I, c in A.items():
        total = total + c * frame_minor(frame, I)
    return total


def var_index(p: int, t: int, k: int, N: int) -> int:
    """Flat variable index of x^p_t: row-major, matching Hessian row labels."""
    return (p - 1) * (N - k) + (t - k - 1)


def chart_variable_names(k: int, N: int) -> list[str]:
    return [f"x_{p}_{t}" for p in range(1, k + 1) for t in range(k + 1, N + 1)]


def symbolic_chart(k: int, N: int) -> ChartPoint:
    """Chart point whose entries are the k(N-k) coordinate variables."""
    n = k * (N - k)
    rows = [
        [MultiPoly.variable(var_index(p, t, k, N), n) for t in range(k + 1, N + 1)]
        for p in range(1, k + 1)
    ]
    return ChartPoint.from_rows(k, N, rows)


def dehomogenized_polynomial(A: ExteriorArray) -> MultiPoly:
    """F(A, x) as a polynomial in the chart coordinates x^p_t.

    Expanded by Leibniz sums over the column minors rather than through the
    generic determinant, so it can serve as an independent route in tests.
    Total degree is at most min(k, N-k).
    """
    k, N = A.k, A.N
    n = k * (N - k)
    import itertools

    out = MultiPoly.zero(n)
    for I, c in A.items():
        # minor of [Id | X] with columns I: identity columns pin their rows,
        # the remaining rows P are matched to the X-columns T in all ways.
        fixed = [v for v in I if v <= k]
        T = [v for v in I if v > k]
        P = [p for p in range(1, k + 1) if p not in fixed]
        col_of = {v: j for j, v in enumerate(I)}
        for assign in itertools.permutations(P):
            # row assign[j] picks column T[j]; the rest sit on the identity.
            perm_images = [0] * k
            for v in fixed:
                perm_images[v - 1] = col_of[v]
            for j, p in enumerate(assign):
                perm_images[p - 1] = col_of[T[j]]
            sign = _perm_sign(perm_images)
            exp = [0] * n
            for j, p in enumerate(assign):
                exp[var_index(p, T[j], k, N)] += 1
            out = out + MultiPoly(n, {tuple(exp): sign * c})
    return out


def _perm_sign(images: Sequence[int]) -> int:
    inv = 0
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if images[i] > images[j]:
                inv += 1
    return -1 if inv % 2 else 1


def gradient(A: ExteriorArray, X: ChartPoint) -> list[list]:
    """All first partials of the dehomogenized form at X, as a k x (N-k) grid."""
    poly = dehomogenized_polynomial(A)
    point = [X.entry(p, t) for p in range(1, A.k + 1) for t in range(A.k + 1, A.N + 1)]
    grid = []
    for p in range(1, A.k + 1):
        row = []
        for t in range(A.k + 1, A.N + 1):
            row.append(poly.derivative(var_index(p, t, A.k, A.N)).eval(point))
        grid.append(row)
    return grid


def is_critical(A: ExteriorArray, X: ChartPoint) -> bool:
    """True iff F(A, X) = 0 and every first partial vanishes at X."""
    if evaluate_form(A, X) != 0:
        return False
    return all(e == 0 for row in gradient(A, X) for e in row)


def nabla_membership(A: ExteriorArray, J: MultiIndex) -> bool:
    """True iff a_I = 0 for every I in the star of J.

    This is the chart-free criticality test at the coordinate point of J.
    """
    return all(A.coeffs.get(I, 0) == 0 for I in star(tuple(J), A.N))


def act_translation(A: ExteriorArray, X: ChartPoint) -> ExteriorArray:
    """Translate the array by X: the result's positional coefficients are the
    iterated partials of F(A, .) at X.

    Implemented by shifting the dehomogenized polynomial (F(A, X + y)) and
    reading monomial coefficients back off; the iterated-derivative index
    formula is kept as a test oracle, not repeated here.
    """
    k, N = A.k, A.N
    poly = dehomogenized_polynomial(A)
    point = [X.entry(p, t) for p in range(1, k + 1) for t in range(k + 1, N + 1)]
    shifted = poly.translate(point)
    n = k * (N - k)
    coeffs: dict[MultiIndex, Scalar] = {}
    for I in enumerate_indices(k, N):
        P = [p for p in range(1, k + 1) if p not in I]
        T = [v for v in I if v > k]
        exp = [0] * n
        for p, t in zip(P, T):
            exp[var_index(p, t, k, N)] = 1
        c = shifted.coefficient(tuple(exp))
        if c != 0:
            raw = list(first_index(k, N))
            for p, t in zip(P, T):
                raw[p - 1] = t
            _, sign = sort_with_sign(raw, N)
            coeffs[I] = sign * c
    return ExteriorArray(k, N, coeffs)


def minor_of(g: GroupElement, rows: MultiIndex, cols: MultiIndex):
    """k x k minor of g with the given 1-based row and column index sets."""
    sub = [[g[i - 1][j - 1] for j in cols] for i in rows]
    return det_cofactor(sub)


def _signed_permutation(g: GroupElement) -> tuple[dict[int, int], dict[int, Scalar]] | None:
    """If g is a signed permutation matrix, return (phi, sign) with
    g e_j = sign[j] * e_phi(j); otherwise None."""
    N = len(g)
    phi: dict[int, int] = {}
    sgn: dict[int, Scalar] = {}
    seen_rows: set[int] = set()
    for j in range(1, N + 1):
        nz = [(i, g[i - 1][j - 1]) for i in range(1, N + 1) if g[i - 1][j - 1] != 0]
        if len(nz) != 1 or nz[0][1] not in (1, -1) or nz[0][0] in seen_rows:
            return None
        phi[j] = nz[0][0]
        sgn[j] = nz[0][1]
        seen_rows.add(nz[0][0])
    return phi, sgn


def act_gl(A: ExteriorArray, g: GroupElement) -> ExteriorArray:
    """Right action of GL_N: (A . g)_J = sum_I a_I * minor(g; rows I, cols J)."""
    k, N = A.k, A.N
    if len(g) != N or any(len(row) != N for row in g):
        raise ValueError(f"group element must be {N}x{N}")
    perm = _signed_permutation(g)
    coeffs: dict[MultiIndex, Scalar] = {}
    if perm is not None:
        phi, sgn = perm
        inv = {v: kk for kk, v in phi.items()}
        for I, c in A.items():
            J = tuple(sorted(inv[i] for i in I))
            _, order_sign = sort_with_sign(tuple(phi[j] for j in J), N)
            unit = 1
            for j in J:
                unit *= sgn[j]
            val = c * order_sign * unit
            if val != 0:
                coeffs[J] = coeffs.get(J, 0) + val
        coeffs = {J: c for J, c in coeffs.items() if c != 0}
        return ExteriorArray(k, N, coeffs)
    for J in enumerate_indices(k, N):
        total = 0
        for I, c in A.items():
            total = total + c * minor_of(g, I, J)
        if total != 0:
            coeffs[J] = total
    return ExteriorArray(k, N, coeffs)


def dual_chart_point(X: ChartPoint) -> list[list]:
    """The k x N frame [X | Id_k] of the swapped chart wE.

    At X = 0 this frames span(e_{N-k+1}, ..., e_N), the coordinate point
    opposite to If.
    """
    k, N = X.k, X.N
    return [
        list(X.X[p - 1]) + [1 if c == p else 0 for c in range(1, k + 1)]
        for p in range(1, k + 1)
    ]


def w_swap_matrix(k: int, N: int) -> list[list[int]]:
    """The block swap w = [[0, Id_{N-k}], [Id_k, 0]]: w e_j = e_{N-k+j} for
    j <= k and e_{j-k} for j > k.  Conjugating the chart by w turns E into wE."""
    g = [[0] * N for _ in range(N)]
    for j in range(1, k + 1):
        g[N - k + j - 1][j - 1] = 1
    for j in range(k + 1, N + 1):
        g[j - k - 1][j - 1] = 1
    return g


def coordinate_point_gl(J: MultiIndex, k: int, N: int) -> list[list[int]]:
    """A permutation matrix g with g . (chart at 0) framing the coordinate
    point of J: column p holds e_{J_p} for p <= k, remaining basis vectors
    fill the other columns in ascending order."""
    J = tuple(J)
    rest = [v for v in range(1, N + 1) if v not in J]
    g = [[0] * N for _ in range(N)]
    for p, v in enumerate(J):
        g[v - 1][p] = 1
    for c, v in enumerate(rest, start=k):
        g[v - 1][c] = 1
    return g
