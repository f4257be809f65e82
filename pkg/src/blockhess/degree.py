"""Degree feasibility for factors of the assembled determinant.

The determinant of the side-k(N-k) Hessian is an invariant of the array
under the GL_k x GL_{N-k} chart stabilizer, and so is every irreducible
factor.  A factor of degree d can exist only if both rectangular highest
weights fit: k | (k-2)d and (N-k) | 2d.  These conditions are necessary,
never sufficient; the irreducibility engine uses them purely as a filter.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FeasibleDegrees:
    """Admissible factor degrees for the (k, N) determinant."""

    k: int
    N: int
    total: int
    degrees: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {"k": self.k, "N": self.N, "total": self.total, "degrees": list(self.degrees)}


def feasible_degrees(k: int, N: int) -> FeasibleDegrees:
    """All d in [1, k(N-k)] with k | (k-2)d and (N-k) | 2d.

    For k = 3 this is exactly: 3 | d, (N-3) | 2d, d <= 3(N-3).
    """
    if k < 2 or N <= k:
        raise ValueError(f"need k >= 2 and N > k, got ({k},{N})")
    total = k * (N - k)
    degs = tuple(
        d for d in range(1, total + 1) if ((k - 2) * d) % k == 0 and (2 * d) % (N - k) == 0
    )
    return FeasibleDegrees(k, N, total, degs)


@dataclass(frozen=True)
class DegreeWitness:
    """Why degree d is admissible: the two rectangles and divisibilities."""

    k: int
    N: int
    d: int
    #: rectangle over the position factor: sides sorted ascending
    position_rectangle: tuple[int, int]
    #: rectangle over the column factor: sides sorted ascending
    column_rectangle: tuple[int, int]
    witnesses: tuple[str, str]

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "N": self.N,
            "d": self.d,
            "position_rectangle": list(self.position_rectangle),
            "column_rectangle": list(self.column_rectangle),
            "witnesses": list(self.witnesses),
        }


def cauchy_degree_witness(k: int, N: int, d: int) -> DegreeWitness:
    """Explanation record for a feasible degree; raises if d is not feasible."""
    feas = feasible_degrees(k, N)
    if d not in feas.degrees:
        raise ValueError(f"degree {d} is not feasible for ({k},{N})")
    r1 = tuple(sorted((k, (k - 2) * d // k)))
    r2 = tuple(sorted((N - k, 2 * d // (N - k))))
    w = (
        f"{k} | {(k - 2) * d}",
        f"{N - k} | {2 * d}",
    )
    return DegreeWitness(k, N, d, r1, r2, w)
