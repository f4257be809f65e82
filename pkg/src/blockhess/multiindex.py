"""Combinatorics of k-element multiindices.

A multiindex is a strictly increasing tuple of k integers in [1, N]; it
labels one coordinate of a degree-k alternating array on an N-dimensional
space.  Everything downstream (arrays, Hessians, node constructions) is
phrased in terms of the two distinguished multiindices

    first_index(k, N) = (1, ..., k)          -- written If in comments
    last_index(k, N)  = (N-k+1, ..., N)      -- written Il in comments

and the sign bookkeeping of sorting tuples that may arrive out of order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

MultiIndex = tuple[int, ...]


class SignedIndex(NamedTuple):
    """A sorted multiindex together with the sign of the sort.

    ``sign`` is (-1)**tau where tau is the number of transpositions used
    to sort the originating tuple, or 0 if the tuple had a repeated entry
    (the corresponding alternating coordinate vanishes).
    """

    index: MultiIndex
    sign: int


def sort_with_sign(values: Iterable[int], N: int | None = None) -> SignedIndex:
    """Sort ``values`` and report the permutation sign.

    >>> sort_with_sign((2, 1, 3))
    SignedIndex(index=(1, 2, 3), sign=-1)
    >>> sort_with_sign((1, 2, 3)).sign
    1
    >>> sort_with_sign((4, 1, 4)).sign
    0
    """
    seq = tuple(values)
    if N is not None:
        for v in seq:
            if not 1 <= v <= N:
                raise ValueError(f"entry {v} out of range [1, {N}]")
    if len(set(seq)) != len(seq):
        return SignedIndex(tuple(sorted(seq)), 0)
    # Counting inversions pair-by-pair is O(n^2) but n = k <= 7 throughout.
    inversions = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inversions += 1
    return SignedIndex(tuple(sorted(seq)), -1 if inversions % 2 else 1)


def enumerate_indices(k: int, N: int) -> list[MultiIndex]:
    """All C(N,k) multiindices in lexicographic order.

    This is the canonical serialization order for array coordinates.

    >>> enumerate_indices(2, 3)
    [(1, 2), (1, 3), (2, 3)]
    """
    if not 1 <= k <= N:
        raise ValueError(f"need 1 <= k <= N, got k={k}, N={N}")
    return list(itertools.combinations(range(1, N + 1), k))


def first_index(k: int, N: int) -> MultiIndex:
    """The multiindex (1, ..., k)."""
    return tuple(range(1, k + 1))


def last_index(k: int, N: int) -> MultiIndex:
    """The multiindex (N-k+1, ..., N)."""
    return tuple(range(N - k + 1, N + 1))


def is_valid_index(I: MultiIndex, k: int, N: int) -> bool:
    return (
        len(I) == k
        and all(isinstance(v, int) and 1 <= v <= N for v in I)
        and all(I[i] < I[i + 1] for i in range(k - 1))
    )


def star(J: MultiIndex, N: int) -> set[MultiIndex]:
    """All multiindices differing from J in at most one position.

    Includes J itself; the count is 1 + k(N-k).

    >>> sorted(star((1, 2), 4))
    [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
    """
    k = len(J)
    if not is_valid_index(J, k, N):
        raise ValueError(f"invalid multiindex {J} for N={N}")
    out = {J}
    members = set(J)
    for j in J:
        for m in range(1, N + 1):
            if m not in members:
                out.add(tuple(sorted((set(J) - {j}) | {m})))
    return out


@dataclass(frozen=True)
class NodeIndexSet:
    """A k-subset J of If ∪ Il, with its complement Jbar inside If ∪ Il.

    Carries (k, N) context so that the replacement pairing between the
    first-block and last-block halves is well defined.  Requires N >= 2k
    so that If and Il are disjoint.
    """

    k: int
    N: int
    J: MultiIndex
    Jbar: MultiIndex = field(init=False)

    def __post_init__(self) -> None:
        If = set(first_index(self.k, self.N))
        Il = set(last_index(self.k, self.N))
        if If & Il:
            raise ValueError(f"need N >= 2k for disjoint end blocks, got k={self.k}, N={self.N}")
        if not is_valid_index(self.J, self.k, self.N):
            raise ValueError(f"invalid multiindex {self.J}")
        if not set(self.J) <= (If | Il):
            raise ValueError(f"J={self.J} not contained in {sorted(If | Il)}")
        object.__setattr__(self, "Jbar", tuple(sorted((If | Il) - set(self.J))))

    @property
    def in_first(self) -> tuple[int, ...]:
        """J ∩ If, sorted."""
        return tuple(v for v in self.J if v <= self.k)

    @property
    def in_last(self) -> tuple[int, ...]:
        """J ∩ Il, sorted."""
        return tuple(v for v in self.J if v > self.N - self.k)


def replacement_pairing(node: NodeIndexSet) -> dict[int, int]:
    """The pairing r -> s between If and the last block, determined by J.

    Elements of If ∩ J pair with elements of Il \\ J (these rows carry T in
    the node frame); elements of If \\ J pair with elements of Il ∩ J (the
    T^-1 rows).  Within each group the pairing preserves order.

    >>> replacement_pairing(NodeIndexSet(4, 10, (2, 3, 8, 9)))
    {1: 8, 2: 7, 3: 10, 4: 9}
    """
    k, N = node.k, node.N
    If = first_index(k, N)
    Il = set(last_index(k, N))
    f_in = [v for v in If if v in set(node.J)]
    f_out = [v for v in If if v not in set(node.J)]
    l_in = sorted(set(node.J) & Il)
    l_out = sorted(Il - set(node.J))
    if len(f_in) != len(l_out) or len(f_out) != len(l_in):
        raise AssertionError(f"group sizes disagree for J={node.J}")
    pairing: dict[int, int] = {}
    pairing.update(zip(f_in, l_out))
    pairing.update(zip(f_out, l_in))
    return {r: pairing[r] for r in If}


def replace(P: Iterable[int], node: NodeIndexSet) -> SignedIndex:
    """r(P): replace each p in P ⊆ If by its pairing target, sort with sign.

    >>> replace({1}, NodeIndexSet(4, 10, (2, 3, 8, 9)))
    SignedIndex(index=(2, 3, 4, 8), sign=-1)
    """
    Pset = set(P)
    if not Pset <= set(first_index(node.k, node.N)):
        raise ValueError(f"P={sorted(Pset)} not a subset of the first block")
    pairing = replacement_pairing(node)
    raw = tuple(pairing[p] if p in Pset else p for p in first_index(node.k, node.N))
    return sort_with_sign(raw, node.N)


def subsets_of_first(k: int) -> Iterator[tuple[int, ...]]:
    """All subsets of If = {1..k}, smallest first."""
    for r in range(k + 1):
        yield from itertools.combinations(range(1, k + 1), r)
