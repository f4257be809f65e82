"""Factor-pattern bookkeeping: base table, coarsenings, derivation steps."""

import pytest

from blockhess.degree import feasible_degrees
from blockhess.irreducibility import (
    FactorPattern,
    InconsistentPatterns,
    KnownFactorTable,
    canonical_key,
    coarsenings,
    ensure,
    irreducible_verdict,
    pattern_sources,
    run_schedule,
    skew_pair_factors,
)


def test_canonical_key_folds_duality():
    assert canonical_key(4, 7) == canonical_key(3, 7)
    assert canonical_key(3, 6) == (3, 6)
    assert canonical_key(5, 8) == (3, 8)


def test_skew_pair_factors():
    # k = 2 at even N: fourth power of the half-degree factor; odd N or
    # tiny N carries no factorization (the determinant vanishes or is trivial)
    assert skew_pair_factors(4) == (1, 1, 1, 1)
    assert skew_pair_factors(6) == (2, 2, 2, 2)
    assert skew_pair_factors(8) == (3, 3, 3, 3)
    assert skew_pair_factors(7) is None
    assert skew_pair_factors(3) is None
    assert sum(skew_pair_factors(8)) == 2 * 6  # total degree k(N-k)


def test_seeded_table_contains_base_cases():
    table = KnownFactorTable.seeded()
    assert table.lookup(3, 6) == (3, 3, 3)
    assert table.lookup(3, 7) == (6, 6)
    assert table.lookup(3, 9) == (18,)
    assert table.lookup(4, 8) == (16,)
    assert table.lookup(4, 9) == (20,)
    assert table.lookup(5, 10) == (25,)
    assert table.lookup(7, 14) == (49,)
    # duality fold
    assert table.lookup(4, 7) == (6, 6)
    assert table.lookup(6, 9) == (18,)


def test_coarsenings():
    cs = coarsenings(FactorPattern((2, 1, 1), "test"))
    assert (1, 1, 2) in cs
    assert (4,) in cs
    assert (2, 2) in cs
    assert (1, 3) in cs
    assert all(sum(c) == 4 for c in cs)
    with pytest.raises(ValueError):
        FactorPattern((2, 0), "test")


def test_irreducible_verdict_intersects_patterns():
    # (3, 8): only feasible degree is 15 = total, so the empty pattern set
    # already forces irreducibility
    v = irreducible_verdict(3, 8, [])
    assert v.irreducible is True
    assert v.feasible == (15,)
    # (3, 6) not forced without patterns: degrees 3, 6, 9 all feasible
    v = irreducible_verdict(3, 6, [])
    assert v.irreducible is False
    assert (3, 3, 3) in v.candidates and (9,) in v.candidates
    d = v.to_json_dict()
    assert d["k"] == 3 and "feasible_degrees" in d
    # a pattern with the wrong total is rejected outright
    with pytest.raises(ValueError):
        irreducible_verdict(3, 8, [FactorPattern((7, 9), "test")])
    # InconsistentPatterns is the (defensive) empty-intersection signal and
    # remains an ordinary ValueError to callers
    assert issubclass(InconsistentPatterns, ValueError)
    # a pattern that rules everything but the full degree out
    v = irreducible_verdict(3, 8, [FactorPattern((7, 8), "test")])
    assert v.irreducible is True


def test_ensure_base_and_formula_cases():
    table = KnownFactorTable.seeded()
    rec = ensure(table, 3, 6)
    assert rec.status == "base" and rec.factors == (3, 3, 3)
    rec = ensure(table, 2, 7)
    assert rec.status == "zero"  # odd N, skew pairing: determinant vanishes
    rec = ensure(table, 2, 8)
    assert rec.status == "formula"
    assert rec.factors == (3, 3, 3, 3)


def test_ensure_derives_3_11():
    table = KnownFactorTable.seeded()
    rec = ensure(table, 3, 11)
    assert rec.status in ("irreducible", "undecided") or rec.factors is not None
    assert rec.verdict is not None
    assert rec.verdict.irreducible is not None  # decided one way or the other
    # the verdict's factor multiset must be one of the feasible splittings
    feas = feasible_degrees(3, 11)
    if rec.factors is not None:
        assert all(d in feas.degrees for d in rec.factors) or rec.factors == (feas.total,)


@pytest.mark.parametrize("k,N_max", [(3, 14), (4, 12)])
def test_run_schedule_decides_every_case(k, N_max):
    records = run_schedule(k, N_max)
    assert records
    for rec in records:
        assert rec.status != "undecided", (rec.k, rec.N, rec.note)
        d = rec.to_json_dict()
        assert d["status"] == rec.status


def test_run_schedule_5_11_uses_two_patterns():
    records = run_schedule(5, 11)
    rec = next(r for r in records if (r.k, r.N) == (5, 11))
    assert rec.status != "undecided"


def test_pattern_sources_exist_for_embeddable_shapes():
    table = KnownFactorTable.seeded()
    pats = pattern_sources(table, 3, 12)
    assert pats  # at least one product specialization applies
    for p in pats:
        assert p.total() == 3 * 9
    # the (3,6)+(3,9) pair embedding is among them
    assert any(p.degrees == (3, 3, 3, 18) for p in pats)
