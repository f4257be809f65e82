"""Polynomial and prime-field layer: arithmetic laws, interpolation, and
the repeated-root detectors that the cube/square checks rely on."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockhess.ring import (
    MultiPoly,
    UniPoly,
    lagrange_interpolate_mod,
    prime_for_trial,
    scalar_from_string,
    scalar_to_string,
    uni_root_structure,
    uni_root_structure_mod,
)


def small_poly(nvars=3, rng_terms=None):
    return st.dictionaries(
        st.tuples(*[st.integers(0, 3)] * nvars),
        st.integers(-9, 9),
        max_size=6,
    ).map(lambda d: MultiPoly(nvars, {k: Fraction(v) for k, v in d.items()}))


@given(small_poly(), small_poly(), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
@settings(max_examples=60)
def test_multipoly_ring_laws_at_points(f, g, pt):
    assert (f + g).eval(pt) == f.eval(pt) + g.eval(pt)
    assert (f - g).eval(pt) == f.eval(pt) - g.eval(pt)
    assert (f * g).eval(pt) == f.eval(pt) * g.eval(pt)


@given(small_poly(), st.lists(st.integers(0, 10**6), min_size=3, max_size=3))
@settings(max_examples=40)
def test_multipoly_eval_mod_matches_eval(f, pt):
    p = 2147483647
    assert f.eval_mod(pt, p) == f.eval(pt) % p


def test_multipoly_constructors_and_guards():
    x = MultiPoly.variable(0, 2)
    y = MultiPoly.variable(1, 2)
    f = x * x - y * MultiPoly.const(2, 3)
    assert f.eval([2, 1]) == 1
    assert MultiPoly.zero(2).is_zero()
    assert not f.is_zero()
    with pytest.raises(ValueError):
        MultiPoly(2, {(1, 0, 0): 1})
    with pytest.raises(ValueError):
        MultiPoly.variable(2, 2)


def test_multipoly_to_str_uses_names():
    x = MultiPoly.variable(0, 2)
    y = MultiPoly.variable(1, 2)
    s = (x * y - x).to_str(["u", "v"])
    assert "u" in s and "v" in s


def test_multipoly_substitute():
    x = MultiPoly.variable(0, 2)
    y = MultiPoly.variable(1, 2)
    f = x * x + y
    g = f.substitute(1, x + MultiPoly.const(2, 1))
    assert g.eval([3, 999]) == 9 + 3 + 1
    assert f.substitute(0, 2).eval([999, 5]) == 4 + 5


def test_unipoly_eval_and_monic():
    f = UniPoly([Fraction(2), Fraction(0), Fraction(4)])  # 2 + 4 s^2
    assert f.eval(Fraction(3)) == 2 + 36
    m = f.monic()
    assert m.coeffs[-1] == 1
    assert m.eval(Fraction(3)) * 4 == f.eval(Fraction(3))


def poly_from_roots(roots):
    f = UniPoly([Fraction(1)])
    for r in roots:
        f = f * UniPoly([Fraction(-r), Fraction(1)])
    return f


def test_uni_root_structure_detects_perfect_powers():
    cube = poly_from_roots([1, 1, 1, -2, -2, -2])
    g = uni_root_structure(cube, 3)
    assert g is not None
    assert g * g * g == cube.monic()

    square = poly_from_roots([2, 2, 5, 5])
    assert uni_root_structure(square, 2) is not None
    assert uni_root_structure(square, 3) is None

    not_cube = poly_from_roots([1, 1, 2, 2, 2, 3])
    assert uni_root_structure(not_cube, 3) is None

    # degree not divisible by r
    assert uni_root_structure(poly_from_roots([1, 2]), 3) is None


@pytest.mark.parametrize("trial", range(8))
def test_prime_for_trial_is_prime_and_distinct(trial):
    p = prime_for_trial(trial)
    assert p > 2**30
    assert all(p % q for q in range(2, 2000))
    if trial:
        assert p != prime_for_trial(trial - 1)


def test_lagrange_interpolation_round_trip():
    p = prime_for_trial(0)
    coeffs = [3, 0, 7, 1, p - 2, 4, 11]
    xs = list(range(len(coeffs)))
    ys = [sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p for x in xs]
    assert lagrange_interpolate_mod(xs, ys, p) == coeffs


def test_uni_root_structure_mod():
    p = prime_for_trial(1)
    # (s^2 + 3 s + 5)^3 mod p, coefficients from exact expansion
    base = UniPoly([Fraction(5), Fraction(3), Fraction(1)])
    cube = base * base * base
    coeffs = [int(c) % p for c in cube.coeffs]
    g = uni_root_structure_mod(coeffs, 3, p)
    assert g is not None
    assert g == [5, 3, 1]
    coeffs[0] = (coeffs[0] + 1) % p
    assert uni_root_structure_mod(coeffs, 3, p) is None


@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-7/2", Fraction(-7, 2)), ("0", 0)])
def test_scalar_string_round_trip(text, value):
    s = scalar_from_string(text)
    assert s == value
    assert scalar_from_string(scalar_to_string(s)) == s
