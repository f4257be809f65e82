"""Degenerating frames, defining linear forms, their T -> 0 limits, and the
two-point tangency verification."""

import random
from fractions import Fraction

import pytest

from blockhess.certificates import load, to_array
from blockhess.exterior import ChartPoint, ExteriorArray, evaluate_form, gradient
from blockhess.hessian import assemble, assemble_dual, det_exact
from blockhess.multiindex import (
    NodeIndexSet,
    enumerate_indices,
    first_index,
    replace,
    sort_with_sign,
    star,
)
from blockhess.node_cusp import (
    DefiningForms,
    NodeConditionError,
    NodePointSpec,
    build_x_J_T,
    chart_point_at,
    cusp_membership,
    defining_forms_at,
    extra_equations,
    form_apply,
    form_eval_at_T,
    forms_span_equal,
    generic_node_membership,
    laurent_eval,
    limit_T0,
    render_laurent,
    star_coordinate_forms,
    verify_k4_tuple,
    verify_node_pair_k3,
)


def star_forms(k, N, Js):
    members = sorted(set().union(*(star(J, N) for J in Js)))
    return [{I: Fraction(1)} for I in members]


# ---------------------------------------------------------------------------
# Laurent scraps


def test_laurent_eval_and_render():
    lau = {1: Fraction(2), -1: Fraction(3), 0: Fraction(-1)}
    assert laurent_eval(lau, Fraction(2)) == 4 + Fraction(3, 2) - 1
    s = render_laurent(lau)
    assert "T" in s and "T^-1" in s
    assert render_laurent({}) == "0"
    assert render_laurent({0: Fraction(5)}) == "5"


# ---------------------------------------------------------------------------
# membership predicates


def test_membership_predicates():
    A = ExteriorArray(3, 6, {(2, 4, 6): 1, (3, 4, 5): 2})
    assert cusp_membership(A)
    A_nondeg = ExteriorArray(3, 6, {(3, 4, 5): 1, (2, 4, 6): 1, (1, 5, 6): 1})
    assert not cusp_membership(A_nondeg)  # det = 2, nonzero
    node = to_array(load("node-3-9"))
    assert generic_node_membership(node)
    spoiled = dict(node.coeffs)
    I, _ = sort_with_sign((1, 8, 9), 9)
    spoiled[I] = 1
    assert not generic_node_membership(ExteriorArray(3, 9, spoiled))


# ---------------------------------------------------------------------------
# the x(J, T) family


def test_frame_symbolic_matches_numeric():
    node = NodeIndexSet(4, 10, (2, 3, 8, 9))
    sym = build_x_J_T(NodePointSpec(node, None))
    t = Fraction(5)
    num = build_x_J_T(NodePointSpec(node, t))
    for p in range(4):
        for c in range(10):
            assert laurent_eval(sym[p][c], t) == num[p][c]
    # identity part and the pairing positions
    for p in range(4):
        assert num[p][p] == 1
    with pytest.raises(ValueError):
        NodePointSpec(node, Fraction(0))


def test_chart_point_at_strips_identity_columns():
    node = NodeIndexSet(3, 7, (2, 3, 6))
    X = chart_point_at(NodePointSpec(node, Fraction(2)))
    assert X.k == 3 and X.N == 7
    rows = build_x_J_T(NodePointSpec(node, Fraction(2)))
    assert [list(r[3:]) for r in rows] == [list(r) for r in X.X]
    with pytest.raises(ValueError):
        chart_point_at(NodePointSpec(node, None))


def test_form_value_exponents_follow_replacement_parity():
    # the chart-form coefficient at the replaced index r(P) scales as
    # T^{|J cap P| - |Jbar cap P|} relative to r(emptyset)
    from blockhess.node_cusp import _form_for_rows, _normalized, _pair_rows

    node = NodeIndexSet(4, 10, (2, 3, 8, 9))
    F_raw = _form_for_rows(_pair_rows(NodePointSpec(node, None)), 4, 10)
    IJ = set(node.J)
    for P, want in [((), 0), ((1,), -1), ((2,), 1), ((3,), 1), ((4,), -1), ((1, 2), 0)]:
        I, _s = replace(set(P), node)
        lau = F_raw[I]
        assert len(lau) == 1
        ((e, _c),) = lau.items()
        assert e == want, (P, e, want)
    _norm, power = _normalized(F_raw)
    assert power == len([p for p in range(1, 5) if p not in IJ])


def test_moving_forms_match_gradient_numerically():
    rng = random.Random(7)
    for k, N, J in ((3, 7, (5, 6, 7)), (4, 8, (1, 6, 7, 8))):
        node = NodeIndexSet(k, N, J)
        A = ExteriorArray(k, N, {I: rng.randint(-4, 4) for I in enumerate_indices(k, N)})
        t = Fraction(3)
        spec = NodePointSpec(node, t)
        X = chart_point_at(spec)
        from blockhess.node_cusp import _form_for_rows, _pair_rows

        rows = _pair_rows(spec)
        F_raw = _form_for_rows(rows, k, N)
        assert form_apply(form_eval_at_T(F_raw, t), A) == evaluate_form(A, X)
        grad = gradient(A, X)
        for p in range(1, k + 1):
            for tt in range(k + 1, N + 1):
                rrows = list(rows)
                rrows[p - 1] = [(tt, {0: Fraction(1)})]
                praw = _form_for_rows(rrows, k, N)
                got = form_apply(form_eval_at_T(praw, t), A) if praw else Fraction(0)
                assert got == grad[p - 1][tt - k - 1]


# ---------------------------------------------------------------------------
# defining forms and limits


@pytest.mark.parametrize(
    "k,N,J",
    [
        (3, 7, (5, 6, 7)),
        (4, 8, (5, 6, 7, 8)),
        (4, 8, (1, 6, 7, 8)),
        (4, 9, (6, 7, 8, 9)),
        (4, 9, (1, 7, 8, 9)),
        (4, 9, (4, 6, 7, 8)),
    ],
)
def test_limits_span_both_stars_when_meet_is_small(k, N, J):
    node = NodeIndexSet(k, N, J)
    forms = defining_forms_at(NodePointSpec(node, None))
    assert len(forms.moving) == k * (N - k) + 1
    assert isinstance(forms, DefiningForms)
    assert not any(forms.replaced)  # no k-2 replacement needed here
    lims = limit_T0(forms)
    assert len(lims) == 2 * (k * (N - k) + 1)
    assert forms_span_equal(lims, star_forms(k, N, [first_index(k, N), J]), k, N)


def test_limits_span_with_extras_at_meet_k_minus_2():
    node = NodeIndexSet(4, 8, (1, 2, 7, 8))
    extras = extra_equations(node)
    assert len(extras) == 4
    assert all(len(f) == 2 for f in extras)  # two-term sums
    forms = defining_forms_at(NodePointSpec(node, None))
    assert sum(forms.replaced) == 4
    lims = limit_T0(forms)
    target = star_forms(4, 8, [first_index(4, 8), node.J]) + list(extras)
    assert forms_span_equal(lims, target, 4, 8)


def test_star_coordinate_forms_helper():
    forms = star_coordinate_forms((1, 2, 3), 7)
    keys = {next(iter(f)) for f in forms}
    assert keys == star((1, 2, 3), 7)


def test_defining_forms_rejects_large_meet():
    with pytest.raises(ValueError):
        defining_forms_at(NodePointSpec(NodeIndexSet(3, 7, (1, 2, 7)), None))
    with pytest.raises(ValueError):
        extra_equations(NodeIndexSet(4, 8, (5, 6, 7, 8)))  # meet 0, not k-2


# ---------------------------------------------------------------------------
# node pair verification, k = 3


def test_verify_node_pair_frozen_report():
    A = to_array(load("node-3-9"))
    report = verify_node_pair_k3(A, completion_seed=0)
    assert report["pass"] is True
    assert report["k"] == 3 and report["N"] == 9
    assert report["free_coefficients"] == 9
    assert report["det_H0"] == -27556
    assert report["det_H1"] == -27556
    assert report["condition_i"] == "holds"
    assert report["condition_ii"] == {
        "block": "A23",
        "signs": {"B12": "+1", "B13": "-1", "B23": "+1"},
    }
    assert report["condition_iii"] == {
        "block": "A13",
        "signs": {"B12": "-1", "B13": "+1", "B23": "-1"},
    }
    assert report["condition_iv"]["derived"] == {
        "block": "A12",
        "signs": {"B12": "+1", "B13": "-1", "B23": "+1"},
    }
    assert report["condition_iv"]["literal_A23_holds"] is False


def test_verify_node_pair_seed_changes_completion_only():
    A = to_array(load("node-3-9"))
    r0 = verify_node_pair_k3(A, completion_seed=0)
    r1 = verify_node_pair_k3(A, completion_seed=1)
    assert r0["det_H0"] == r1["det_H0"]  # H0 does not depend on the seed
    assert r0["condition_ii"] == r1["condition_ii"]
    assert r1["pass"]


def test_verify_node_pair_rejects_zero_pattern_violation():
    A = to_array(load("node-3-9"))
    spoiled = dict(A.coeffs)
    I, _ = sort_with_sign((1, 8, 9), 9)
    spoiled[I] = 1
    with pytest.raises(NodeConditionError):
        verify_node_pair_k3(ExteriorArray(3, 9, spoiled), 0)


def test_verify_node_pair_rejects_wrong_shape():
    with pytest.raises(ValueError):
        verify_node_pair_k3(ExteriorArray(4, 10, {}), 0)
    with pytest.raises(ValueError):
        verify_node_pair_k3(ExteriorArray(3, 8, {}), 0)


def test_deleting_shared_coefficient_keeps_sides_in_sync():
    # conditions (ii)-(iv) equate coefficients read from two layouts; a
    # deleted coefficient disappears from both sides at once, so the
    # comparison stays consistent (zero matches zero)
    A = to_array(load("node-3-9"))
    coeffs = dict(A.coeffs)
    I, _ = sort_with_sign((1, 4, 9), 9)
    del coeffs[I]
    report = verify_node_pair_k3(ExteriorArray(3, 9, coeffs), 0)
    assert report["condition_ii"]["block"] == "A23"


# ---------------------------------------------------------------------------
# k = 4 tuple relation


def test_verify_k4_tuple_on_invertible_pair():
    A = to_array(load("invertible-4-8"))
    H0 = assemble(A)
    H1 = assemble_dual(A)
    assert verify_k4_tuple(H0, H1)
    assert det_exact(H0) != 0 and det_exact(H1) != 0
    # perturbing one matched entry pair breaks the relation
    rows = [list(r) for r in H1.rows]
    i = H1.index_of(1, 5)
    j = H1.index_of(2, 6)
    rows[i][j] += 1
    rows[j][i] += 1
    from blockhess.hessian import HessianMatrix

    assert not verify_k4_tuple(H0, HessianMatrix(4, 8, rows))
    # all-zero pair holds vacuously
    Z = HessianMatrix(4, 8, [[0] * 16 for _ in range(16)])
    assert verify_k4_tuple(Z, Z)
