import pytest

from maxcurves import (
    CapError,
    artin_schreier_quotient,
    char2_chain_curve,
    count_projective_points,
    extension_count_prediction,
    fermat_quotient,
    geer_vlugt_curve,
    genus_from_count,
    hasse_weil_bounds,
    hermitian_canonical,
    hermitian_fermat,
    maximality_check,
    quotient_model_rational,
    singular_points,
)


HERMITIAN_COUNTS = {2: 9, 3: 28, 5: 126, 7: 344, 8: 513, 9: 730}


@pytest.mark.parametrize("sq,want", sorted(HERMITIAN_COUNTS.items()))
def test_hermitian_counts(sq, want):
    rep = count_projective_points(hermitian_canonical(sq))
    assert rep.total == want == sq**3 + 1
    assert rep.singular == 0
    assert rep.smooth + rep.singular == rep.total


@pytest.mark.parametrize("sq", [2, 3, 5])
def test_fermat_form_matches_canonical(sq):
    a = count_projective_points(hermitian_canonical(sq)).total
    b = count_projective_points(hermitian_fermat(sq)).total
    assert a == b


def test_hermitian_extension_count():
    rep = count_projective_points(hermitian_fermat(5), 2)
    assert rep.total == 126 == extension_count_prediction(25, 10, 2)
    rep9 = count_projective_points(hermitian_canonical(3), 2)
    assert rep9.total == extension_count_prediction(9, 3, 2)


def test_quotient_model_counts_with_branch_resolution():
    m = quotient_model_rational(5)
    r1 = count_projective_points(m)
    assert (r1.total, r1.singular, r1.smooth) == (49, 7, 42)
    assert r1.rational_branches == 14
    assert r1.resolved_total == 56 == 25 + 1 + 2 * 3 * 5
    r2 = count_projective_points(m, 2)
    assert r2.resolved_total == 476 == extension_count_prediction(25, 3, 2)
    m8 = quotient_model_rational(8)
    r3 = count_projective_points(m8)
    assert (r3.total, r3.singular) == (190, 19)
    assert r3.resolved_total == 209


def test_quotient_model_rational_singular_points_are_nodes():
    # the plane model of the degree-3 quotient carries rational nodes away
    # from the coordinate triangle; the triangle image points themselves
    # are not rational, and each node splits into two rational branches
    from maxcurves.counting import tangent_cone_data

    m = quotient_model_rational(5)
    sing = singular_points(m)
    assert len(sing) == 7
    assert (1, 1, 1) in sing
    for pt in sing:
        mult, ordinary, rational = tangent_cone_data(m.poly, pt)
        assert (mult, ordinary, rational) == (2, True, 2)


def test_smooth_models_have_no_singular_points():
    assert singular_points(hermitian_fermat(5)) == []
    assert singular_points(hermitian_fermat(5), 2) == []
    assert singular_points(hermitian_fermat(3), 3) == []
    assert singular_points(hermitian_canonical(5)) == []
    assert singular_points(hermitian_canonical(3), 2) == []


def test_envelope_singular_locus_is_the_triangle():
    from maxcurves import envelope_model

    sing = set(singular_points(envelope_model(5)))
    assert {(1, 0, 0), (0, 1, 0), (0, 0, 1)} <= sing


def test_family_counts():
    assert count_projective_points(geer_vlugt_curve(3, 4, 1)).total == 244
    assert count_projective_points(artin_schreier_quotient(5, 2)).total == 66
    assert count_projective_points(fermat_quotient(5, 2)).total == 36
    assert count_projective_points(char2_chain_curve(4)).total == 33
    assert count_projective_points(char2_chain_curve(8)).total == 257


def test_genus_from_count():
    assert genus_from_count(126, 25) == 10
    assert genus_from_count(244, 81) == 9 == (3 - 1) * 9 // 2
    assert genus_from_count(66, 25) == 4 == (5 - 1) ** 2 // 4
    with pytest.raises(ValueError):
        genus_from_count(127, 25)
    with pytest.raises(ValueError):
        genus_from_count(126, 24)


def test_hasse_weil_bounds():
    # 25 + 1 - 2*3*5 = -4, clamped at 0 like every negative lower bound
    assert hasse_weil_bounds(25, 3) == (0, 56)
    assert hasse_weil_bounds(25, 1) == (16, 36)
    assert hasse_weil_bounds(25, 0) == (26, 26)
    assert hasse_weil_bounds(64, 9) == (0, 209)
    with pytest.raises(ValueError):
        hasse_weil_bounds(24, 1)


def test_maximality_verdicts():
    herm = count_projective_points(hermitian_canonical(5))
    assert maximality_check(herm, 10).verdict == "maximal"
    # against a smaller genus the count violates the Weil interval
    assert maximality_check(herm, 3).verdict == "inconsistent"
    # against a larger genus it sits strictly inside
    assert maximality_check(herm, 11).verdict == "neither"
    quot = count_projective_points(quotient_model_rational(5))
    assert maximality_check(quot, 3).verdict == "maximal"
    assert maximality_check(quot, 3).count_used == 56


def test_maximality_rejects_unresolved_and_k2():
    gv = count_projective_points(geer_vlugt_curve(3, 4, 1))
    assert gv.resolved_total is None  # non-ordinary point at infinity
    v = maximality_check(gv, 9)
    assert v.verdict == "inconsistent" and "singular" in v.reason
    herm2 = count_projective_points(hermitian_canonical(5), 2)
    assert maximality_check(herm2, 10).verdict == "inconsistent"


def test_extension_prediction_formula():
    assert extension_count_prediction(25, 10, 2) == 626 - 500 == 126
    assert extension_count_prediction(25, 3, 2) == 476
    assert extension_count_prediction(25, 3, 1) == 56
    assert extension_count_prediction(25, 10, 3) == 25**3 + 1 + 2 * 10 * 125


def test_partition_and_worker_determinism():
    model = hermitian_fermat(5)
    totals = {count_projective_points(model, 2, chunks=c).total for c in (1, 4, 9, 25)}
    assert totals == {126}
    assert count_projective_points(model, 2, workers=3).total == 126


def test_enum_cap():
    with pytest.raises(CapError):
        count_projective_points(hermitian_canonical(5), 9)


def test_bezout_sanity_line():
    # plane-model count never exceeds deg * (|F| + 1) + |F|
    for model, k in ((hermitian_canonical(5), 1), (quotient_model_rational(5), 1),
                     (hermitian_fermat(5), 2)):
        rep = count_projective_points(model, k)
        size = model.field.order**k
        assert rep.total <= model.degree * (size + 1) + size


def test_count_report_roundtrip():
    rep = count_projective_points(quotient_model_rational(5))
    d = rep.to_dict()
    assert d["total"] == 49 and d["resolved_total"] == 56
    assert len(d["singular_points"]) == 7


def test_genus_count_roundtrip_property():
    from hypothesis import given
    from hypothesis import strategies as st

    @given(st.integers(2, 50), st.integers(0, 500))
    def roundtrip(s, g):
        q = s * s
        n = extension_count_prediction(q, g, 1)
        assert n == q + 1 + 2 * g * s
        assert genus_from_count(n, q) == g

    roundtrip()
