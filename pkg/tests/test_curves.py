import random

import pytest

from maxcurves import (
    ProjMatrix,
    TruncSeries,
    apply_coord_change,
    artin_schreier_quotient,
    branch_expansion_check,
    branch_series,
    build_field,
    char2_chain_curve,
    cube_cover_identity,
    embed,
    envelope_model,
    fermat_quotient,
    find_root_of_unity,
    frame_matrix,
    frame_parameter,
    frame_scalars,
    geer_vlugt_curve,
    hermitian_canonical,
    hermitian_fermat,
    quotient_model_rational,
    quotient_plane_model,
)
from maxcurves.curves import cyclic_poly, envelope_affine_relation, fermat_poly, identity_matrix


def test_hermitian_models_structure():
    h = hermitian_canonical(5)
    assert h.degree == 6 and len(h.poly.terms) == 3
    f = hermitian_fermat(5)
    assert f.poly.terms == {(6, 0, 0): 1, (0, 6, 0): 1, (0, 0, 6): 1}
    assert h.expected_genus == f.expected_genus == 10


def test_envelope_model_structure():
    m = envelope_model(5)
    assert m.degree == 12
    assert len(m.poly.terms) == 6
    minus2 = m.field.neg_i(2)
    assert sorted(m.poly.terms.values()).count(1) == 3
    assert list(m.poly.terms.values()).count(minus2) == 3
    with pytest.raises(ValueError):
        envelope_model(8)  # characteristic 2


def test_rotation_symmetry():
    assert envelope_model(5).poly.cyclic_shift() == envelope_model(5).poly
    fp = quotient_plane_model(5)
    assert fp.poly.cyclic_shift() == fp.poly


def test_diagonal_action_weights():
    # diag(c, c^s, 1) with c of order q-s+1 scales the envelope by c^(2s)
    # and the smooth cyclic model by c^s, as exact polynomial identities
    sq = 5
    F = build_field(5, 6)
    lam = find_root_of_unity(F, 21).value
    lam_s = F.pow_i(lam, sq)
    env = envelope_model(sq, build_field(5, 2)).poly.map_coefficients(
        embed(build_field(5, 2), F))
    assert env.compose_diag(lam, lam_s, 1) == env.scale(F.pow_i(lam, 2 * sq))
    cyc = cyclic_poly(sq, F)
    assert cyc.compose_diag(lam, lam_s, 1) == cyc.scale(F.pow_i(lam, sq))


def test_frame_matrix_det_identity_many_roots():
    # the determinant identity holds for every root of the frame polynomial
    from maxcurves.fields import FPoly, poly_roots

    checked = 0
    for sq, field in ((5, build_field(5, 3)), (8, build_field(2, 9))):
        f = FPoly(field, [1, 1] + [0] * (sq - 1) + [1])
        for a, _ in poly_roots(f):
            det = frame_matrix(a, sq).det()
            assert ((a + 1) ** 3) * det == (a * a + a + 1) ** 3
            checked += 1
    assert checked == 6 + 9


def test_frame_matrix_rejects_singular():
    F25 = build_field(5, 2)
    eps = find_root_of_unity(F25, 3)  # eps^2 + eps + 1 = 0
    with pytest.raises(ValueError):
        frame_matrix(eps, 5)


def test_composition_reaches_fermat_form():
    # composing the cyclic model with the frame matrix is exactly a3 times
    # the Fermat form, since the two other frame sums vanish
    for sq in (5, 8):
        a = frame_parameter(sq)
        g = cyclic_poly(sq, a.field)
        comp = g.compose_linear(frame_matrix(a, sq))
        _, _, a3 = frame_scalars(a, sq)
        assert comp.proportional_to(fermat_poly(sq, a.field)) == a3


def test_envelope_composition_gives_degree_2s2_model():
    # pulling the envelope model through the frame matrix over F_{q^3}
    # yields a degree-2(s+1) plane model there
    sq = 5
    Fq3 = build_field(5, 6)
    a = embed(build_field(5, 3), Fq3)(frame_parameter(sq))
    env = envelope_model(sq, Fq3)
    moved = apply_coord_change(env, frame_matrix(a, sq))
    assert moved.degree == 2 * (sq + 1)
    assert moved.poly.terms  # nonzero


def test_apply_coord_change_identity_and_degree():
    model = hermitian_canonical(5)
    same = apply_coord_change(model, identity_matrix(model.field))
    assert same.poly == model.poly
    F = model.field
    mat = ProjMatrix(F, [[1, 2, 0], [0, 1, 0], [3, 0, 1]])
    moved = apply_coord_change(model, mat)
    assert moved.degree == model.degree
    with pytest.raises(ValueError):
        apply_coord_change(model, ProjMatrix(F, [[1, 0, 0], [1, 0, 0], [0, 0, 1]], check=False))


def test_quotient_model_rational_sq5():
    m = quotient_model_rational(5)
    assert m.field.order == 25
    assert m.degree == 6
    assert m.expected_genus == 3
    # every stored coefficient is fixed by the q-power Frobenius
    for c in m.poly.terms.values():
        assert m.field.frob_i(c, 2) == c


def test_quotient_model_frobenius_twist_before_scaling():
    # the unscaled composition satisfies coeff^q = a^-(s+1) coeff
    sq = 5
    Fq3 = build_field(5, 6)
    a = embed(build_field(5, 3), Fq3)(frame_parameter(sq))
    gprime = quotient_plane_model(sq, Fq3).poly.compose_linear(frame_matrix(a, sq))
    twist = (a ** (sq + 1)).inverse().value
    for c in gprime.terms.values():
        assert Fq3.frob_i(c, 2) == Fq3.mul_i(twist, c)


def test_quotient_model_rational_sq8():
    m = quotient_model_rational(8)
    assert m.field.order == 64
    assert m.degree == 9
    assert m.expected_genus == 9


def test_quotient_plane_model_divisibility_guard():
    with pytest.raises(ValueError):
        quotient_plane_model(7)  # 7 = 1 (mod 3)
    with pytest.raises(ValueError):
        quotient_model_rational(3)  # 3 = 0 (mod 3)


def test_constructors_reject_wrong_characteristic():
    wrong = build_field(2, 6)
    with pytest.raises(ValueError):
        quotient_plane_model(5, wrong)
    with pytest.raises(ValueError):
        artin_schreier_quotient(5, 2, wrong)
    with pytest.raises(ValueError):
        fermat_quotient(5, 2, wrong)
    with pytest.raises(ValueError):
        char2_chain_curve(4, build_field(5, 2))


def test_cube_cover_identity():
    assert cube_cover_identity(5, build_field(5, 2))
    assert cube_cover_identity(8, build_field(2, 6))
    with pytest.raises(ValueError):
        cube_cover_identity(5, build_field(5, 1))  # no cube root of unity
    with pytest.raises(ValueError):
        cube_cover_identity(8, build_field(3, 2))  # characteristic 3


def test_branch_series_structure():
    x, y = branch_series(5, 120)
    assert x.valuation() == 2
    assert y.valuation() == 10
    support = [i for i, c in enumerate(y.coeffs) if c]
    assert all((i - 10) % 21 == 0 for i in support)
    # the solved coefficients: 1, 2, 1 at orders 10, 31, 52
    assert y.coeffs[10] == 1 and y.coeffs[31] == 2 and y.coeffs[52] == 1


def test_branch_expansion_check():
    assert branch_expansion_check(5, 120)
    assert branch_expansion_check(7, 200)
    with pytest.raises(ValueError):
        branch_expansion_check(5, 10)  # truncation too small
    with pytest.raises(ValueError):
        branch_expansion_check(8, 120)  # even characteristic


def test_rotated_branch_valuations():
    # rotating the solved branch through the coordinate 3-cycle gives the
    # leading valuation pattern of the coordinate functions at the other
    # two double points: div(x) = (2s-2)P2 + 2P3 - 2s P1 and
    # div(y) = 2s P3 - (2s-2)P1 - 2 P2
    sq = 5
    x, y = branch_series(sq, 120)
    vx, vy = x.valuation(), y.valuation()
    assert (vx, vy) == (2, 2 * sq)
    # at P1 the affine functions become 1/y and x/y
    assert (-vy, vx - vy) == (-2 * sq, -(2 * sq - 2))
    # at P2 they become y/x and 1/x
    assert (vy - vx, -vx) == (2 * sq - 2, -2)
    # both divisors have degree zero
    assert (2 * sq - 2) + 2 - 2 * sq == 0
    assert 2 * sq - (2 * sq - 2) - 2 == 0


def test_unit_coefficient_series_fails_the_relation():
    # the series with every coefficient 1 on the branch support does not
    # solve the curve: the order-62 coefficient comes out -3, and the true
    # branch needs a 2 at order 31
    p, n = 5, 120
    x = TruncSeries.monomial(p, n, 2)
    ycs = [0] * (n + 1)
    e = 10
    while e <= n:
        ycs[e] = 1
        e += 21
    rel = envelope_affine_relation(x, TruncSeries(p, n, ycs), 1)
    assert rel.first_nonzero() == 62
    assert rel.coeffs[62] == (-3) % 5


def test_geer_vlugt_curve():
    m = geer_vlugt_curve(3, 4, 1)
    assert m.field.order == 81
    assert m.degree == 10
    assert m.expected_genus == 9
    b = m.field.neg_i(m.poly.terms[(10, 0, 0)])
    assert m.field.add_i(m.field.pow_i(b, 9), b) == 0 and b != 0
    with pytest.raises(ValueError):
        geer_vlugt_curve(3, 5, 1)  # odd m
    with pytest.raises(ValueError):
        geer_vlugt_curve(3, 4, 3)  # r > m/2


def test_artin_schreier_and_fermat_families():
    m = artin_schreier_quotient(5, 2)
    assert m.expected_genus == 4  # (s-1)^2/4
    assert m.degree == 5
    f = fermat_quotient(5, 2)
    assert f.expected_genus == 1
    # the two genus formulas agree: (s-1)(s-3)/8 = 1 for s = 5
    assert (5 - 1) * (5 - 3) // 8 == f.expected_genus
    with pytest.raises(ValueError):
        artin_schreier_quotient(5, 4)  # 4 does not divide 6
    herm = artin_schreier_quotient(5, 1)
    assert herm.expected_genus == 10


def test_char2_chain_curve():
    m = char2_chain_curve(4)
    assert m.expected_genus == 2
    assert m.degree == 5
    assert (0, 2, 3) in m.poly.terms and (0, 1, 4) in m.poly.terms
    assert (0, 4, 1) not in m.poly.terms  # the degree-s head is not included
    with pytest.raises(ValueError):
        char2_chain_curve(9)


def test_trunc_series_arithmetic():
    s = TruncSeries(5, 10, [0, 1, 2])
    assert (s * s).coeffs[:5] == [0, 0, 1, 4, 4]
    assert s.pow(2).coeffs == (s * s).coeffs
    assert s.p_power(1).coeffs[5] == 1 and s.p_power(1).coeffs[10] == 2
    assert (s - s).is_zero()
    assert s.valuation() == 1


def test_homogeneity_enforced():
    from maxcurves.curves import HomPoly3

    F = build_field(5, 1)
    with pytest.raises(ValueError):
        HomPoly3.from_int_coeffs(F, {(1, 0, 0): 1, (2, 0, 0): 1})


def test_point_count_invariance_under_coordinates():
    from maxcurves.counting import count_projective_points

    rng = random.Random(23)
    model = hermitian_canonical(3)
    base = count_projective_points(model).total
    F9 = model.field
    for _ in range(4):
        rows = [[F9.random_element(rng) for _ in range(3)] for _ in range(3)]
        try:
            mat = ProjMatrix(F9, rows)
        except ValueError:
            continue
        assert count_projective_points(apply_coord_change(model, mat)).total == base
