from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from desargues import linalg
from desargues.conics import (CONES_1, CONES_5, REFERENCE_CONIC, ConicError, ConicParametrization,
                              admissible, apolar, conic_rank, conic_through, configurations_equivalent,
                              phi_from_configuration, quadrangle_pencil, quadratic_form,
                              quartic_to_conic, reconstruct_configuration, reference_point,
                              von_staudt_conic)
from desargues.phi import moduli_equal
from desargues.polyforms import BinaryForm, BinomialQuartic
from desargues.projective import Plane, build_configuration, check_10_3, pair_label

from conftest import planes, rationals

F3 = BinomialQuartic.from_form(BinaryForm([2, 0, 6, 4, 0]))
G3 = BinomialQuartic.from_form(BinaryForm([0, 0, Fraction(1, 16), 0, 0]))
J3 = BinaryForm([0, 1, 0, 0, -1, 0, 0])


def bq(*a):
    return BinomialQuartic([Fraction(x) for x in a])


@pytest.mark.parametrize("alpha,rank", [((1, 2, 3, 4), 3), ((1, 1, 1, -3), 2), ((1, 2, 0, 0), 1),
                                        ((1, 0, 0, 0), 0), ((3, 0, 5, 0), 1), ((2, 0, 1, 4), 2)])
def test_von_staudt_rank(alpha, rank):
    P = Plane(alpha)
    assert von_staudt_conic(P)[1] == rank == 3 - P.kind()


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4).filter(any))
def test_rank_plus_kind_is_three(a):
    P = Plane(a)
    assert von_staudt_conic(P)[1] + P.kind() == 3


@given(rationals, rationals, rationals, rationals, rationals)
def test_hankel_conic_apolar_to_reference(a0, a1, a2, a3, a4):
    A = [[a0, a1, a2], [a1, a2, a3], [a2, a3, a4]]
    assert apolar(A, REFERENCE_CONIC)


def test_smooth_conic_not_self_apolar():
    assert not apolar(REFERENCE_CONIC, REFERENCE_CONIC)
    B = [[Fraction(1), 0, 0], [0, Fraction(2), 0], [0, 0, Fraction(-5)]]
    assert not apolar(B, B)


def test_apolar_is_asymmetric():
    A = [[Fraction(1), 0, 0], [0, 0, 0], [0, 0, 0]]
    B = [[Fraction(0), 0, 0], [0, Fraction(1), 0], [0, 0, Fraction(1)]]
    # tr(A adj B) = 1, tr(B adj A) = 0
    assert not apolar(A, B) and apolar(B, A)


@pytest.mark.parametrize("Q", list(CONES_5) + list(CONES_1))
def test_cones_apolar_to_diagonal_quadric(Q):
    D = [[Fraction(i + 1) if i == j else Fraction(0) for j in range(4)] for i in range(4)]
    assert apolar(Q, D)


def test_apolar_rejects_zero():
    with pytest.raises(ConicError):
        apolar(REFERENCE_CONIC, [[0] * 3 for _ in range(3)])


def test_quartic_to_conic_t0_fourth():
    assert quartic_to_conic(bq(1, 0, 0, 0, 0)) == [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
    # divisor 4*(0:1) maps to (0:0:1), where x0 vanishes
    assert quadratic_form(quartic_to_conic(bq(1, 0, 0, 0, 0)), reference_point(0, 1)) == 0


def test_quartic_to_conic_f3():
    assert F3.a == (2, 0, 1, 1, 0)
    assert quartic_to_conic(F3) == [[2, 0, 1], [0, 1, 1], [1, 1, 0]]


def test_quartic_to_conic_zero():
    with pytest.raises(ConicError):
        quartic_to_conic(bq(0, 0, 0, 0, 0))


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4, unique=True))
def test_conic_through_divisor_of_quartic(roots):
    # quartic with roots (r : 1); the Hankel conic passes through their images and is
    # the only apolar conic doing so
    f = BinaryForm([1])
    for r in roots:
        f = f * BinaryForm([1, -r])
    C = quartic_to_conic(BinomialQuartic.from_form(f))
    pts = [reference_point(Fraction(r), Fraction(1)) for r in roots]
    assert all(quadratic_form(C, p) == 0 for p in pts)
    assert apolar(C, REFERENCE_CONIC)
    gens = conic_through(pts)
    assert len(gens) == 2
    # apolarity is one more linear condition on the pencil: solution space of dim 1
    adjS = linalg.adjugate(REFERENCE_CONIC)
    row = [linalg.trace(linalg.matmul(G, adjS)) for G in gens]
    assert row != [0, 0]


def test_quadrangle_cones_printed():
    assert CONES_5[0] == [[0, 1, 0, -1], [1, 0, -1, 0], [0, -1, 0, 1], [-1, 0, 1, 0]]
    with pytest.raises(ConicError, match="collapsed"):
        quadrangle_pencil(Plane([1, 1, 1, -3]), 5)


@given(planes(), st.integers(1, 5))
def test_quadrangle_cones_contain_base_points(P, i):
    cfg = build_configuration(P)
    pen = quadrangle_pencil(P, i)
    for j in range(1, 6):
        if j == i:
            continue
        x = cfg.ambient[pair_label((i, j))]
        assert all(quadratic_form(Q, x) == 0 for Q in pen.cones)


@given(planes(), st.integers(1, 5))
def test_quadrangle_conics_apolar_to_von_staudt(P, i):
    S, _ = von_staudt_conic(P)
    for q in quadrangle_pencil(P, i).conics:
        assert apolar(q, S)


def test_admissible_f3_g3():
    assert admissible(F3, G3)


def test_admissible_double_root_pencil():
    # a4 = 1 and g = b0 t0^4: the determinant cubic has a double root at (0:1)
    assert not admissible(bq(0, 0, 0, 0, 1), bq(3, 0, 0, 0, 0))


def test_admissible_dependent_rejected():
    with pytest.raises(ConicError):
        admissible(F3, F3)


def test_reconstruct_f3_g3_phi_is_j3():
    cfg = reconstruct_configuration(F3, G3)
    assert check_10_3(cfg.points, cfg.lines, allow_special=True)
    assert moduli_equal(phi_from_configuration(cfg, 5), J3)


def test_reconstruct_rejects_non_admissible():
    with pytest.raises(ConicError, match="4 simple points"):
        reconstruct_configuration(bq(0, 0, 0, 0, 1), bq(3, 0, 0, 0, 0))


@pytest.mark.parametrize("alpha", [(-6, 6, 5, 6), (-5, 9, -7, -1), (2, -3, 7, 11), (-2, 2, -2, -2)])
def test_reconstruct_round_trip(alpha):
    P = Plane(alpha)
    S, _ = von_staudt_conic(P)
    par = ConicParametrization(S)
    q1, q2 = quadrangle_pencil(P, 5).conics
    f = BinomialQuartic.from_form(par.pullback(q1))
    g = BinomialQuartic.from_form(par.pullback(q2))
    cfg = reconstruct_configuration(f, g)
    sigma = configurations_equivalent(build_configuration(P), cfg)
    assert sigma is not None and sigma(5) == 5


def test_configurations_not_equivalent():
    c1 = build_configuration(Plane([1, 2, 3, 4]))
    c2 = build_configuration(Plane([1, 2, 3, 5]))
    assert configurations_equivalent(c1, c2) is None


def test_conic_rank_of_reference():
    assert conic_rank(REFERENCE_CONIC) == 3
