from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from desargues.phi import dependency_determinant
from desargues.polyforms import (BinaryForm, MultiPoly, PolyError, binary_gcd, discriminant_cubic,
                                 ideal_combination, ideal_member_bounded, is_stable,
                                 multiple_root_profile, permutation_det, poly_det, root_profile)
from desargues.projective import Plane


# det of the 4x4 dependency matrix at alpha = (1,1,1,1), expanded independently (sympy) and frozen
DEP_DET_ONES = {(3, 0, 0, 0): -3, (2, 1, 0, 0): 3, (2, 0, 1, 0): 3, (2, 0, 0, 1): 3, (1, 2, 0, 0): 3,
                (1, 1, 1, 0): -6, (1, 1, 0, 1): -6, (1, 0, 2, 0): 3, (1, 0, 1, 1): -6, (1, 0, 0, 2): 3,
                (0, 3, 0, 0): -3, (0, 2, 1, 0): 3, (0, 2, 0, 1): 3, (0, 1, 2, 0): 3, (0, 1, 1, 1): -6,
                (0, 1, 0, 2): 3, (0, 0, 3, 0): -3, (0, 0, 2, 1): 3, (0, 0, 1, 2): 3, (0, 0, 0, 3): -3}


def z(i):
    return MultiPoly.var(4, i)


def test_det_identity():
    one, zero = MultiPoly.const(4, 1), MultiPoly(4)
    M = [[one if i == j else zero for j in range(4)] for i in range(4)]
    assert poly_det(M) == one


def test_det_diagonal():
    zero = MultiPoly(4)
    M = [[z(i) if i == j else zero for j in range(4)] for i in range(4)]
    assert poly_det(M) == z(0) * z(1) * z(2) * z(3)


def test_dependency_determinant_frozen():
    J = dependency_determinant(Plane([1, 1, 1, 1]), 5)
    assert J == MultiPoly(4, DEP_DET_ONES)


def test_dependency_determinant_two_expansions_agree():
    a = [1, 2, 3, 4]
    from desargues.conics import quadrangle_cones
    Q1, Q2 = quadrangle_cones(5)
    rows = [[MultiPoly.const(4, x) for x in a], [z(k) * a[k] for k in range(4)],
            [sum((z(c) * Q1[r][c] for c in range(4) if Q1[r][c]), MultiPoly(4)) for r in range(4)],
            [sum((z(c) * Q2[r][c] for c in range(4) if Q2[r][c]), MultiPoly(4)) for r in range(4)]]
    assert poly_det(rows) == permutation_det(rows)


@given(st.lists(st.integers(-5, 5), min_size=9, max_size=9))
def test_poly_det_matches_permutation_sum_3x3(entries):
    vs = [MultiPoly.var(3, k) for k in range(3)]
    M = [[vs[(r + c) % 3] * entries[3 * r + c] + entries[(3 * r + c + 1) % 9] for c in range(3)]
         for r in range(3)]
    assert poly_det(M) == permutation_det(M)


def test_gcd_of_squarefree_sextic_and_derivative():
    f = BinaryForm([1, 0, 0, 0, 0, -1, 0])
    assert binary_gcd(f, f.d0()).degree == 0


def test_gcd_monomials():
    f = BinaryForm([0, 0, 1, 0])       # t0 t1^2 (coefficient k sits on t0^(d-k) t1^k)
    g = BinaryForm([0, 1, 0, 0])       # t0^2 t1
    assert binary_gcd(f, g).coeffs == (0, 1, 0)


def test_gcd_idempotent():
    f = BinaryForm([2, -4, 6, 0])
    assert binary_gcd(f, f).coeffs == f.normalized().coeffs


def test_profile_j2():
    prof = multiple_root_profile(BinaryForm([1, 0, 0, 0, -1, 0, 0]))
    assert [(tuple(r), m) for r, m in prof] == [((0, 1), 2)]


def test_profile_triple_triple():
    # (t0 - t1)^3 t1^3
    f = BinaryForm([0, 0, 0, 1, -3, 3, -1])
    prof = multiple_root_profile(f)
    got = sorted(((Fraction(r[0]), Fraction(r[1])), m) for r, m in prof)
    assert got == sorted([((Fraction(1), Fraction(1)), 3), ((Fraction(1), Fraction(0)), 3)])


def test_profile_j5_empty():
    assert len(multiple_root_profile(BinaryForm([1, 0, 0, 0, 0, -1, 0]))) == 0


@pytest.mark.parametrize("coeffs,expected", [
    ([1, 0, 0, 0, 0, -1, 0], True),          # j5
    ([0, 0, 0, 1, 0, 0, 0], False),          # t0^3 t1^3
    ([0, 1, 0, 0, -1, 0, 0], True),          # j3
    ([0, 0, 0, 0, 0, 0, 1], False),          # 6-fold root
])
def test_stability(coeffs, expected):
    assert is_stable(BinaryForm(coeffs)) is expected


@pytest.mark.parametrize("c,expected", [((1, 0, 0, -1), -27), ((0, 1, 0, 0), 0), ((1, 0, -3, -2), 0)])
def test_discriminant_cubic(c, expected):
    assert discriminant_cubic(c) == expected


def test_ideal_member_explicit_multiple():
    L = MultiPoly.power_sum([1, 1, 1, 1], 1)
    Q = MultiPoly.power_sum([1, 1, 1, 1], 2)
    A, B = ideal_member_bounded(z(0) * L, L, Q)
    assert A == z(0) and B.is_zero()


def test_ideal_non_member():
    L = MultiPoly.power_sum([1, 1, 1, 1], 1)
    Q = MultiPoly.power_sum([1, 1, 1, 1], 2)
    assert ideal_member_bounded(z(0) ** 3, L, Q) is None


def test_non_member_cross_check_at_common_zero():
    # (1, w, w^2, 0) with w a primitive cube root of unity lies on L and Q; z1^3 = 1 there
    import cmath
    w = cmath.exp(2j * cmath.pi / 3)
    p = [1, w, w * w, 0]
    assert abs(sum(p)) < 1e-12 and abs(sum(x * x for x in p)) < 1e-12
    assert abs(p[0] ** 3) == 1


def test_congruence_member_at_1234():
    a = [1, 2, 3, 4]
    J = dependency_determinant(Plane(a), 5)
    T = J + MultiPoly.power_sum(a, 3) * (2 * sum(a))
    res = ideal_member_bounded(T, MultiPoly.power_sum(a, 1), MultiPoly.power_sum(a, 2))
    assert res is not None


def test_ideal_combination_reexpands():
    a = [2, -1, 3, 5]
    L, Q = MultiPoly.power_sum(a, 1), MultiPoly.power_sum(a, 2)
    T = (z(0) * z(1) + z(2) * z(3) * 3) * L + (z(3) - z(0)) * Q
    A, B = ideal_combination(T, [L, Q], [[2], [1]])
    assert A * L + B * Q == T


@given(st.lists(st.integers(-9, 9), min_size=7, max_size=7))
def test_squarefree_iff_empty_profile_iff_constant_gcd(c):
    f = BinaryForm(c)
    assume(not f.is_zero())
    g = binary_gcd(f.d0(), f.d1())
    squarefree = g.degree == 0
    assert squarefree == (len(multiple_root_profile(f)) == 0)


@given(st.lists(st.integers(-6, 6), min_size=4, max_size=4), st.integers(-5, 5), st.integers(1, 5))
def test_square_factor_roots_are_multiple(c, p, q):
    f = BinaryForm(c)
    assume(not f.is_zero())
    h = BinaryForm([p, -q])   # root (q:p) in (t0:t1)
    F = f * h * h
    prof = multiple_root_profile(F)
    assert any(r[0] * p - r[1] * q == 0 and m >= 2 for r, m in prof)


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_cubic_discriminant_vs_profile(c):
    assume(any(c))
    f = BinaryForm(c)
    has_multiple = len(multiple_root_profile(f)) > 0
    assert (discriminant_cubic(c) == 0) == has_multiple


@pytest.mark.parametrize("k", range(4))
def test_monomial_cubics(k):
    c = [0, 0, 0, 0]
    c[k] = 1
    assert discriminant_cubic(c) == 0 and len(multiple_root_profile(BinaryForm(c))) > 0


def test_root_profile_exact_over_extension():
    # t0^2 - 2 t1^2 has roots (sqrt2 : 1) and (-sqrt2 : 1)
    prof = root_profile(BinaryForm([1, 0, -2]))
    assert len(prof) == 2 and all(m == 1 for _, m in prof)
    for r, _ in prof:
        assert r[0] * r[0] - 2 * r[1] * r[1] == 0


def test_substitute_composes():
    f = BinaryForm([1, 2, 0, -3])
    M = [[1, 2], [0, 1]]
    N = [[1, 0], [3, 1]]
    MN = [[M[0][0] * N[0][0] + M[0][1] * N[1][0], M[0][0] * N[0][1] + M[0][1] * N[1][1]],
          [M[1][0] * N[0][0] + M[1][1] * N[1][0], M[1][0] * N[0][1] + M[1][1] * N[1][1]]]
    # f(M N t) = (f o M)(N t)
    assert f.substitute(M).substitute(N) == f.substitute(MN)


def test_zero_form_errors():
    with pytest.raises(PolyError):
        is_stable(BinaryForm([0] * 7))
