import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from desargues import linalg
from desargues.phi import (PhiError, clebsch_invariants, congruence_constant, cubic_congruence_check,
                           double_points, expected_congruence_constant, galois_invariant,
                           jacobian_pencil, moduli_equal, net_is_two_dimensional, net_restriction,
                           phi_sextic)
from desargues.polyforms import BinaryForm, BinomialQuartic, is_stable
from desargues.projective import Plane, ProjPoint, all_permutations, dual_image
from desargues.scalars import TENTH_ROOT_FIELD

from conftest import generic_planes, planes

J2 = BinaryForm([1, 0, 0, 0, -1, 0, 0])
J3 = BinaryForm([0, 1, 0, 0, -1, 0, 0])
J5 = BinaryForm([1, 0, 0, 0, 0, -1, 0])
F3 = BinaryForm([2, 0, 6, 4, 0])
G3 = BinaryForm([0, 0, Fraction(1, 16), 0, 0])


def test_jacobian_of_pure_powers():
    assert jacobian_pencil(BinaryForm([1, 0, 0, 0, 0]), BinaryForm([0, 0, 0, 0, 1])) == \
        BinaryForm([0, 0, 0, 16, 0, 0, 0])


def test_jacobian_f3_g3_is_j3():
    assert jacobian_pencil(F3, G3) == J3


def test_jacobian_dependent_rejected():
    with pytest.raises(PhiError):
        jacobian_pencil(F3, F3 * 3)


@given(st.lists(st.integers(-6, 6), min_size=5, max_size=5), st.lists(st.integers(-6, 6), min_size=5, max_size=5))
def test_jacobian_column_operation(a, b):
    f, g = BinaryForm(a), BinaryForm(b)
    if linalg.rank([list(a), list(b)]) < 2:
        return
    assert jacobian_pencil(f, f + g) == jacobian_pencil(f, g)


def test_jacobian_accepts_binomial_coordinates():
    assert jacobian_pencil(BinomialQuartic.from_form(F3), BinomialQuartic.from_form(G3)) == J3


def test_special_plane_double_root_at_s12():
    s = phi_sextic(Plane([1, -1, 2, 3]))
    assert len(s.double_roots) == 1
    assert s.double_points() == [ProjPoint([1, 1, 0, 0])]


def test_generic_plane_is_stable_squarefree():
    s = phi_sextic(Plane([1, 2, 3, 4]))
    assert s.stable and len(s.double_roots) == 0


def test_phi_rejects_degenerate():
    with pytest.raises(PhiError, match="degenerate"):
        phi_sextic(Plane([1, 1, 1, -3]))


def test_pi5_matches_j5():
    mu = TENTH_ROOT_FIELD.gen
    pi5 = Plane([TENTH_ROOT_FIELD(1), -mu, mu * mu, -mu * mu * mu])
    assert moduli_equal(phi_sextic(pi5), J5)


def test_congruence_constant_1234():
    P = Plane([1, 2, 3, 4])
    assert congruence_constant(P, 5) == -20 == expected_congruence_constant(P, 5)
    assert cubic_congruence_check(P, 1)


@given(planes(), st.integers(1, 5))
def test_congruence_all_quadrangles(P, i):
    assert cubic_congruence_check(P, i)


@pytest.mark.parametrize("alpha", [(1, 2, 3, 4), (1, 1, 1, 2)])
def test_net_restriction_proportional(alpha):
    cubic, phi = net_restriction(Plane(alpha))
    assert linalg.proportional(list(cubic.coeffs), list(phi.coeffs))


@given(planes())
def test_net_two_dimensional(P):
    assert net_is_two_dimensional(P)


@pytest.mark.parametrize("alpha,expected", [
    ((1, -1, 2, 3), [[1, 1, 0, 0]]),
    ((1, -1, -1, 3), [[1, 1, 0, 0], [1, 0, 1, 0]]),
    ((1, 2, 3, 4), []),
])
def test_double_points(alpha, expected):
    assert double_points(Plane(alpha)) == [ProjPoint(p) for p in expected]


def test_two_condition_plane_has_two_double_roots():
    s = phi_sextic(Plane([1, -1, -1, 3]))
    assert sorted(m for _, m in s.double_roots) == [2, 2]


def test_moduli_j2_vs_j3():
    assert not moduli_equal(J2, J3)


def test_moduli_scaling():
    assert moduli_equal(J5, J5 * 7)


@pytest.mark.parametrize("seed", range(5))
def test_moduli_invariant_under_substitution(seed):
    rng = random.Random(seed)
    M = [[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)]
    if M[0][0] * M[1][1] == M[0][1] * M[1][0]:
        M = [[1, 1], [0, 1]]
    s = BinaryForm([1, 0, 0, 0, 0, 0, 0])
    while not is_stable(s):
        s = BinaryForm([rng.randint(-5, 5) for _ in range(7)])
    assert moduli_equal(s, s.substitute(M))


def test_invariants_weighted_homogeneous():
    # t -> 2t multiplies f by 2^6, so an invariant of degree d picks up 2^(6d)
    I = clebsch_invariants(J5)
    I2 = clebsch_invariants(J5.substitute([[2, 0], [0, 2]]))
    assert [y == x * 2 ** (6 * d) for x, y, d in zip(I, I2, (2, 4, 6, 10))] == [True] * 4


def test_moduli_rejects_unstable():
    with pytest.raises(PhiError):
        moduli_equal(BinaryForm([0, 0, 0, 1, 0, 0, 0]), J5)


@given(generic_planes(), st.sampled_from(all_permutations()))
def test_phi_is_s5_invariant(P, s):
    assert moduli_equal(phi_sextic(P), phi_sextic(dual_image(P, s)))


@given(generic_planes())
def test_phi_point_is_rational(P):
    # the sextic may need a square root but its point in moduli is defined over Q
    assert galois_invariant(phi_sextic(P))
