import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from desargues.scalars import (MU_FIELD, TENTH_ROOT_FIELD, ComplexApprox, QuadExt, QuarticField,
                               ScalarError, adjoin_sqrt, embed_numeric, format_scalar, parse_scalar,
                               sqrt_exact)

from conftest import nonzero_rationals, rationals


def test_sqrt2_norm():
    r = adjoin_sqrt(2).sqrt
    assert (1 + r) * (1 - r) == -1
    assert not adjoin_sqrt(2).trivial


def test_square_radicand_collapses():
    K = adjoin_sqrt(4)
    assert K.trivial
    assert K.sqrt == 2


def test_sqrt_minus3_norm():
    r = adjoin_sqrt(-3).sqrt
    assert (-1 - r) * (-1 + r) == 4


def test_rational_radicand_is_normalized():
    # sqrt(8/9) = 2/3 sqrt(2)
    r = adjoin_sqrt(Fraction(8, 9)).sqrt
    assert r * r == Fraction(8, 9)
    assert r.d == 2


def test_embedding_of_rational():
    z = embed_numeric(Fraction(3, 2))
    assert z.z == 1.5 + 0j


def test_embedding_of_sqrt_minus3():
    z = embed_numeric(adjoin_sqrt(-3).sqrt).z
    assert abs(z - 1j * 3 ** 0.5) < 1e-12
    assert abs(z * z + 3) < 1e-9


@pytest.mark.parametrize("branch", range(4))
def test_printed_quartic_generator_is_a_root(branch):
    mu = embed_numeric(MU_FIELD.gen, branch).z
    assert abs(mu ** 4 + mu ** 3 - mu ** 2 + mu - 1) < 1e-9


@pytest.mark.parametrize("branch", range(4))
def test_tenth_root_field_generator(branch):
    mu = embed_numeric(TENTH_ROOT_FIELD.gen, branch).z
    assert abs(mu ** 5 + 1) < 1e-9        # -mu is a primitive fifth root of unity


def test_reducible_quartic_rejected():
    with pytest.raises(ScalarError):
        QuarticField((1, 0, -2, 0))       # (x^2 - 1)^2


def test_quartic_inverse():
    mu = MU_FIELD.gen
    x = mu * mu + 3 * mu - 2
    assert x * x.inverse() == 1


@given(rationals, rationals, rationals, rationals, rationals, rationals)
def test_quadext_field_axioms(a, b, c, d, e, f):
    r = adjoin_sqrt(-7).sqrt
    x, y, z = a + b * r, c + d * r, e + f * r
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if x != 0:
        assert x * x.inverse() == 1


@given(st.lists(rationals, min_size=12, max_size=12))
def test_quartic_field_axioms(cs):
    K = MU_FIELD
    x, y, z = K(*cs[:4]), K(*cs[4:8]), K(*cs[8:])
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if x != 0:
        assert x * x.inverse() == 1


@given(rationals, rationals, rationals, rationals)
def test_conjugation_is_multiplicative(a, b, c, d):
    r = adjoin_sqrt(5).sqrt
    x, y = a + b * r, c + d * r
    assert (x * y).conj() == x.conj() * y.conj()


@given(rationals, rationals, rationals, rationals, st.integers(0, 3))
def test_embedding_respects_ring_operations(a, b, c, d, branch):
    mu = MU_FIELD.gen
    x = a + b * mu
    y = c + d * mu * mu
    ex, ey = embed_numeric(x, branch).z, embed_numeric(y, branch).z
    assert abs(embed_numeric(x + y, branch).z - (ex + ey)) < 1e-9 * (1 + abs(ex) + abs(ey))
    assert abs(embed_numeric(x * y, branch).z - ex * ey) < 1e-9 * (1 + abs(ex * ey))


def test_no_mixing_of_radicands():
    r2, r3 = adjoin_sqrt(2).sqrt, adjoin_sqrt(3).sqrt
    with pytest.raises(TypeError):
        r2 + r3


@pytest.mark.parametrize("text", ["3/7", "-5", "1+2*sqrt(3)", "-1/2-3/4*sqrt(-6)", "sqrt(2)"])
def test_parse_format_round_trip(text):
    x = parse_scalar(text)
    assert parse_scalar(format_scalar(x)) == x


def test_decimal_input_is_exact():
    assert parse_scalar("0.25") == Fraction(1, 4)


def test_complex_literal():
    z = parse_scalar("1.5-2i")
    assert isinstance(z, ComplexApprox) and z.z == complex(1.5, -2)


@pytest.mark.parametrize("text", ["", "abc", "1//2", "3+", "sqrt(x)"])
def test_malformed_scalars(text):
    with pytest.raises(ScalarError):
        parse_scalar(text)


@given(nonzero_rationals)
def test_sqrt_exact_of_squares(q):
    assert sqrt_exact(q * q) in (q, -q)


def test_sqrt_exact_in_extension():
    r = adjoin_sqrt(2).sqrt
    x = (3 + r) * (3 + r)
    s = sqrt_exact(x)
    assert s * s == x
