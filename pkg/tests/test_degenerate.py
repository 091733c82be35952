import pytest
from hypothesis import assume, given, strategies as st

from desargues import linalg
from desargues.conics import von_staudt_conic
from desargues.degenerate import (DegenerateError, degenerate_divisor, involution_fixed_lines,
                                  is_semistable, product_certificate, six_fold_sextic, zero_locus_kind1)
from desargues.polyforms import MultiPoly, ideal_combination, is_stable
from desargues.projective import Plane, ProjPoint, frame_point
from desargues.scalars import adjoin_sqrt

nz = st.integers(-20, 20).filter(bool)


@st.composite
def kind_planes(draw, kind):
    """Planes through exactly ``kind`` frame points, built by zeroing entries or the sum."""
    a = [draw(nz) for _ in range(4)]
    zeros = draw(st.sets(st.integers(0, 4), min_size=kind, max_size=kind))
    for k in zeros:
        if k < 4:
            a[k] = 0
    if 4 in zeros:
        free = [k for k in range(4) if k not in zeros]
        a[free[-1]] = -sum(a[k] for k in free[:-1])
    assume(any(a))
    P = Plane(a)
    assume(P.kind() == kind)
    return P


def test_fixed_lines_111():
    D, l1, l2 = involution_fixed_lines(Plane([1, 1, 1, 0]))
    r = adjoin_sqrt(-3).sqrt
    assert D == -3
    assert l1 == [0, -1 - r, 1 - r, 0]
    assert l2 == [0, -1 + r, 1 + r, 0]


def test_product_certificate_111():
    c, c2 = product_certificate(Plane([1, 1, 1, 0]))
    assert c != 0 and c * c2 == 1


def test_kind2_rejected_for_fixed_lines():
    with pytest.raises(DegenerateError):
        involution_fixed_lines(Plane([1, 1, -2, 0]))


def test_six_fold_point():
    d = degenerate_divisor(Plane([1, 1, 1, -3]))
    assert d.variant == "SixFoldPoint" and d.point == ProjPoint([1, 1, 1, 1])
    assert not d.semistable and d.certificate["multiplicities"] == [3, 3]


def test_whole_line():
    d = degenerate_divisor(Plane([1, 2, 0, 0]))
    assert d.variant == "WholeLine" and not d.semistable
    # the covector and the plane cut out the line e3 e4
    assert linalg.rank([[1, 2, 0, 0], d.line]) == 2
    for k in (3, 4):
        assert linalg.dot(d.line, frame_point(k)) == 0


def test_whole_plane():
    d = degenerate_divisor(Plane([0, 0, 3, 0]))
    assert d.variant == "Plane" and not d.semistable


def test_kind0_rejected():
    with pytest.raises(DegenerateError, match="phi"):
        degenerate_divisor(Plane([1, 2, 3, 4]))


def test_six_fold_sextic_not_semistable():
    f = six_fold_sextic()
    assert not is_stable(f) and not is_semistable(f)


def test_zero_locus_is_the_frame_point():
    assert zero_locus_kind1(Plane([1, 2, 3, 0])) == [(ProjPoint([0, 0, 0, 1]), 3)] * 2


@given(kind_planes(1))
def test_kind1_lines_conjugate_and_meet_at_frame_point(P):
    D, l1, l2 = involution_fixed_lines(P)
    if adjoin_sqrt(D).trivial:
        # D is a square: both lines are rational and simply distinct
        assert not linalg.proportional(l1, l2)
    else:
        assert [x.conj() for x in l1] == l2
    (k,) = P.contained_frame_points()
    p0 = frame_point(k)
    assert linalg.dot(l1, p0) == 0 and linalg.dot(l2, p0) == 0
    # the two lines and the plane meet only in p0
    assert linalg.rank([list(P.alpha), l1, l2]) == 3
    assert product_certificate(P) is not None


@given(kind_planes(1))
def test_kind1_divisor(P):
    d = degenerate_divisor(P)
    (k,) = P.contained_frame_points()
    if d.variant == "SixFoldPoint":
        assert d.point == ProjPoint(frame_point(k))
    else:
        # one fixed line lies on the cubic: a special point sits there
        assert d.variant == "WholeLine" and d.certificate["contains_fixed_line"]
    assert von_staudt_conic(P)[1] == 2


@given(kind_planes(2))
def test_kind2_cubic_in_ideal(P):
    a = list(P.alpha)
    res = ideal_combination(MultiPoly.power_sum(a, 3), [MultiPoly.power_sum(a, 1), MultiPoly.power_sum(a, 2)],
                            [[2], [1]])
    assert res is not None
    d = degenerate_divisor(P)
    assert d.variant == "WholeLine" and von_staudt_conic(P)[1] == 1


@given(kind_planes(3))
def test_kind3(P):
    assert degenerate_divisor(P).variant == "Plane" and von_staudt_conic(P)[1] == 0
