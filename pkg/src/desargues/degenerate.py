"""Planes through frame points: fixed lines of the involution and the limit divisor.

When the plane contains one frame point ``p0`` the conic ``{L = Q = 0}``
(``L = sum a z``, ``Q = sum a z^2``) splits into two lines through ``p0``
defined over ``Q(sqrt(D))``.  For ``p0 = e4`` the lines are

    (-a1 a2 a3 - a2 sqrt(D)) z2 - (-a1 a2 a3 + a3 sqrt(D)) z3 = 0,
    D = -a1 a2 a3 (a1 + a2 + a3),

and the other sign.  The cubic ``sum a z^3`` meets each line only at ``p0``,
three times, so the limit divisor is ``6 p0``.  With two frame points the
conic is a double line on which the cubic vanishes identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .conics import von_staudt_conic
from .polyforms import BinaryForm, MultiPoly, ideal_combination, multiple_root_profile
from .projective import (Permutation5, Plane, ProjPoint, dual_image, frame_point, frame_transform,
                         free_indices)
from .scalars import QuadExt, adjoin_sqrt


class DegenerateError(ValueError):
    pass


@dataclass
class DegenerateDivisor:
    variant: str                     # "SixFoldPoint" | "WholeLine" | "Plane"
    point: ProjPoint | None = None
    line: list | None = None         # ambient covector of the line inside the plane
    semistable: bool = False
    certificate: dict = field(default_factory=dict)

    def to_text(self) -> str:
        if self.variant == "SixFoldPoint":
            body = f"6-fold point {self.point.to_text()}"
        elif self.variant == "WholeLine":
            from .scalars import format_scalar
            body = "whole line [" + ", ".join(format_scalar(x) for x in self.line) + "]"
        else:
            body = "whole plane"
        return f"divisor: {body}; {'semistable' if self.semistable else 'not semistable'}"


def _L(alpha):
    return MultiPoly.power_sum(alpha, 1)


def _Q(alpha):
    return MultiPoly.power_sum(alpha, 2)


def _C(alpha):
    return MultiPoly.power_sum(alpha, 3)


def _lines_at_e4(a):
    a1, a2, a3, a4 = a
    assert a4 == 0
    D = -a1 * a2 * a3 * (a1 + a2 + a3)
    assert D != 0, "D vanishes although the plane has kind 1"
    root = adjoin_sqrt(D).sqrt
    p = -a1 * a2 * a3
    # after eliminating z1 the conic is A z2^2 + 2B z2 z3 + C z3^2 with B^2 - AC = D
    A, B, C = a2 * (a1 + a2), a2 * a3, a3 * (a1 + a3)
    out = []
    for s in (root, -root):
        zero = 0 * s
        for c2, c3 in ((p - a2 * s, -(p + a3 * s)), (A + zero, B + s), (B - s, C + zero)):
            # the closed form vanishes identically when a2 + a3 = 0
            if c2 != 0 or c3 != 0:
                break
        out.append([zero, c2, c3, zero])
    return D, out


def _reduction(plane: Plane):
    """Transform bringing the single contained frame point to ``e4``.

    Returns ``(A, alpha')`` with covectors mapped back by ``beta' A``.
    """
    pts = plane.contained_frame_points()
    if len(pts) != 1:
        raise DegenerateError("the plane must contain exactly one frame point")
    k = pts[0]
    if k == 4:
        sigma = Permutation5.identity()
    elif k == 5:
        sigma = Permutation5.parse("(4 5)")
    else:
        sigma = Permutation5.parse(f"({k} 4)")
    A = frame_transform(sigma)
    return A, list(dual_image(plane, sigma).alpha), k


def involution_fixed_lines(plane):
    """The two lines of the split conic, as ambient covectors over ``Q(sqrt(D))``.

    Returns ``(D, l1, l2)``; the lines are Galois conjugate and, together with
    the plane, cut out the same ideal as ``(L, Q)``.
    """
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    if plane.kind() != 1:
        raise DegenerateError("involution lines need a plane of kind exactly 1")
    A, a2, _ = _reduction(plane)
    D, lines = _lines_at_e4(a2)
    back = [linalg.vecmat(l, A) for l in lines]
    return D, back[0], back[1]


def _as_poly(cov):
    return MultiPoly.linear(list(cov))


def product_certificate(plane):
    """``l1 l2 = c Q + A L`` and ``Q = c' l1 l2 + A' L`` with ``c, c'`` constants."""
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    alpha = list(plane.alpha)
    _, l1, l2 = involution_fixed_lines(plane)
    P = _as_poly(l1) * _as_poly(l2)
    L, Q = _L(alpha), _Q(alpha)
    fwd = ideal_combination(P, [Q, L], [[0], [1]])
    bwd = ideal_combination(Q, [P, L], [[0], [1]])
    if fwd is None or bwd is None:
        return None
    c = fwd[0].terms.get((0, 0, 0, 0), 0)
    c2 = bwd[0].terms.get((0, 0, 0, 0), 0)
    if c == 0 or c2 == 0:
        return None
    return c, c2


def _second_point(alpha, cov, p0):
    ns = linalg.nullspace([list(alpha), list(cov)])
    for v in ns:
        if not linalg.proportional(v, p0):
            return v
    raise DegenerateError("line through the frame point is not a line")


def restricted_cubic(alpha, cov, p0) -> BinaryForm:
    """``sum a z^3`` on ``z = s p0 + t w`` along the line ``cov`` of the plane."""
    w = _second_point(alpha, cov, p0)
    forms = [BinaryForm([x, y]) for x, y in zip(p0, w)]
    return _C(alpha).compose_binary(forms), _Q(alpha).compose_binary(forms)


def zero_locus_kind1(plane):
    """Common zeros of ``L, Q, C`` on each fixed line; all coincide with the frame point."""
    from .polyforms import root_profile
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    alpha = list(plane.alpha)
    k = plane.contained_frame_points()[0]
    p0 = frame_point(k)
    _, l1, l2 = involution_fixed_lines(plane)
    out = []
    for cov in (l1, l2):
        w = _second_point(alpha, cov, p0)
        cubic, _ = restricted_cubic(alpha, cov, p0)
        if cubic.is_zero():
            out.append((None, 0))
            continue
        for r, m in root_profile(cubic):
            out.append((ProjPoint([r[0] * x + r[1] * y for x, y in zip(p0, w)]), m))
    return out


def _rank_law(plane):
    _, r = von_staudt_conic(plane)
    if r != 3 - plane.kind():
        raise AssertionError("rank of the von Staudt conic disagrees with the kind")
    return r


def _is_cube_at_p0(cubic: BinaryForm) -> bool:
    # c * t^3: only the t1^3 coefficient survives
    return all(x == 0 for x in cubic.coeffs[:3]) and cubic.coeffs[3] != 0


def degenerate_divisor(plane) -> DegenerateDivisor:
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    kind = plane.kind()
    if kind == 0:
        raise DegenerateError("nondegenerate plane: use phi module")
    rank = _rank_law(plane)
    alpha = list(plane.alpha)
    if kind == 1:
        k = plane.contained_frame_points()[0]
        p0 = frame_point(k)
        D, l1, l2 = involution_fixed_lines(plane)
        parts = []
        for cov in (l1, l2):
            if linalg.dot(cov, p0) != 0:
                raise AssertionError("fixed line misses the frame point")
            cubic, quad = restricted_cubic(alpha, cov, p0)
            if not quad.is_zero():
                raise AssertionError("fixed line is not a component of the conic")
            if cubic.is_zero():
                # a special point S_ij sits on this line and the cubic contains it
                return DegenerateDivisor("WholeLine", line=linalg.normalize(list(cov)),
                                         certificate={"D": D, "rank": rank, "contains_fixed_line": True})
            if not _is_cube_at_p0(cubic):
                raise AssertionError("cubic meets a fixed line away from the frame point")
            parts.append(3)
        cert = {"D": D, "multiplicities": parts, "rank": rank, "product": product_certificate(plane)}
        return DegenerateDivisor("SixFoldPoint", point=ProjPoint(p0), certificate=cert)
    if kind == 2:
        S, _ = von_staudt_conic(plane)
        row = next(r for r in S if any(x != 0 for x in r))
        free = free_indices(alpha)
        cov = [0 * alpha[0]] * 4
        for j, x in zip(free, row):
            cov[j] = x
        cov = linalg.normalize(cov)
        res = ideal_combination(_C(alpha), [_L(alpha), _Q(alpha)], [[2], [1]])
        if res is None:
            raise AssertionError("cubic does not vanish on the double line")
        return DegenerateDivisor("WholeLine", line=cov, certificate={"rank": rank, "membership": res})
    return DegenerateDivisor("Plane", certificate={"rank": rank})


def six_fold_sextic() -> BinaryForm:
    """A binary sextic with a single root of multiplicity 6."""
    return BinaryForm([0, 0, 0, 0, 0, 0, 1])


def is_semistable(f: BinaryForm) -> bool:
    """No root of multiplicity greater than 3."""
    return multiple_root_profile(f).max_multiplicity() <= 3
