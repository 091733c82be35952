"""The sextic attached to a plane, its invariants, and comparison in moduli.

For a nondegenerate plane the conic ``{sum a z = 0, sum a z^2 = 0}`` is
parametrized by binary quadratics; substituting them into ``sum a z^3``
gives a binary sextic, well defined up to scaling and a change of the
parameter.  Sextics are compared through the Clebsch invariants of degrees
2, 4, 6, 10, built from transvectants::

    i = (f,f)_4      D = (i,i)_2      y1 = (f,i)_4
    y2 = (i,y1)_2    y3 = (i,y2)_2
    A = (f,f)_6   B = (i,i)_4   C = (i,D)_4   D10 = (y3,y1)_2

with ``(f,g)_k = (m-k)!(n-k)!/(m!n!) sum_j (-1)^j C(k,j) f_{x^(k-j) y^j} g_{x^j y^(k-j)}``.
Under ``f -> f∘M`` each invariant of degree ``d`` picks up ``det(M)^(3d)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import comb, factorial, gcd

import mpmath
import numpy as np

from . import linalg
from .conics import (ConicParametrization, ConicError, point_on_conic, quadrangle_cones,
                     quadrangle_pencil, von_staudt_conic)
from .grassmann import jac_projection, pluecker
from .polyforms import (BinaryForm, BinomialQuartic, MultiPoly, PolyError, binary_gcd,
                        ideal_combination, is_stable, multiple_root_profile, poly_det)
from .projective import Plane, ProjPoint, plane_basis, special_conditions, special_point_table
from .scalars import ComplexApprox, QuadExt, embed_numeric, field_of, format_scalar, is_exact

WEIGHTS = (2, 4, 6, 10)
MODULI_TOL = 1e-9


class PhiError(ValueError):
    pass


def _form(q) -> BinaryForm:
    if isinstance(q, BinaryForm):
        return q
    if isinstance(q, BinomialQuartic):
        return q.to_form()
    return BinaryForm(q)


def _quartic(q) -> BinomialQuartic:
    if isinstance(q, BinomialQuartic):
        return q
    return BinomialQuartic.from_form(_form(q))


def jacobian_pencil(f, g) -> BinaryForm:
    """Jacobian determinant of two binary quartics, cross-checked against the Plücker formula."""
    F, G = _form(f), _form(g)
    if F.degree != 4 or G.degree != 4:
        raise PhiError("binary quartics expected")
    direct = F.d0() * G.d1() - F.d1() * G.d0()
    if direct.is_zero():
        raise PhiError("forms are dependent: Jacobian vanishes identically")
    via = jac_projection(pluecker(_quartic(f), _quartic(g))) * 16
    if not all(x == y for x, y in zip(direct.coeffs, via.coeffs)):
        raise AssertionError("determinant and Plücker computations disagree")
    return direct


# ---------------------------------------------------------------------------
# transvectants and invariants


def _partial(f: BinaryForm, a: int, b: int) -> BinaryForm:
    for _ in range(a):
        f = f.d0()
    for _ in range(b):
        f = f.d1()
    return f


def transvectant(f: BinaryForm, g: BinaryForm, k: int) -> BinaryForm:
    m, n = f.degree, g.degree
    if k > min(m, n):
        raise PolyError("transvectant order too high")
    acc = None
    for j in range(k + 1):
        term = _partial(f, k - j, j) * _partial(g, j, k - j)
        term = term * (comb(k, j) * (-1) ** j)
        acc = term if acc is None else acc + term
    return acc * Fraction(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))


def _scalar(f: BinaryForm):
    assert f.degree == 0
    return f.coeffs[0]


def clebsch_invariants(f: BinaryForm):
    """``(A, B, C, D)`` of degrees 2, 4, 6, 10."""
    if f.degree != 6:
        raise PolyError("binary sextic expected")
    i = transvectant(f, f, 4)
    delta = transvectant(i, i, 2)
    y1 = transvectant(f, i, 4)
    y2 = transvectant(i, y1, 2)
    y3 = transvectant(i, y2, 2)
    return (_scalar(transvectant(f, f, 6)), _scalar(transvectant(i, i, 4)),
            _scalar(transvectant(i, delta, 4)), _scalar(transvectant(y3, y1, 2)))


# ---------------------------------------------------------------------------


class SexticClass:
    """A binary sextic with lazily computed invariants and root data.

    ``parametrization`` (optional) holds four binary quadratics mapping the
    parameter line onto the conic in P^3; it lets roots be read back as points.
    """

    def __init__(self, form: BinaryForm, parametrization=None, plane=None):
        if form.degree != 6:
            raise PhiError("binary sextic expected")
        if form.is_zero():
            raise PhiError("zero sextic")
        self.form = form
        self.parametrization = parametrization
        self.plane = plane

    @cached_property
    def invariants(self):
        return clebsch_invariants(self.form)

    @cached_property
    def double_roots(self):
        return multiple_root_profile(self.form)

    @cached_property
    def stable(self) -> bool:
        return is_stable(self.form)

    @property
    def field(self):
        return field_of(list(self.form.coeffs))

    @property
    def field_name(self) -> str:
        fld = self.field
        return "Q" if fld is None else str(fld)

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.form.coeffs)

    def point_at(self, t0, t1):
        if self.parametrization is None:
            raise PhiError("no parametrization attached")
        return [q(t0, t1) for q in self.parametrization]

    def double_points(self):
        """Points of P^3 under the multiple roots (needs a parametrization)."""
        return [ProjPoint(self.point_at(*r)) for r, _ in self.double_roots]

    def to_dict(self):
        return {
            "sextic": [format_scalar(c) for c in self.form.coeffs],
            "text": self.form.to_text(),
            "field": self.field_name,
            "stable": self.stable,
            "double_roots": self.double_roots.to_text(),
            "invariants": [format_scalar(x) for x in self.invariants],
        }


def _ambient_quadratics(plane: Plane, S, P=None):
    R = ConicParametrization(S, P)
    B = plane_basis(plane.alpha)
    out = []
    for r in range(4):
        acc = None
        for c in range(3):
            if B[r][c] == 0:
                continue
            term = R.forms[c] * B[r][c]
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else BinaryForm([0 * R.forms[0].coeffs[0]] * 3))
    return R, out


def phi_sextic(plane) -> SexticClass:
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    if plane.kind():
        raise PhiError("degenerate plane: use degenerate module")
    S, _ = von_staudt_conic(plane)
    P = point_on_conic(S)
    _, quads = _ambient_quadratics(plane, S, P)
    cubic = MultiPoly.power_sum(list(plane.alpha), 3)
    return SexticClass(cubic.compose_binary(quads), quads, plane)


# ---------------------------------------------------------------------------
# the congruence between the dependency determinant and the cubic


def expected_congruence_constant(plane, i: int):
    """Constant ``c`` in ``J = c * sum a z^3`` mod the ideal, for our cone normalization."""
    a = list(plane.alpha)
    if i == 5:
        return -2 * sum(a, 0)
    if i == 1:
        return 2 * a[0]
    return -2 * a[i - 1]


def dependency_determinant(plane, i: int) -> MultiPoly:
    """``det`` of the rows ``alpha``, ``(a_j z_j)``, ``Q z``, ``Q' z`` (half-gradients)."""
    a = list(plane.alpha)
    z = [MultiPoly.var(4, k) for k in range(4)]
    Q1, Q2 = quadrangle_cones(i)
    rows = [
        [MultiPoly.const(4, x) for x in a],
        [z[k] * a[k] for k in range(4)],
        [sum((z[c] * Q1[r][c] for c in range(4) if Q1[r][c] != 0), MultiPoly(4)) for r in range(4)],
        [sum((z[c] * Q2[r][c] for c in range(4) if Q2[r][c] != 0), MultiPoly(4)) for r in range(4)],
    ]
    return poly_det(rows)


def congruence_constant(plane, i: int):
    """Solve ``J = c T + A L + B Q`` with ``c`` constant, ``A`` quadratic, ``B`` linear.

    Returns ``c`` or ``None`` when no such combination exists.
    """
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    a = list(plane.alpha)
    J = dependency_determinant(plane, i)
    T = MultiPoly.power_sum(a, 3)
    L = MultiPoly.power_sum(a, 1)
    Q = MultiPoly.power_sum(a, 2)
    res = ideal_combination(J, [T, L, Q], [[0], [2], [1]])
    if res is None:
        return None
    c = res[0]
    return c.terms.get((0, 0, 0, 0), 0 * a[0]) if isinstance(c, MultiPoly) else c


def cubic_congruence_check(plane, i: int) -> bool:
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    if plane.kind():
        raise PhiError("degenerate plane")
    c = congruence_constant(plane, i)
    return c is not None and c == expected_congruence_constant(plane, i)


# ---------------------------------------------------------------------------
# the net of conics


def net_discriminant_divisor(plane, i: int = 5) -> MultiPoly:
    """``det[q1 y | q2 y | S y]`` as a cubic in plane coordinates."""
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    if plane.kind():
        raise PhiError("degenerate plane")
    q1, q2 = quadrangle_pencil(plane, i).conics
    S, _ = von_staudt_conic(plane)
    y = [MultiPoly.var(3, k) for k in range(3)]

    def col(M):
        return [sum((y[c] * M[r][c] for c in range(3) if M[r][c] != 0), MultiPoly(3)) for r in range(3)]

    cols = [col(q1), col(q2), col(S)]
    return poly_det([[cols[c][r] for c in range(3)] for r in range(3)])


def net_restriction(plane, i: int = 5):
    """The net cubic and the Φ-sextic restricted through the same parametrization."""
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    S, _ = von_staudt_conic(plane)
    P = point_on_conic(S)
    R, quads = _ambient_quadratics(plane, S, P)
    cubic = net_discriminant_divisor(plane, i)
    phi = MultiPoly.power_sum(list(plane.alpha), 3).compose_binary(quads)
    return cubic.compose_binary(R.forms), phi


def net_is_two_dimensional(plane, i: int = 5) -> bool:
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    q1, q2 = quadrangle_pencil(plane, i).conics
    S, _ = von_staudt_conic(plane)
    flat = [[M[r][c] for r in range(3) for c in range(r, 3)] for M in (q1, q2, S)]
    return linalg.rank(flat) == 3


# ---------------------------------------------------------------------------
# double points


def _candidate_lines():
    """Lines of P^3 made of points with three equal coordinates or two equal pairs."""
    out = []
    for l in range(4):
        rest = [k for k in range(4) if k != l]
        u = [Fraction(int(k == l)) for k in range(4)]
        v = [Fraction(int(k in rest)) for k in range(4)]
        out.append((u, v))
    for i, j, k, l in ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)):
        u = [Fraction(int(m in (i, j))) for m in range(4)]
        v = [Fraction(int(m in (k, l))) for m in range(4)]
        out.append((u, v))
    return out


def _on_all(alpha, z) -> bool:
    return all(sum((a * x ** k for a, x in zip(alpha, z)), 0) == 0 for k in (1, 2, 3))


def double_points(plane):
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    if plane.kind():
        raise PhiError("degenerate plane")
    alpha = list(plane.alpha)
    found = []
    for u, v in _candidate_lines():
        au, av = linalg.dot(alpha, u), linalg.dot(alpha, v)
        if au == 0 and av == 0:
            # line inside the plane: restrict the quadric and cubic
            pts = []
            for s, t in ((1, 0), (0, 1)):
                pts.append([s * x + t * y for x, y in zip(u, v)])
            qf = BinaryForm([linalg.dot(alpha, [x * x for x in u]), 0 * au,
                             linalg.dot(alpha, [y * y for y in v])])
            cand = []
            if qf.is_zero():
                raise PhiError("quadric contains a candidate line")
            from .polyforms import root_profile
            for r, _ in root_profile(qf):
                cand.append([r[0] * x + r[1] * y for x, y in zip(u, v)])
        else:
            cand = [[av * x - au * y for x, y in zip(u, v)]]
        for z in cand:
            if not _on_all(alpha, z):
                continue
            if len({x for x in z}) == 1:
                raise AssertionError("all coordinates equal on the cubic: sum of alpha vanishes")
            p = ProjPoint(z)
            if p not in found:
                found.append(p)
    return found


# ---------------------------------------------------------------------------
# moduli comparison


def _invariants_of(s):
    if isinstance(s, SexticClass):
        if not s.stable:
            raise PhiError("unstable sextic")
        return list(s.invariants)
    f = _form(s)
    if not is_stable(f):
        raise PhiError("unstable sextic")
    return list(clebsch_invariants(f))


def _common_exact(u, v) -> bool:
    vals = [x for x in u + v if x != 0]
    if not all(is_exact(x) for x in vals):
        return False
    fields = {str(field_of([x])) for x in vals if field_of([x]) is not None}
    return len(fields) <= 1


def _pairwise(I, J, eq):
    nz_i = [k for k, x in enumerate(I) if x != 0]
    nz_j = [k for k, x in enumerate(J) if x != 0]
    if nz_i != nz_j or not nz_i:
        return False
    for x in range(len(nz_i)):
        for y in range(x + 1, len(nz_i)):
            a, b = nz_i[x], nz_i[y]
            g = gcd(WEIGHTS[a], WEIGHTS[b])
            ea, eb = WEIGHTS[b] // g, WEIGHTS[a] // g
            if not eq(J[a] ** ea * I[b] ** eb, I[a] ** ea * J[b] ** eb):
                return False
    return True


def _normalized(I):
    z = np.array([complex(x) for x in I])
    n = max(abs(c) ** (1.0 / w) for c, w in zip(z, WEIGHTS))
    if n == 0:
        return z
    return np.array([c / n ** w for c, w in zip(z, WEIGHTS)])


def _mp_value(x):
    """High-precision value of a rational or of ``u + v sqrt(d)`` with rational data."""
    if isinstance(x, QuadExt) and isinstance(x.d, Fraction):
        u, v, d = (mpmath.mpf(c.numerator) / c.denominator for c in map(Fraction, (x.u, x.v, x.d)))
        return u + v * mpmath.sqrt(d)
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return mpmath.mpf(x.numerator) / x.denominator
    return None


def _ratios_equal(I, J) -> bool | None:
    """Compare the weighted cross ratios of two exact invariant vectors field by field.

    Each ratio is formed inside its own field, so no cancellation happens before
    the comparison.  Returns ``None`` when some value cannot be embedded precisely.
    """
    nz_i = [k for k, x in enumerate(I) if x != 0]
    nz_j = [k for k, x in enumerate(J) if x != 0]
    if nz_i != nz_j or not nz_i:
        return False
    with mpmath.workdps(80):
        for x in range(len(nz_i)):
            for y in range(x + 1, len(nz_i)):
                a, b = nz_i[x], nz_i[y]
                g = gcd(WEIGHTS[a], WEIGHTS[b])
                ea, eb = WEIGHTS[b] // g, WEIGHTS[a] // g
                ri, rj = I[a] ** ea / I[b] ** eb, J[a] ** ea / J[b] ** eb
                vi, vj = _mp_value(ri), _mp_value(rj)
                if vi is None or vj is None:
                    return None
                if abs(vi - vj) > mpmath.mpf(10) ** -50 * max(1, abs(vi)):
                    return False
    return True


def moduli_equal(s1, s2, tol: float = MODULI_TOL) -> bool:
    I, J = _invariants_of(s1), _invariants_of(s2)
    if _common_exact(I, J):
        return _pairwise(I, J, lambda x, y: x == y)
    if all(is_exact(x) for x in I + J):
        res = _ratios_equal(I, J)
        if res is not None:
            return res
    In = [embed_numeric(x).z if not isinstance(x, complex) else x for x in I]
    Jn = [embed_numeric(x).z if not isinstance(x, complex) else x for x in J]
    In, Jn = _normalized(In), _normalized(Jn)
    mask_i = [abs(x) > tol for x in In]
    mask_j = [abs(x) > tol for x in Jn]
    if mask_i != mask_j:
        return False
    In = [x if m else 0 for x, m in zip(In, mask_i)]
    Jn = [x if m else 0 for x, m in zip(Jn, mask_j)]
    return _pairwise(In, Jn, lambda x, y: abs(x - y) <= tol)


def weight_zero_ratios(s):
    """Absolute invariants ``I_k^(w_r/g) / I_r^(w_k/g)`` against the first nonzero invariant."""
    I = _invariants_of(s)
    r = next((k for k, x in enumerate(I) if x != 0), None)
    if r is None:
        raise PhiError("all invariants vanish")
    out = []
    for k, x in enumerate(I):
        if k == r:
            continue
        g = gcd(WEIGHTS[k], WEIGHTS[r])
        out.append(x ** (WEIGHTS[r] // g) / I[r] ** (WEIGHTS[k] // g))
    return out


def galois_invariant(s) -> bool:
    """True when the point in moduli is defined over Q (all absolute invariants rational)."""
    def rational(x):
        if isinstance(x, (int, Fraction)):
            return True
        if isinstance(x, QuadExt):
            return x.is_base() and isinstance(x.to_base(), (int, Fraction))
        return False
    return all(rational(x) for x in weight_zero_ratios(s))
