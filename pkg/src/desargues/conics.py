"""Conics, quadrangle pencils, apolarity and reconstruction of configurations.

Conics and quadrics are symmetric matrices (lists of rows).  Plane-coordinate
conics are relative to the basis of :func:`projective.plane_basis`.

The reference conic is ``x1^2 - 4 x0 x2 = 0``, parametrized by
``(t0^2 : 2 t0 t1 : t1^2)``.  A binomial quartic ``a`` corresponds to the Hankel
conic ``[[a0,a1,a2],[a1,a2,a3],[a2,a3,a4]]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .polyforms import BinaryForm, BinomialQuartic, PolyError, discriminant_cubic, root_profile
from .projective import (PAIRS, TRIPLES, Configuration, GeometryError, Plane, incidence_table,
                         pair_label, plane_basis, triple_label, check_10_3)
from .scalars import ComplexApprox, QuadExt, adjoin_sqrt, is_exact, rational_sqrt, sqrt_exact

REFERENCE_CONIC = [[Fraction(0), Fraction(0), Fraction(-2)],
                   [Fraction(0), Fraction(1), Fraction(0)],
                   [Fraction(-2), Fraction(0), Fraction(0)]]


class ConicError(ValueError):
    pass


def _F(rows):
    return [[Fraction(x) for x in r] for r in rows]


# cones through the four lines e_i e_j (j != i)
CONES_5 = (_F([[0, 1, 0, -1], [1, 0, -1, 0], [0, -1, 0, 1], [-1, 0, 1, 0]]),
           _F([[0, 0, 1, -1], [0, 0, -1, 1], [1, -1, 0, 0], [-1, 1, 0, 0]]))
CONES_1 = (_F([[0, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, -1], [0, 0, -1, 0]]),
           _F([[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, -1], [0, 1, -1, 0]]))


def quadratic_form(M, x):
    return linalg.dot(x, linalg.matvec(M, x))


def bilinear(M, x, y):
    return linalg.dot(x, linalg.matvec(M, y))


def conic_rank(M) -> int:
    return linalg.rank(M)


def restrict_quadric(Q, B):
    """``B^T Q B``."""
    return linalg.matmul(linalg.transpose(B), linalg.matmul(Q, B))


def von_staudt_conic(plane):
    """``(S, rank)`` with ``S`` the restriction of ``diag(alpha)`` to the plane."""
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    alpha = list(plane.alpha)
    D = [[alpha[i] if i == j else 0 * alpha[i] for j in range(4)] for i in range(4)]
    S = restrict_quadric(D, plane_basis(alpha))
    return S, conic_rank(S)


def apolar(A, B) -> bool:
    """``tr(A adj(B)) == 0`` (3x3 or 4x4)."""
    if all(x == 0 for row in B for x in row):
        raise ConicError("apolarity against the zero matrix is vacuous")
    return linalg.trace(linalg.matmul(A, linalg.adjugate(B))) == 0


def quartic_to_conic(q: BinomialQuartic):
    if q.is_zero():
        raise ConicError("zero quartic")
    a = q.a
    return [[a[0], a[1], a[2]], [a[1], a[2], a[3]], [a[2], a[3], a[4]]]


def conic_to_quartic(M) -> BinomialQuartic:
    """Inverse of :func:`quartic_to_conic` on Hankel matrices."""
    if M[1][1] != M[0][2]:
        raise ConicError("matrix is not Hankel")
    return BinomialQuartic([M[0][0], M[0][1], M[0][2], M[1][2], M[2][2]])


def reference_point(t0, t1):
    return [t0 * t0, 2 * t0 * t1, t1 * t1]


def quadrangle_cones(i: int):
    if i == 5:
        return CONES_5
    if i == 1:
        return CONES_1
    if i not in (2, 3, 4):
        raise ConicError("quadrangle index must be in 1..5")
    perm = list(range(4))
    perm[0], perm[i - 1] = perm[i - 1], perm[0]
    return tuple([[Q[perm[r]][perm[c]] for c in range(4)] for r in range(4)] for Q in CONES_1)


@dataclass
class QuadranglePencil:
    index: int
    cones: tuple        # two 4x4 quadrics
    conics: tuple       # restrictions to the plane (plane coordinates)


def quadrangle_pencil(plane, i: int) -> QuadranglePencil:
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    if plane.kind():
        raise ConicError("quadrangle collapsed")
    cones = quadrangle_cones(i)
    B = plane_basis(plane.alpha)
    return QuadranglePencil(i, cones, tuple(restrict_quadric(Q, B) for Q in cones))


def pencil_cubic(q1, q2):
    """Coefficients of ``det(t0 q1 + t1 q2)`` as a binary cubic."""
    out = [0, 0, 0, 0]
    for choice in itertools.product((0, 1), repeat=3):
        cols = [[(q2 if c else q1)[r][j] for r in range(3)] for j, c in enumerate(choice)]
        out[sum(choice)] = linalg.det(linalg.transpose(cols)) + out[sum(choice)]
    return out


def _independent(f: BinomialQuartic, g: BinomialQuartic) -> bool:
    return linalg.rank([list(f.a), list(g.a)]) == 2


def admissible(f: BinomialQuartic, g: BinomialQuartic) -> bool:
    if not _independent(f, g):
        raise ConicError("pencil generators are dependent")
    c = pencil_cubic(quartic_to_conic(f), quartic_to_conic(g))
    if all(x == 0 for x in c):
        return False
    return discriminant_cubic(c) != 0


def conic_through(points):
    """Nullspace basis of conics through the given points of P^2 (as 3x3 matrices)."""
    rows = []
    for p in points:
        x0, x1, x2 = p
        rows.append([x0 * x0, 2 * x0 * x1, 2 * x0 * x2, x1 * x1, 2 * x1 * x2, x2 * x2])
    out = []
    for v in linalg.nullspace(rows):
        a, b, c, d, e, f = v
        out.append([[a, b, c], [b, d, e], [c, e, f]])
    return out


# ---------------------------------------------------------------------------
# rational parametrization of a smooth conic


def point_on_conic(S):
    """A point of ``x^T S x = 0``.

    Tries the coordinate lines ``x_k = 0`` in order, exactly; if none carries a
    rational point the square root of the first line's discriminant is adjoined.
    Numeric input is handled with complex square roots.
    """
    numeric = any(not is_exact(x) for row in S for x in row)
    if numeric:
        return _numeric_point_on_conic(S)
    first = None
    for k in range(3):
        a_idx, b_idx = [j for j in range(3) if j != k]
        a, b, c = S[a_idx][a_idx], S[a_idx][b_idx], S[b_idx][b_idx]
        pt = [0, 0, 0]
        if a == 0 and b == 0 and c == 0:
            pt[a_idx] = 1
            return _lift_point(pt, S)
        if a == 0:
            pt[a_idx] = 1
            return _lift_point(pt, S)
        disc = b * b - a * c
        r = sqrt_exact(disc)
        if r is not None:
            pt[a_idx] = (-b + r) / a
            pt[b_idx] = 1
            return _lift_point(pt, S)
        if first is None:
            first = (a_idx, b_idx, a, b, disc)
    a_idx, b_idx, a, b, disc = first
    field = adjoin_sqrt(disc)
    pt = [QuadExt(0, 0, field.radicand)] * 3
    pt = list(pt)
    pt[a_idx] = (-b + field.sqrt) / a
    pt[b_idx] = QuadExt(1, 0, field.radicand)
    return pt


def _numeric_point_on_conic(S):
    """A coordinate point if one lies on the conic, else the most transversal coordinate line."""
    M = [[complex(x) for x in row] for row in S]
    norm = max(abs(x) for row in M for x in row)
    i = min(range(3), key=lambda k: abs(M[k][k]))
    if abs(M[i][i]) <= 1e-12 * norm:
        pt = [0j, 0j, 0j]
        pt[i] = 1 + 0j
        return [ComplexApprox(x) for x in pt]
    best = None
    for k in range(3):
        a_idx, b_idx = [j for j in range(3) if j != k]
        a, b, c = M[a_idx][a_idx], M[a_idx][b_idx], M[b_idx][b_idx]
        disc = b * b - a * c
        if best is None or abs(disc) > best[0]:
            best = (abs(disc), a_idx, b_idx, a, b, disc)
    _, i0, i1, lead, mid, disc = best
    pt = [0j, 0j, 0j]
    pt[i0] = (-mid + disc ** 0.5) / lead
    pt[i1] = 1
    return [ComplexApprox(x) for x in pt]


def _lift_point(pt, S):
    zero = 0 * S[0][0]
    return [x + zero for x in pt]


class ConicParametrization:
    """``R(s,t) = (X^T S X) P - 2 (P^T S X) X`` with ``X = s Q1 + t Q2``.

    ``P`` is a point of the conic and ``Q1, Q2`` are standard basis vectors
    completing it to a basis.  Each coordinate of ``R`` is a binary quadratic.
    """

    def __init__(self, S, P=None):
        self.S = S
        self.P = P if P is not None else point_on_conic(S)
        if all(is_exact(x) for x in self.P):
            m = next(i for i, x in enumerate(self.P) if x != 0)
        else:
            m = max(range(3), key=lambda i: abs(complex(self.P[i])))
        idx = [j for j in range(3) if j != m]
        self.Q = [[Fraction(int(r == j)) for r in range(3)] for j in idx]
        self.forms = self._forms()

    def _forms(self):
        S, P = self.S, self.P
        Q1, Q2 = self.Q
        a = bilinear(S, Q1, Q1)
        b = bilinear(S, Q1, Q2)
        c = bilinear(S, Q2, Q2)
        p1 = bilinear(S, P, Q1)
        p2 = bilinear(S, P, Q2)
        # X^T S X = a s^2 + 2b st + c t^2 ; P^T S X = p1 s + p2 t
        xsx = BinaryForm([a, 2 * b, c])
        psx = BinaryForm([p1, p2])
        forms = []
        for k in range(3):
            Xk = BinaryForm([Q1[k], Q2[k]])
            forms.append(xsx * P[k] - (psx * Xk) * 2)
        return forms

    def __call__(self, s, t):
        return [f(s, t) for f in self.forms]

    def pullback(self, M) -> BinaryForm:
        """``R^T M R`` as a binary quartic."""
        f = self.forms
        acc = None
        for i in range(3):
            for j in range(3):
                if M[i][j] == 0:
                    continue
                term = (f[i] * f[j]) * M[i][j]
                acc = term if acc is None else acc + term
        if acc is None:
            return BinaryForm([0] * 5)
        return acc


def jacobian(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """``df/dt0 dg/dt1 - df/dt1 dg/dt0``."""
    return f.d0() * g.d1() - f.d1() * g.d0()


# ---------------------------------------------------------------------------
# reconstruction of a configuration from an admissible pencil


def _transformations():
    yield [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    for k, m in [(1, 2), (2, 3), (3, 5), (-1, 4), (5, -2), (7, 11)]:
        yield [[Fraction(1), Fraction(0), Fraction(k)], [Fraction(0), Fraction(1), Fraction(m)],
               [Fraction(0), Fraction(0), Fraction(1)]]


def _x2_quadratic(q, r0, r1):
    A = q[2][2]
    B = 2 * (q[0][2] * r0 + q[1][2] * r1)
    C = q[0][0] * r0 * r0 + 2 * q[0][1] * r0 * r1 + q[1][1] * r1 * r1
    return A, B, C


def _eliminant(q1, q2) -> BinaryForm:
    """Resultant in ``x2`` of two conics: a binary quartic in ``(x0, x1)``."""
    def parts(q):
        A = BinaryForm([q[2][2]])
        B = BinaryForm([2 * q[0][2], 2 * q[1][2]])
        C = BinaryForm([q[0][0], 2 * q[0][1], q[1][1]])
        return A, B, C
    a1, b1, c1 = parts(q1)
    a2, b2, c2 = parts(q2)
    u = a1 * c2 - a2 * c1
    v = a1 * b2 - a2 * b1
    w = b1 * c2 - b2 * c1
    return u * u - v * w


def _same_field(values) -> bool:
    radicands = {x.d for x in values if isinstance(x, QuadExt) and x.v != 0}
    numeric = any(isinstance(x, ComplexApprox) for x in values)
    return not numeric and len(radicands) <= 1


def base_points(q1, q2):
    """The four base points of a conic pencil, exact when possible."""
    for T in _transformations():
        p1 = restrict_quadric(q1, T)
        p2 = restrict_quadric(q2, T)
        R = _eliminant(p1, p2)
        if R.is_zero() or R.coeffs[0] == 0 and R.coeffs[-1] == 0 and all(c == 0 for c in R.coeffs):
            continue
        prof = root_profile(R)
        if len(prof.entries) != 4 or any(m != 1 for _, m in prof.entries):
            continue
        roots = [r for r, _ in prof.entries]
        flat = [c for r in roots for c in r]
        if not _same_field(flat):
            roots = [(ComplexApprox(complex(r[0])), ComplexApprox(complex(r[1]))) if not
                     isinstance(r[0], ComplexApprox) else r for r in roots]
            roots = [_numeric_pair(r) for r in roots]
            p1 = [_embed_all(r) for r in p1]
            p2 = [_embed_all(r) for r in p2]
        pts = []
        ok = True
        for r0, r1 in roots:
            A1, B1, C1 = _x2_quadratic(p1, r0, r1)
            A2, B2, C2 = _x2_quadratic(p2, r0, r1)
            den = A2 * B1 - A1 * B2
            if den == 0:
                ok = False
                break
            x2 = -(A2 * C1 - A1 * C2) / den
            pts.append(linalg.matvec(T, [r0, r1, x2]))
        if ok and all(_on_conic(q1, p) and _on_conic(q2, p) for p in pts):
            return pts
    raise ConicError("base locus not 4 simple points")


def _on_conic(q, p, tol=1e-9) -> bool:
    if all(is_exact(x) for x in p) and all(is_exact(x) for row in q for x in row):
        return quadratic_form(q, p) == 0
    qn = [[complex(x) for x in row] for row in q]
    pn = [complex(x) for x in p]
    scale = max(abs(x) for row in qn for x in row) * sum(abs(x) ** 2 for x in pn)
    return abs(quadratic_form(qn, pn)) <= tol * scale


def _numeric_pair(r):
    return (ComplexApprox(complex(r[0])), ComplexApprox(complex(r[1])))


def _embed_all(vals):
    from .scalars import embed_numeric
    return [embed_numeric(v) if not isinstance(v, ComplexApprox) else v for v in vals]


def reconstruct_configuration(f: BinomialQuartic, g: BinomialQuartic, S=None) -> Configuration:
    """Desargues configuration whose quadrangle at ``e5`` is the base locus of the pencil.

    Points and lines are in the coordinates of the reference conic ``S``.
    ``p_i5`` are the base points, ``p_ij`` is the pole of ``line(p_k5, p_l5)``,
    ``l_ij5`` joins ``p_i5`` and ``p_j5`` and ``l_ijk`` is the polar of ``p_l5``.
    """
    if not admissible(f, g):
        raise ConicError("base locus not 4 simple points")
    S = S or REFERENCE_CONIC
    q1, q2 = quartic_to_conic(f), quartic_to_conic(g)
    if any(isinstance(x, ComplexApprox) for x in list(f.a) + list(g.a)):
        q1 = [_embed_all(r) for r in q1]
        q2 = [_embed_all(r) for r in q2]
    base = base_points(q1, q2)
    if any(isinstance(c, ComplexApprox) for p in base for c in p):
        base = [_embed_all(p) for p in base]
        S = [_embed_all(r) for r in S]
    adj = linalg.adjugate(S)
    points, lines = {}, {}
    for i in range(1, 5):
        points[pair_label((i, 5))] = base[i - 1]
    for i, j in itertools.combinations(range(1, 5), 2):
        k, l = [m for m in range(1, 5) if m not in (i, j)]
        lkl = linalg.cross(base[k - 1], base[l - 1])
        points[pair_label((i, j))] = linalg.matvec(adj, lkl)
        lines[triple_label((i, j, 5))] = linalg.cross(base[i - 1], base[j - 1])
    for t in itertools.combinations(range(1, 5), 3):
        l = next(m for m in range(1, 5) if m not in t)
        lines[triple_label(t)] = linalg.matvec(S, base[l - 1])
    if not check_10_3(points, lines, allow_special=True):
        raise ConicError("reconstructed incidences fail")
    return Configuration(plane=None, kind=0, basis=None, points=points, ambient={},
                         lines=lines, incidence=incidence_table(points, lines), special_points=[])


def von_staudt_from_configuration(cfg: Configuration):
    """Conic whose polar of every ``p_ij`` is the complementary line ``l_klm``."""
    rows = []
    for p in PAIRS:
        comp = tuple(m for m in range(1, 6) if m not in p)
        x = cfg.points[pair_label(p)]
        l = cfg.lines[triple_label(comp)]
        # polar S x; unknowns (a,b,c,d,e,f) of [[a,b,c],[b,d,e],[c,e,f]]
        x0, x1, x2 = x
        zero = 0 * x0
        Sx = [[x0, x1, x2, zero, zero, zero],
              [zero, x0, zero, x1, x2, zero],
              [zero, zero, x0, zero, x1, x2]]
        # cross(Sx, l) = 0
        for a, b in ((1, 2), (2, 0), (0, 1)):
            rows.append([Sx[a][u] * l[b] - Sx[b][u] * l[a] for u in range(6)])
    ns = linalg.nullspace(rows)
    if len(ns) != 1:
        raise ConicError(f"polarity conditions leave a {len(ns)}-dimensional solution space")
    a, b, c, d, e, f = ns[0]
    return [[a, b, c], [b, d, e], [c, e, f]]


def quadrangle_conics(cfg: Configuration, i: int):
    """Two generators of the conic pencil through the four points ``p_ij``, ``j != i``."""
    pts = [cfg.points[pair_label((i, j))] for j in range(1, 6) if j != i]
    gens = conic_through(pts)
    if len(gens) != 2:
        raise ConicError("quadrangle points not in general position")
    return gens


def phi_from_configuration(cfg: Configuration, i: int = 1) -> BinaryForm:
    """Jacobian sextic of the quadrangle pencil at ``e_i`` restricted to the von Staudt conic."""
    S = von_staudt_from_configuration(cfg)
    par = ConicParametrization(S)
    q1, q2 = quadrangle_conics(cfg, i)
    return jacobian(par.pullback(q1), par.pullback(q2))


def _frame_matrix(pts):
    """Matrix sending e1, e2, e3, (1,1,1) to the four given points."""
    M = linalg.transpose([list(p) for p in pts[:3]])
    lam = linalg.solve(M, list(pts[3]))
    if lam is None or any(x == 0 for x in lam):
        return None
    return [[M[r][c] * lam[c] for c in range(3)] for r in range(3)]


def _numeric(v):
    return [complex(x) for x in v]


def configurations_equivalent(c1: Configuration, c2: Configuration, tol: float = 1e-8):
    """A relabeling ``sigma`` of 1..5 and a collineation carrying ``c1`` onto ``c2``.

    Returns the permutation or ``None``.  Points are compared numerically
    (relative tolerance) since the two sides may live in different fields.
    """
    import numpy as np
    from .projective import all_permutations
    frame = [(1, 5), (2, 5), (3, 5), (4, 5)]

    def pts(c, sigma=None):
        out = {}
        for p in PAIRS:
            q = p if sigma is None else tuple(sorted((sigma(p[0]), sigma(p[1]))))
            v = c.points[pair_label(q)]
            if v is None:
                return None
            out[p] = np.array(_numeric(v))
        return out

    target = pts(c2)
    if target is None:
        return None
    Bm = np.array([target[p] for p in frame[:3]]).T
    lamB = np.linalg.lstsq(Bm, target[frame[3]], rcond=None)[0]
    if np.min(np.abs(lamB)) < 1e-12:
        return None
    MB = Bm * lamB
    for sigma in all_permutations():
        src = pts(c1, sigma)
        if src is None:
            return None
        Am = np.array([src[p] for p in frame[:3]]).T
        if abs(np.linalg.det(Am)) < 1e-12 * np.prod(np.linalg.norm(Am, axis=0)):
            continue
        lamA = np.linalg.solve(Am, src[frame[3]])
        if np.min(np.abs(lamA)) < 1e-12:
            continue
        H = MB @ np.linalg.inv(Am * lamA)
        ok = True
        for p in PAIRS:
            u = H @ src[p]
            v = target[p]
            u, v = u / np.linalg.norm(u), v / np.linalg.norm(v)
            k = int(np.argmax(np.abs(v)))
            if np.linalg.norm(u - (u[k] / v[k]) * v) > tol:
                ok = False
                break
        if ok:
            return sigma
    return None
