"""The Jacobian map on pencils of binary quartics, seen on Gr(1,4) in P^9.

A pencil spanned by binomial coefficient vectors ``a, b`` has Plücker
coordinates ``p_ij = a_i b_j - a_j b_i`` (0 <= i < j <= 4).  Its Jacobian is
``16 * q(p)`` where ``q`` is the linear projection

    q(p) = (p01, 3 p02, 3(2 p12 + p03), 8 p13 + p04, 3(2 p23 + p14), 3 p24, p34)

read as the coefficients of a binary sextic.  The centre of ``q`` is a plane
that misses the Grassmannian, so the fibres of ``q`` restricted to Gr(1,4)
are finite, of length 5.
"""

from __future__ import annotations

import itertools
from math import comb
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from . import linalg
from .conics import admissible
from .polyforms import (BinaryForm, BinomialQuartic, MultiPoly, PolyError, aberth_roots, u_add,
                        u_deriv, u_divmod, u_eval, u_gcd, u_mul, u_scale, u_sub, u_trim, yun)
from .scalars import ComplexApprox, QuadExt, embed_numeric, format_scalar, is_exact

INDEX = ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
POS = {ij: k for k, ij in enumerate(INDEX)}
RESIDUAL_TOL = 1e-9
CLUSTER_RADIUS = 1e-6
MP_DPS = 60


class GrassmannError(ValueError):
    pass


def _key(i, j):
    return POS[(i, j)] if i < j else POS[(j, i)]


def pl(p, i, j):
    """Signed coordinate ``p_ij`` for any ordered pair."""
    if i == j:
        return 0 * p[0]
    v = p[POS[(min(i, j), max(i, j))]]
    return v if i < j else -v


def relations(p):
    """The five quadrics ``p_ab p_cd - p_ac p_bd + p_ad p_bc`` (index m omitted)."""
    out = []
    for m in range(5):
        a, b, c, d = [k for k in range(5) if k != m]
        out.append(pl(p, a, b) * pl(p, c, d) - pl(p, a, c) * pl(p, b, d) + pl(p, a, d) * pl(p, b, c))
    return out


class PluckerPoint:
    __slots__ = ("p", "on_grassmannian")

    def __init__(self, p, check=True):
        p = tuple(Fraction(x) if isinstance(x, int) else x for x in p)
        if len(p) != 10:
            raise GrassmannError("10 Plücker coordinates expected")
        if all(x == 0 for x in p):
            raise GrassmannError("zero Plücker vector")
        self.p = p
        self.on_grassmannian = all(r == 0 for r in relations(p)) if check else None

    def __getitem__(self, ij):
        i, j = ij
        return pl(self.p, i, j)

    def __eq__(self, other):
        return isinstance(other, PluckerPoint) and linalg.proportional(self.p, other.p)

    __hash__ = None

    def normalized_complex(self):
        v = np.array([complex(x) for x in self.p])
        k = int(np.argmax(np.abs(v)))
        return v / v[k]

    def pencil(self):
        """Two binomial coefficient vectors spanning the pencil."""
        k = max(range(10), key=lambda t: abs(complex(self.p[t])))
        i, j = INDEX[k]
        f = [pl(self.p, i, m) for m in range(5)]
        g = [pl(self.p, j, m) for m in range(5)]
        return BinomialQuartic(f), BinomialQuartic(g)

    def to_text(self) -> str:
        return "[" + ", ".join(f"p{i}{j}={format_scalar(x)}" for (i, j), x in zip(INDEX, self.p)) + "]"

    def __repr__(self):
        return f"PluckerPoint{self.to_text()}"


def _coeffs(q):
    if isinstance(q, BinomialQuartic):
        return list(q.a)
    if isinstance(q, BinaryForm):
        return list(BinomialQuartic.from_form(q).a)
    return list(q)


def pluecker(f, g) -> PluckerPoint:
    a, b = _coeffs(f), _coeffs(g)
    p = [a[i] * b[j] - a[j] * b[i] for i, j in INDEX]
    if all(x == 0 for x in p):
        raise GrassmannError("pencil generators are dependent")
    return PluckerPoint(p)


def projection_coeffs(p):
    g = lambda i, j: p[POS[(i, j)]]
    return [g(0, 1), 3 * g(0, 2), 3 * (2 * g(1, 2) + g(0, 3)), 8 * g(1, 3) + g(0, 4),
            3 * (2 * g(2, 3) + g(1, 4)), 3 * g(2, 4), g(3, 4)]


def jac_projection(p) -> BinaryForm:
    v = p.p if isinstance(p, PluckerPoint) else tuple(p)
    s = projection_coeffs(v)
    if all(x == 0 for x in s):
        raise GrassmannError("center of projection")
    return BinaryForm(s)


def in_H(f, g) -> bool:
    return not admissible(_as_quartic(f), _as_quartic(g))


def _as_quartic(q):
    return q if isinstance(q, BinomialQuartic) else BinomialQuartic(_coeffs(q))


# ---------------------------------------------------------------------------
# the centre of projection


def center_parametrization(drop=None):
    """Coordinates of a general point of the centre plane as linear forms.

    Free variables: ``a = p12, b = p13, c = p23`` and, if ``drop`` names one of
    the seven defining equations, one further variable.  Returns
    ``(nvars, forms)`` with ``forms`` ten MultiPoly objects.
    """
    extra = drop is not None
    n = 4 if extra else 3
    a, b, c = (MultiPoly.var(n, k) for k in range(3))
    d = MultiPoly.var(n, 3) if extra else None
    z = MultiPoly(n)
    v = {ij: z for ij in INDEX}
    v[(1, 2)], v[(1, 3)], v[(2, 3)] = a, b, c
    v[(0, 3)] = -2 * a
    v[(0, 4)] = -8 * b
    v[(1, 4)] = -2 * c
    if extra:
        # the dropped equation frees one coordinate
        targets = {0: (0, 1), 1: (0, 2), 5: (2, 4), 6: (3, 4)}
        if drop not in targets:
            raise GrassmannError("only the pure-coordinate equations 0, 1, 5, 6 can be dropped")
        v[targets[drop]] = d
    return n, [v[ij] for ij in INDEX]


@dataclass
class CenterCertificate:
    disjoint: bool
    trace: list = field(default_factory=list)
    witness: list | None = None


def _single_var_square(poly):
    if len(poly.terms) != 1:
        return None
    (e, _), = poly.terms.items()
    nz = [i for i, k in enumerate(e) if k]
    if len(nz) == 1 and sum(e) >= 1:
        return nz[0]
    return None


def _product_vars(poly):
    if len(poly.terms) != 1:
        return None
    (e, _), = poly.terms.items()
    nz = [i for i, k in enumerate(e) if k]
    return nz if len(nz) >= 2 else None


def _substitute_zero(poly, var):
    return MultiPoly(poly.nvars, {e: c for e, c in poly.terms.items() if e[var] == 0})


def _case_analysis(polys, alive, names, trace, depth=0):
    """Common projective zero of monomial-driven quadrics; returns witness or None."""
    pad = "  " * depth
    polys = [p for p in polys if not p.is_zero()]
    for p in polys:
        v = _single_var_square(p)
        if v is not None and v in alive:
            trace.append(f"{pad}{p.to_text(names)} = 0 forces {names[v]} = 0")
            rest = [_substitute_zero(q, v) for q in polys]
            return _case_analysis(rest, [a for a in alive if a != v], names, trace, depth)
    for p in polys:
        vs = _product_vars(p)
        if vs:
            trace.append(f"{pad}{p.to_text(names)} = 0: branch on " + " or ".join(f"{names[v]} = 0" for v in vs))
            for v in vs:
                trace.append(f"{pad}case {names[v]} = 0")
                rest = [_substitute_zero(q, v) for q in polys]
                w = _case_analysis(rest, [a for a in alive if a != v], names, trace, depth + 1)
                if w is not None:
                    return w
            return None
    if not polys:
        if not alive:
            trace.append(f"{pad}all variables vanish: no projective point")
            return None
        w = [0] * len(names)
        w[alive[0]] = 1
        trace.append(f"{pad}no equations left; {names[alive[0]]} is free")
        return w
    trace.append(f"{pad}case analysis stuck on {[p.to_text(names) for p in polys]}")
    raise GrassmannError("case analysis inconclusive")


def center_disjoint_check(drop=None) -> CenterCertificate:
    """Certify that the centre plane misses Gr(1,4) (or exhibit a point when an equation is dropped)."""
    n, forms = center_parametrization(drop)
    names = ["p12", "p13", "p23", "d"][:n]
    rels = relations(forms)
    trace = [f"R{m} restricted: {r.to_text(names)}" for m, r in enumerate(rels)]
    w = _case_analysis(rels, list(range(n)), names, trace)
    if w is None:
        return CenterCertificate(True, trace)
    point = [f(*[Fraction(x) for x in w]) for f in forms]
    assert all(r == 0 for r in relations(point))
    return CenterCertificate(False, trace, point)


def plane_meets_grassmannian(basis, tol=1e-9):
    """Numeric check for a 2-plane of P^9 spanned by three vectors.

    The five relations restrict to ternary quadrics; two of them are
    intersected (4 points) and the rest are evaluated there.
    """
    from .conics import base_points
    n = 3
    x = [MultiPoly.var(n, k) for k in range(3)]
    forms = [sum((x[k] * basis[k][i] for k in range(3)), MultiPoly(n)) for i in range(10)]
    quads = relations(forms)
    mats = []
    for q in quads:
        M = [[0] * 3 for _ in range(3)]
        for e, c in q.terms.items():
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            i, j = idx
            if i == j:
                M[i][i] = M[i][i] + c
            else:
                M[i][j] = M[i][j] + c / 2
                M[j][i] = M[j][i] + c / 2
        mats.append(M)
    try:
        pts = base_points(mats[0], mats[1])
    except Exception:
        return None
    for pt in pts:
        v = np.array([complex(c) for c in pt])
        v = v / np.linalg.norm(v)
        if all(abs(complex(sum(M[i][j] * v[i] * v[j] for i in range(3) for j in range(3)))) < tol
               for M in mats[2:]):
            return True
    return False


# ---------------------------------------------------------------------------
# fibres


@dataclass
class FiberSolution:
    pencils: list              # (PluckerPoint over ComplexApprox, multiplicity, residual)
    total_multiplicity: int
    uncertain: bool = False
    transform: list | None = None

    def to_dict(self):
        return {
            "total_multiplicity": self.total_multiplicity,
            "uncertain_multiplicity": self.uncertain,
            "pencils": [{"pluecker": [format_scalar(x) for x in p.p], "multiplicity": m,
                         "residual": r} for p, m, r in self.pencils],
        }


def _fiber_equations(s):
    """Univariate eliminants ``E2, E3, E4`` in ``z = p23`` and the rational maps for x, y."""
    s0, s1, s2, s3, s4, s5, s6 = s
    third = Fraction(1, 3)
    # R0: s6 x - (s5/3) y = 2 z^2 - (s4/3) z ; R1: (2 s5/3) x - 8 z y = -s1 s6/3 + s2 s5/9 - s3 z
    r0 = [0 * s0, -s4 * third, 2 + 0 * s0]
    r1 = [-s1 * s6 * third + s2 * s5 / 9, -s3]
    det = [2 * s5 * s5 / 9, -8 * s6]
    Nx = u_add(u_mul([0, -8], r0), u_scale(r1, s5 * third))
    Ny = u_sub(u_scale(r1, s6), u_scale(r0, 2 * s5 * third))
    det2 = u_mul(det, det)
    c1 = u_sub(u_scale(det, s2 * third), u_scale(Nx, 2))          # (s2/3 - 2x) * det
    c2 = [s4 * third, -2]                                          # s4/3 - 2z
    E2 = u_add(u_add(u_scale(det2, s0 * s6), u_scale(u_mul(u_mul(c1, c2), det), -1)),
               u_sub(u_mul(u_scale(Ny, s3), det), u_scale(u_mul(Ny, Ny), 8)))
    E3 = u_add(u_sub(u_scale(det2, s0 * s5 * third), u_mul(u_scale(det2, s1 * third), c2)),
               u_sub(u_mul(u_scale(Nx, s3), det), u_scale(u_mul(Ny, Nx), 8)))
    E4 = u_add(u_sub(u_mul([0, s0], det2), u_mul(u_scale(Ny, s1 * third), det)),
               u_sub(u_mul(u_scale(Nx, s2 * third), det), u_scale(u_mul(Nx, Nx), 2)))
    return E2, E3, E4, Nx, Ny, det


def _point_from_z(s, z, Nx, Ny, det):
    d = u_eval(det, z)
    x = u_eval(Nx, z) / d
    y = u_eval(Ny, z) / d
    s0, s1, s2, s3, s4, s5, s6 = s
    v = {(0, 1): s0, (0, 2): s1 / 3, (2, 4): s5 / 3, (3, 4): s6,
         (1, 2): x, (1, 3): y, (2, 3): z,
         (0, 3): s2 / 3 - 2 * x, (0, 4): s3 - 8 * y, (1, 4): s4 / 3 - 2 * z}
    return [v[ij] for ij in INDEX]


def residual(p, s) -> float:
    """Plücker relations and projection mismatch of a normalized solution."""
    v = np.array([complex(x) for x in p])
    v = v / np.max(np.abs(v))
    rel = max(abs(r) for r in relations(list(v)))
    img = np.array([complex(x) for x in projection_coeffs(list(v))])
    tgt = np.array([complex(x) for x in s])
    k = int(np.argmax(np.abs(tgt)))
    lam = img[k] / tgt[k]
    mis = np.max(np.abs(img - lam * tgt)) / max(np.max(np.abs(img)), 1e-300)
    return float(max(rel, mis))


MOBIUS = ([[1, 0], [0, 1]], [[1, 1], [0, 1]], [[1, 0], [1, 1]], [[1, 2], [1, 3]],
          [[2, 1], [1, 1]], [[1, -1], [1, 2]], [[3, 1], [2, 5]], [[1, 3], [-2, 1]])


def fiber_solve(s) -> FiberSolution:
    """Pencils with Jacobian proportional to the sextic ``s``."""
    s_form = s if isinstance(s, BinaryForm) else BinaryForm(s)
    if s_form.degree != 6:
        raise GrassmannError("a binary sextic is required")
    if s_form.is_zero():
        raise GrassmannError("zero sextic")
    last = None
    for M in MOBIUS:
        M = [[Fraction(x) for x in r] for r in M]
        ident = M == [[1, 0], [0, 1]]
        t = s_form if ident else s_form.substitute(M)
        back = None if ident else linalg.inverse(M)
        sol = _fiber_generic(list(t.coeffs), back, list(s_form.coeffs))
        if sol is None:
            continue
        if not ident:
            sol.transform = M
        if sol.total_multiplicity == 5 and all(r < RESIDUAL_TOL for _, _, r in sol.pencils):
            return sol
        last = sol if last is None or sol.total_multiplicity > last.total_multiplicity else last
    return last or FiberSolution([], 0, True)


def _subst_mp(a, M):
    """Binomial quartic coefficients of ``f(M (t0, t1))`` at working precision."""
    c = [comb(4, k) * x for k, x in enumerate(a)]
    x = [M[0][0], M[0][1]]
    y = [M[1][0], M[1][1]]

    def mul(p, q):
        out = [0] * (len(p) + len(q) - 1)
        for i, u in enumerate(p):
            for j, v in enumerate(q):
                out[i + j] += u * v
        return out

    acc = [0] * 5
    for k, ck in enumerate(c):
        term = [1]
        for _ in range(4 - k):
            term = mul(term, x)
        for _ in range(k):
            term = mul(term, y)
        acc = [u + ck * v for u, v in zip(acc, term)]
    return [v / comb(4, k) for k, v in enumerate(acc)]


def _pull_back(p, M):
    """Plücker vector of the pencil of ``p`` composed with ``M``."""
    k = max(range(10), key=lambda t: abs(p[t]))
    i, j = INDEX[k]
    f = _subst_mp([pl(p, i, m) for m in range(5)], M)
    g = _subst_mp([pl(p, j, m) for m in range(5)], M)
    return [f[a] * g[b] - f[b] * g[a] for a, b in INDEX]


def _residual_mp(p, s):
    top = max(abs(x) for x in p)
    v = [x / top for x in p]
    rel = max(abs(r) for r in relations(v))
    img = projection_coeffs(v)
    k = max(range(7), key=lambda t: abs(s[t]))
    lam = img[k] / s[k]
    mis = max(abs(u - lam * w) for u, w in zip(img, s)) / max(max(abs(u) for u in img), mpmath.mpf(10) ** -300)
    return float(max(rel, mis))


def _numeric_plucker(q, m, s, r=None):
    v = np.array([complex(x) for x in q])
    v = v / v[int(np.argmax(np.abs(v)))]
    p = PluckerPoint([ComplexApprox(complex(x)) for x in v], check=False)
    return p, m, residual(v, s) if r is None else r


def _to_mp(x):
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, QuadExt) and isinstance(x.d, Fraction):
        # same branch as embed_numeric: positive root, or +i times it
        return _to_mp(x.u) + _to_mp(x.v) * mpmath.sqrt(_to_mp(x.d))
    return mpmath.mpc(complex(x))


def _mp_polish(coeffs, z, steps: int = 12):
    """Newton on an exact squarefree factor, evaluated at ``MP_DPS`` digits."""
    cf = [_to_mp(c) for c in coeffs]
    dcf = [k * c for k, c in enumerate(cf)][1:]
    z = mpmath.mpc(z)
    for _ in range(steps):
        step = mpmath.polyval(cf[::-1], z) / mpmath.polyval(dcf[::-1], z)
        z -= step
        if abs(step) <= mpmath.mpf(10) ** (-MP_DPS + 5) * max(1, abs(z)):
            break
    return z


def _mp_roots(factor):
    """Roots of an exact univariate factor, found and polished at ``MP_DPS`` digits."""
    cf = [_to_mp(c) for c in factor][::-1]
    try:
        return list(mpmath.polyroots(cf, maxsteps=200, extraprec=4 * MP_DPS))
    except mpmath.libmp.NoConvergence:
        return [_mp_polish(factor, r) for r in aberth_roots([complex(c) for c in factor])]


def _fiber_generic(s, back=None, target=None):
    """Fiber in the standard chart.  ``back`` maps solutions to the sextic ``target``."""
    exact = all(is_exact(x) for x in s) and (target is None or all(is_exact(x) for x in target))
    E2, E3, E4, Nx, Ny, det = _fiber_equations(s)
    if not u_trim(det):
        return None
    pencils, total = [], 0
    if exact:
        G = u_gcd(u_gcd(E2, E3), E4)
        if len(G) - 1 != 5:
            return None
        if len(u_gcd(G, det)) > 1:
            return None
        uncertain = False
        with mpmath.workdps(MP_DPS):
            smp = [_to_mp(c) for c in s]
            tmp = smp if target is None else [_to_mp(c) for c in target]
            Mmp = None if back is None else [[_to_mp(x) for x in r] for r in back]
            Nxm, Nym, detm = ([_to_mp(c) for c in P][::-1] for P in (Nx, Ny, det))
            for factor, k in yun(G):
                for z in _mp_roots(factor):
                    d = mpmath.polyval(detm, z)
                    if d == 0:
                        return None
                    x, y = mpmath.polyval(Nxm, z) / d, mpmath.polyval(Nym, z) / d
                    p = _chart_point(smp, x, y, z)
                    if Mmp is not None:
                        p = _pull_back(p, Mmp)
                    r = _residual_mp(p, tmp)
                    if r >= RESIDUAL_TOL:
                        continue
                    pc = [complex(c) for c in p]
                    pencils.append(_numeric_plucker(pc, k, None, r))
                    total += k
    else:
        sn = [complex(x) for x in s]
        tn = sn if target is None else [complex(x) for x in target]
        roots, uncertain = _numeric_roots(E2, E3, E4)
        Nxn, Nyn, detn = ([complex(c) for c in P] for P in (Nx, Ny, det))
        for z, k in roots:
            z = _polish(z, [E2, E3, E4])
            try:
                p = _point_from_z(sn, z, Nxn, Nyn, detn)
            except ZeroDivisionError:
                return None
            p = _refine(sn, p)
            if back is not None:
                p = _pull_back(p, [[complex(x) for x in r] for r in back])
            if residual(p, tn) >= RESIDUAL_TOL:
                continue
            pencils.append(_numeric_plucker(p, k, tn))
            total += k
    if not pencils:
        return None
    pencils.sort(key=lambda t: tuple(np.round(t[0].normalized_complex(), 8).view(float)))
    return FiberSolution(pencils, total, uncertain)


def _chart_point(s, x, y, z):
    s0, s1, s2, s3, s4, s5, s6 = s
    v = {(0, 1): s0, (0, 2): s1 / 3, (2, 4): s5 / 3, (3, 4): s6,
         (1, 2): x, (1, 3): y, (2, 3): z,
         (0, 3): s2 / 3 - 2 * x, (0, 4): s3 - 8 * y, (1, 4): s4 / 3 - 2 * z}
    return [v[ij] for ij in INDEX]


_DIRS = []
for _u in ((1, 2), (1, 3), (2, 3)):
    _d = np.zeros(10, dtype=complex)
    _d[POS[_u]] = 1
    _DIRS.append(_d)
_DIRS[0][POS[(0, 3)]] = -2
_DIRS[1][POS[(0, 4)]] = -8
_DIRS[2][POS[(1, 4)]] = -2


def _refine(s, p, steps: int = 30):
    """Gauss-Newton on the five relations, moving only along the centre directions."""
    p = np.array(p, dtype=complex)
    scale = max(np.max(np.abs(p)), 1e-300)
    p = p / scale
    dirs = [d / scale for d in _DIRS]
    for _ in range(steps):
        F = np.array(relations(list(p)))
        if np.max(np.abs(F)) < 1e-17:
            break
        # relations are quadratic, so the symmetric difference is the exact directional derivative
        J = np.array([(np.array(relations(list(p + d))) - np.array(relations(list(p - d)))) / 2
                      for d in dirs]).T
        step = np.linalg.lstsq(J, -F, rcond=None)[0]
        p = p + sum(c * d for c, d in zip(step, dirs))
        if np.linalg.norm(step) < 1e-16:
            break
    return list(p)


def _polish(z, polys):
    """Newton steps on the lowest-degree eliminant with a simple root nearby."""
    for P in polys:
        Pn = [complex(c) for c in u_trim(P)]
        if len(Pn) < 2:
            continue
        dP = u_deriv(Pn)
        for _ in range(3):
            d = u_eval(dP, z)
            if d == 0 or abs(d) < 1e-12 * max(1.0, abs(u_eval(Pn, z))):
                break
            step = u_eval(Pn, z) / d
            if abs(step) > 1e-6 * max(1.0, abs(z)):
                break
            z -= step
        break
    return z


def _numeric_roots(E2, E3, E4):
    cand = aberth_roots(E4)
    others = [aberth_roots(E2), aberth_roots(E3)]
    clusters = []
    for z in cand:
        for cl in clusters:
            if abs(cl[0] - z) < CLUSTER_RADIUS * max(1.0, abs(z)):
                cl.append(z)
                break
        else:
            clusters.append([z])
    out, centers = [], []
    for cl in clusters:
        c = sum(cl) / len(cl)
        m = len(cl)
        for rs in others:
            m = min(m, sum(1 for r in rs if abs(r - c) < CLUSTER_RADIUS * max(1.0, abs(c))))
        if m:
            out.append((c, m))
            centers.append(c)
    uncertain = any(abs(a - b) < 10 * CLUSTER_RADIUS * max(1.0, abs(a))
                    for i, a in enumerate(centers) for b in centers[i + 1:])
    return out, uncertain


# ---------------------------------------------------------------------------
# differential


def jac_rank(f, g) -> int:
    """Rank of the differential of Gr(1,4) -> P^6 at the pencil."""
    a, b = _coeffs(f), _coeffs(g)
    M = [a, b]
    p = [a[i] * b[j] - a[j] * b[i] for i, j in INDEX]
    if all(x == 0 for x in p):
        raise GrassmannError("pencil generators are dependent")
    k = max(range(10), key=lambda t: abs(complex(p[t])))
    i, j = INDEX[k]
    C = [[M[0][i], M[0][j]], [M[1][i], M[1][j]]]
    Ci = linalg.inverse(C)
    N = linalg.matmul(Ci, M)  # columns i, j form the identity
    free = [c for c in range(5) if c not in (i, j)]
    F = projection_coeffs([N[0][u] * N[1][v] - N[0][v] * N[1][u] for u, v in INDEX])
    cols = []
    for r in (0, 1):
        for c in free:
            dp = []
            for u, v in INDEX:
                val = 0
                if r == 0:
                    if u == c:
                        val = val + N[1][v]
                    if v == c:
                        val = val - N[1][u]
                else:
                    if v == c:
                        val = val + N[0][u]
                    if u == c:
                        val = val - N[0][v]
                dp.append(val)
            cols.append(projection_coeffs(dp))
    cols.append(F)
    mat = linalg.transpose(cols)
    if not all(is_exact(x) for row in mat for x in row):
        mat = [[ComplexApprox(complex(x)) for x in row] for row in mat]
    return linalg.rank(mat) - 1
