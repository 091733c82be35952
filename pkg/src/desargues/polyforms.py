"""Polynomials: binary forms, sparse multivariate polynomials, univariate helpers.

Binary form convention: ``coeffs[i]`` multiplies ``t0^(d-i) * t1^i``.  A root is
a projective pair ``(r0:r1)`` with ``f(r0, r1) = 0``; the root ``(1:0)`` is
where ``t1`` vanishes and ``(0:1)`` is where ``t0`` vanishes.

Univariate polynomials are plain coefficient lists, lowest degree first.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import linalg
from .scalars import (ComplexApprox, QuadExt, common_zero, format_scalar, is_exact,
                      is_rational, sqrt_exact, adjoin_sqrt)

MAX_MULTI_DEGREE = 6
NUMERIC_ZERO = 1e-9


class PolyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# univariate helpers (coefficients low -> high, any scalar tier)


def _numeric(coeffs) -> bool:
    return any(not is_exact(c) for c in coeffs)


def _scale_of(coeffs) -> float:
    return max((abs(complex(c)) for c in coeffs), default=0.0)


def u_trim(p, ref_scale=None):
    p = list(p)
    if _numeric(p):
        s = ref_scale if ref_scale is not None else _scale_of(p)
        while p and abs(complex(p[-1])) <= NUMERIC_ZERO * max(s, 1e-300):
            p.pop()
    else:
        while p and p[-1] == 0:
            p.pop()
    return p


def u_deg(p) -> int:
    return len(u_trim(p)) - 1


def u_add(a, b):
    n = max(len(a), len(b))
    return u_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def u_sub(a, b):
    n = max(len(a), len(b))
    return u_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def u_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = x * y + out[i + j]
    return u_trim(out)


def u_scale(a, c):
    return u_trim([c * x for x in a])


def u_divmod(a, b):
    b = u_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    scale = _scale_of(a) if _numeric(a) or _numeric(b) else None
    a = u_trim(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    inv = 1 / b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        a = list(a)
        for i, bi in enumerate(b):
            a[i + k] = a[i + k] - c * bi
        a.pop()
        a = u_trim(a, scale)
    return u_trim(q), a


def u_monic(p):
    p = u_trim(p)
    if not p:
        return p
    inv = 1 / p[-1]
    return [x * inv for x in p]


def u_gcd(a, b):
    """Monic gcd by the Euclidean algorithm (tolerance-aware for numeric input)."""
    a, b = u_trim(a), u_trim(b)
    while b:
        _, r = u_divmod(a, b)
        a, b = b, r
        if _numeric(a):
            b = u_trim(b, _scale_of(a))
    return u_monic(a)


def u_deriv(p):
    return u_trim([i * p[i] for i in range(1, len(p))])


def u_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def u_compose(p, q):
    """p(q(x))."""
    acc = []
    for c in reversed(u_trim(p)):
        acc = u_add(u_mul(acc, q), [c])
    return acc


def yun(p):
    """Squarefree decomposition ``p = c * prod a_k^k``; returns ``[(a_k, k), ...]``
    with monic factors of positive degree."""
    p = u_monic(p)
    if len(p) <= 1:
        return []
    dp = u_deriv(p)
    a = u_gcd(p, dp)
    b, _ = u_divmod(p, a)
    c, _ = u_divmod(dp, a)
    d = u_sub(c, u_deriv(b))
    out = []
    k = 1
    while len(u_trim(b)) > 1:
        a = u_gcd(b, d)
        if len(a) > 1:
            out.append((a, k))
        b, _ = u_divmod(b, a)
        c, _ = u_divmod(d, a)
        d = u_sub(c, u_deriv(b))
        k += 1
    return out


def aberth_roots(coeffs, max_iter: int = 500, tol: float = 1e-15):
    """All complex roots of a univariate polynomial (low -> high coefficients).

    Aberth-Ehrlich iteration from deterministic starting points on a circle,
    followed by two Newton polishing steps per root.
    """
    c = np.array([complex(x) for x in coeffs], dtype=complex)
    while c.size and c[-1] == 0:
        c = c[:-1]
    n = c.size - 1
    if n <= 0:
        return []
    lead = c[-1]
    c = c / lead
    # leading zeros give roots at 0
    zeros = 0
    while zeros < n and abs(c[zeros]) == 0:
        zeros += 1
    if zeros:
        rest = aberth_roots(c[zeros:], max_iter, tol) if n - zeros > 0 else []
        return [0j] * zeros + rest
    hi = c[::-1]  # numpy polyval order
    dhi = np.polyder(hi)
    # Fujiwara-type bound for the starting circle
    radius = 2 * max(abs(c[n - k]) ** (1.0 / k) for k in range(1, n + 1))
    z = np.array([radius * cmath.exp(1j * (2 * np.pi * k / n + 0.4)) for k in range(n)])
    for _ in range(max_iter):
        p = np.polyval(hi, z)
        dp = np.polyval(dhi, z)
        ratio = np.where(dp != 0, p / np.where(dp != 0, dp, 1), p)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        denom = 1 - ratio * s
        w = np.where(denom != 0, ratio / np.where(denom != 0, denom, 1), ratio)
        z = z - w
        if np.all(np.abs(w) <= tol * np.maximum(1.0, np.abs(z))):
            break
    for _ in range(2):
        p = np.polyval(hi, z)
        dp = np.polyval(dhi, z)
        ok = dp != 0
        z = np.where(ok, z - p / np.where(ok, dp, 1), z)
    return sorted((complex(r) for r in z), key=lambda r: (round(r.real, 9), round(r.imag, 9)))


def rational_roots(p):
    """Rational roots of a polynomial with rational coefficients.

    Candidates come from the numeric roots; each is confirmed exactly.
    """
    p = u_trim(p)
    if len(p) <= 1:
        return []
    found = []
    for z in aberth_roots(p):
        if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
            continue
        for lim in (10 ** 6, 10 ** 12):
            q = Fraction(z.real).limit_denominator(lim)
            if q not in found and u_eval(p, q) == 0:
                found.append(q)
                break
    return found


# ---------------------------------------------------------------------------
# binary forms


class BinaryForm:
    """Dense binary form of a fixed degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        if not coeffs:
            raise PolyError("binary form needs at least one coefficient")
        self.coeffs = tuple(Fraction(c) if isinstance(c, int) else c for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def monomial(cls, d, i, c=1):
        out = [0] * (d + 1)
        out[i] = c
        return cls(out)

    @classmethod
    def linear(cls, a, b):
        """``a*t0 + b*t1``."""
        return cls([a, b])

    def is_zero(self) -> bool:
        if _numeric(self.coeffs):
            return all(abs(complex(c)) <= NUMERIC_ZERO for c in self.coeffs)
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if other.degree != self.degree:
            raise PolyError("degree mismatch")
        return BinaryForm([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if other.degree != self.degree:
            raise PolyError("degree mismatch")
        return BinaryForm([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return BinaryForm([-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [0] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = a * b + out[i + j]
            return BinaryForm(out)
        return BinaryForm([a * other for a in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = BinaryForm([1])
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, t0, t1):
        d = self.degree
        return sum((c * t0 ** (d - i) * t1 ** i for i, c in enumerate(self.coeffs) if c != 0), 0)

    def d0(self) -> "BinaryForm":
        """Partial derivative in ``t0``."""
        d = self.degree
        if d == 0:
            return BinaryForm([0])
        return BinaryForm([(d - i) * self.coeffs[i] for i in range(d)])

    def d1(self) -> "BinaryForm":
        d = self.degree
        if d == 0:
            return BinaryForm([0])
        return BinaryForm([i * self.coeffs[i] for i in range(1, d + 1)])

    def substitute(self, M) -> "BinaryForm":
        """``f(m00 t0 + m01 t1, m10 t0 + m11 t1)``."""
        x = BinaryForm([M[0][0], M[0][1]])
        y = BinaryForm([M[1][0], M[1][1]])
        d = self.degree
        zero = common_zero(self.coeffs)
        acc = BinaryForm([zero] * (d + 1))
        xp = [BinaryForm([1])]
        yp = [BinaryForm([1])]
        for _ in range(d):
            xp.append(xp[-1] * x)
            yp.append(yp[-1] * y)
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            acc = acc + (xp[d - i] * yp[i]) * c
        return acc

    def dehomogenize(self):
        """``f(1, x)`` as a univariate list (low -> high)."""
        return list(self.coeffs)

    def root_multiplicity_at_t0_zero(self) -> int:
        """Multiplicity of the root ``(0:1)``: trailing zero coefficients."""
        k = 0
        for c in reversed(self.coeffs):
            if c != 0:
                break
            k += 1
        return k

    def normalized(self) -> "BinaryForm":
        """Divide by the first nonzero coefficient."""
        return BinaryForm(linalg.normalize(list(self.coeffs)))

    def proportional(self, other: "BinaryForm") -> bool:
        return self.degree == other.degree and linalg.proportional(self.coeffs, other.coeffs)

    def to_text(self, v0="t0", v1="t1") -> str:
        d = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = []
            if d - i:
                mono.append(v0 if d - i == 1 else f"{v0}^{d - i}")
            if i:
                mono.append(v1 if i == 1 else f"{v1}^{i}")
            txt = format_scalar(c)
            if any(ch in txt[1:] for ch in "+-") or "sqrt" in txt or "i" in txt:
                txt = f"({txt})"
            if mono and txt in ("1", "-1"):
                body = ("-" if txt == "-1" else "") + "*".join(mono)
            else:
                body = "*".join([txt] + mono)
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return f"BinaryForm({self.to_text()})"


def from_univariate(p, degree):
    p = list(p) + [0] * (degree + 1 - len(p))
    return BinaryForm(p[: degree + 1])


@dataclass(frozen=True)
class BinomialQuartic:
    """``a0 t0^4 + 4 a1 t0^3 t1 + 6 a2 t0^2 t1^2 + 4 a3 t0 t1^3 + a4 t1^4``."""

    a: tuple

    def __init__(self, a):
        a = tuple(Fraction(x) if isinstance(x, int) else x for x in a)
        if len(a) != 5:
            raise PolyError("binomial quartic needs 5 coefficients")
        object.__setattr__(self, "a", a)

    def to_form(self) -> BinaryForm:
        return BinaryForm([comb(4, i) * x for i, x in enumerate(self.a)])

    @classmethod
    def from_form(cls, f: BinaryForm) -> "BinomialQuartic":
        if f.degree != 4:
            raise PolyError("expected a quartic")
        return cls([x / comb(4, i) for i, x in enumerate(f.coeffs)])

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.a)


# ---------------------------------------------------------------------------
# gcd and root structure of binary forms


def binary_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Normalized gcd of two binary forms (first nonzero coefficient 1)."""
    if f.is_zero() and g.is_zero():
        raise PolyError("gcd of two zero forms")
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    mf = _inf_mult(f)
    mg = _inf_mult(g)
    uf = u_trim(f.dehomogenize())
    ug = u_trim(g.dehomogenize())
    h = u_gcd(uf, ug)
    m = min(mf, mg)
    deg = len(h) - 1 + m
    return from_univariate(h, deg).normalized()


def _inf_mult(f: BinaryForm) -> int:
    """Multiplicity of the root (0:1), tolerance-aware."""
    return f.degree - (len(u_trim(f.dehomogenize())) - 1)


@dataclass
class RootProfile:
    """Projective roots with multiplicities."""

    entries: list = field(default_factory=list)
    uncertain: bool = False

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def multiplicities(self):
        return sorted(m for _, m in self.entries)

    def max_multiplicity(self) -> int:
        return max((m for _, m in self.entries), default=0)

    def to_text(self) -> str:
        if not self.entries:
            return "none"
        return ", ".join(f"({format_scalar(r[0])}:{format_scalar(r[1])}) x{m}"
                         for r, m in self.entries)


def _root_points_exact(h):
    """Roots ``x`` of a squarefree univariate ``h`` as projective pairs ``(1:x)``.

    Exact over Q (rational roots, then quadratic leftovers via Q(sqrt d)) and
    for linear factors over any exact field; numeric otherwise.
    """
    h = u_monic(h)
    deg = len(h) - 1
    one = Fraction(1)
    if deg <= 0:
        return []
    if deg == 1:
        return [(one, -h[0])]
    rational = all(is_rational(c) for c in h)
    if not rational and all(isinstance(c, QuadExt) or is_rational(c) for c in h) and deg == 2:
        disc = h[1] * h[1] - 4 * h[0]
        r = sqrt_exact(disc)
        if r is not None:
            return [(one, (-h[1] + r) / 2), (one, (-h[1] - r) / 2)]
    if not rational or _numeric(h):
        return [(ComplexApprox(1), ComplexApprox(z)) for z in aberth_roots(h)]
    pts = []
    rest = h
    for q in rational_roots(h):
        pts.append((one, q))
        rest, _ = u_divmod(rest, [-q, one])
    if len(rest) - 1 == 2:
        b, c = rest[1], rest[0]
        disc = b * b - 4 * c
        f = adjoin_sqrt(disc)
        r = f.sqrt
        pts.append((one, (-b + r) / 2))
        pts.append((one, (-b - r) / 2))
    elif len(rest) - 1 > 2:
        pts.extend(_quadratic_factor_roots(rest))
    return pts


def _quadratic_factor_roots(h):
    """Split a rational polynomial into exact rational quadratics where possible."""
    pts = []
    one = Fraction(1)
    zs = aberth_roots(h)
    used = [False] * len(zs)
    rest = h
    for i, a in enumerate(zs):
        if used[i]:
            continue
        for j in range(i + 1, len(zs)):
            if used[j]:
                continue
            b = zs[j]
            s, p = a + b, a * b
            if abs(s.imag) > 1e-7 or abs(p.imag) > 1e-7:
                continue
            cand = [Fraction(p.real).limit_denominator(10 ** 9), -Fraction(s.real).limit_denominator(10 ** 9), one]
            q, r = u_divmod(rest, cand)
            if not r:
                rest = q
                used[i] = used[j] = True
                disc = cand[1] ** 2 - 4 * cand[0]
                root = adjoin_sqrt(disc).sqrt
                pts.append((one, (-cand[1] + root) / 2))
                pts.append((one, (-cand[1] - root) / 2))
                break
    if len(rest) > 1:
        pts.extend((ComplexApprox(1), ComplexApprox(z)) for z in aberth_roots(rest))
    return pts


def root_profile(f: BinaryForm) -> RootProfile:
    """All roots of ``f`` with multiplicities."""
    if f.is_zero():
        raise PolyError("zero form")
    prof = RootProfile()
    m_inf = _inf_mult(f)
    if m_inf:
        prof.entries.append(((Fraction(0), Fraction(1)), m_inf))
    u = u_trim(f.dehomogenize())
    if _numeric(u):
        return _numeric_profile(u, prof)
    for factor, k in yun(u):
        for pt in _root_points_exact(factor):
            prof.entries.append((pt, k))
    return prof


def _numeric_profile(u, prof, radius=1e-6):
    zs = aberth_roots(u)
    clusters = []
    for z in zs:
        for cl in clusters:
            if abs(cl[0] - z) < radius * max(1.0, abs(z)):
                cl.append(z)
                break
        else:
            clusters.append([z])
    centers = [sum(c) / len(c) for c in clusters]
    for i, a in enumerate(centers):
        for b in centers[i + 1:]:
            if abs(a - b) < 10 * radius * max(1.0, abs(a)):
                prof.uncertain = True
    for c, cl in zip(centers, clusters):
        prof.entries.append(((ComplexApprox(1), ComplexApprox(c)), len(cl)))
    return prof


def multiple_root_profile(f: BinaryForm) -> RootProfile:
    """Roots of multiplicity >= 2, read off from ``gcd(df/dt0, df/dt1)``."""
    if f.is_zero():
        raise PolyError("zero form")
    if f.degree < 2:
        return RootProfile()
    g1 = binary_gcd(f.d0(), f.d1())
    if g1.degree == 0:
        return RootProfile()
    inner = root_profile(g1)
    return RootProfile([(pt, m + 1) for pt, m in inner.entries], inner.uncertain)


def is_stable(f: BinaryForm) -> bool:
    """No root of multiplicity >= 3 (degree-6 forms)."""
    if f.is_zero():
        raise PolyError("zero form")
    g1 = binary_gcd(f.d0(), f.d1())
    if g1.degree <= 1:
        return True
    g2 = binary_gcd(g1.d0(), g1.d1())
    return g2.degree == 0


def discriminant_cubic(c):
    c0, c1, c2, c3 = c
    if all(x == 0 for x in c):
        raise PolyError("zero cubic")
    return (18 * c0 * c1 * c2 * c3 - 4 * c1 ** 3 * c3 + c1 ** 2 * c2 ** 2
            - 4 * c0 * c2 ** 3 - 27 * c0 ** 2 * c3 ** 2)


# ---------------------------------------------------------------------------
# multivariate polynomials


class MultiPoly:
    """Sparse polynomial in 3 or 4 variables, total degree at most 6."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        if nvars not in (3, 4):
            raise PolyError("MultiPoly supports 3 or 4 variables")
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise PolyError("exponent length mismatch")
            if sum(e) > MAX_MULTI_DEGREE:
                raise PolyError(f"total degree {sum(e)} exceeds {MAX_MULTI_DEGREE}")
            if c != 0:
                clean[e] = Fraction(c) if isinstance(c, int) else c
        self.terms = clean

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs):
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def power_sum(cls, alpha, k):
        """``sum_i alpha_i z_i^k``."""
        n = len(alpha)
        return cls(n, {tuple(k if j == i else 0 for j in range(n)): a for i, a in enumerate(alpha)})

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise PolyError("variable count mismatch")
            return other
        return MultiPoly.const(self.nvars, other)

    def __add__(self, other):
        o = self._lift(other)
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t[e] + c if e in t else c
        return MultiPoly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if other == 0:
                return MultiPoly(self.nvars)
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        o = self._lift(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                t[e] = t[e] + v if e in t else v
        return MultiPoly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MultiPoly.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self.terms == {(0,) * self.nvars: other}

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def __call__(self, *point):
        acc = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            acc = v + acc
        return acc

    def diff(self, i) -> "MultiPoly":
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return MultiPoly(self.nvars, t)

    def compose_binary(self, forms) -> BinaryForm:
        """Substitute homogeneous binary forms of a common degree for the variables."""
        if not self.is_homogeneous():
            raise PolyError("compose_binary needs a homogeneous polynomial")
        d = self.degree()
        k = forms[0].degree
        zero = common_zero([c for f in forms for c in f.coeffs] + list(self.terms.values()))
        acc = BinaryForm([zero] * (d * k + 1))
        cache = {}
        for e, c in self.terms.items():
            prod = BinaryForm([c])
            for i, p in enumerate(e):
                if p:
                    key = (i, p)
                    if key not in cache:
                        cache[key] = forms[i] ** p
                    prod = prod * cache[key]
            acc = acc + prod
        return acc

    def linear_substitute(self, rows):
        """Replace ``z_i`` by the linear form ``sum_j rows[i][j] w_j`` (new variable count = len(rows[0]))."""
        m = len(rows[0])
        lin = [MultiPoly.linear(r) if m in (3, 4) else None for r in rows]
        acc = MultiPoly(m)
        for e, c in self.terms.items():
            prod = MultiPoly.const(m, c)
            for i, p in enumerate(e):
                if p:
                    prod = prod * lin[i] ** p
            acc = acc + prod
        return acc

    def to_text(self, names=None) -> str:
        names = names or [f"z{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
            parts.append("*".join([format_scalar(c)] + mono))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"MultiPoly({self.to_text()})"


def _as_poly(x, nvars):
    return x if isinstance(x, MultiPoly) else MultiPoly.const(nvars, x)


def _nvars(M):
    for row in M:
        for x in row:
            if isinstance(x, MultiPoly):
                return x.nvars
    return 4


def _check_fields(M):
    vals = []
    for row in M:
        for x in row:
            vals.extend(x.terms.values() if isinstance(x, MultiPoly) else [x])
    kinds = set()
    for v in vals:
        if isinstance(v, QuadExt):
            kinds.add(("quad", v.d))
        elif isinstance(v, ComplexApprox):
            kinds.add(("C",))
        elif not is_rational(v):
            kinds.add((type(v).__name__, getattr(v, "field", None)))
    if len(kinds) > 1:
        raise PolyError("matrix entries from incompatible fields")


def poly_det(M) -> MultiPoly:
    """Determinant by cofactor expansion along the first row."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise PolyError("square matrix required")
    if n > 4:
        raise PolyError("size at most 4")
    _check_fields(M)
    nv = _nvars(M)
    P = [[_as_poly(x, nv) for x in row] for row in M]
    return _cofactor(P)


def _cofactor(P):
    n = len(P)
    if n == 1:
        return P[0][0]
    if n == 2:
        return P[0][0] * P[1][1] - P[0][1] * P[1][0]
    acc = MultiPoly(P[0][0].nvars)
    for j in range(n):
        if P[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in P[1:]]
        term = P[0][j] * _cofactor(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def permutation_det(M) -> MultiPoly:
    """Leibniz-formula determinant, an independent check on :func:`poly_det`."""
    n = len(M)
    nv = _nvars(M)
    P = [[_as_poly(x, nv) for x in row] for row in M]
    acc = MultiPoly(nv)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = MultiPoly.const(nv, 1)
        for i in range(n):
            term = term * P[i][perm[i]]
            if term.is_zero():
                break
        acc = acc - term if inv % 2 else acc + term
    return acc


def _monomials(nvars, degs):
    out = []
    for d in degs:
        for e in itertools.product(range(d + 1), repeat=nvars):
            if sum(e) == d:
                out.append(e)
    return out


def ideal_combination(T: MultiPoly, gens, degrees):
    """Solve ``T = sum_i A_i * gens[i]`` with ``A_i`` of the listed degrees.

    ``degrees[i]`` is a list of admissible monomial degrees for ``A_i``.
    Returns the cofactors or ``None``; the result is re-expanded and checked.
    """
    n = T.nvars
    if T.is_zero():
        return [MultiPoly(n) for _ in gens]
    monos = [_monomials(n, [d for d in degs if d >= 0]) for degs in degrees]
    cols = []
    for g, mons in zip(gens, monos):
        for m in mons:
            cols.append(g * MultiPoly(n, {m: 1}))
    if not cols:
        return None
    rows = sorted(set(T.terms) | {e for c in cols for e in c.terms})
    index = {e: i for i, e in enumerate(rows)}
    values = list(T.terms.values()) + [v for g in gens for v in g.terms.values()]
    zero = common_zero(values)
    A = [[zero] * len(cols) for _ in rows]
    for j, c in enumerate(cols):
        for e, v in c.terms.items():
            A[index[e]][j] = v
    b = [T.terms.get(e, zero) for e in rows]
    x = linalg.solve(A, b)
    if x is None:
        return None
    out, pos = [], 0
    for mons in monos:
        out.append(MultiPoly(n, {m: x[pos + i] for i, m in enumerate(mons)}))
        pos += len(mons)
    check = MultiPoly(n)
    for a, g in zip(out, gens):
        check = check + a * g
    if check != T:
        raise PolyError("cofactor re-expansion failed")
    return out


def ideal_member_bounded(T: MultiPoly, L: MultiPoly, Q: MultiPoly):
    """Cofactors ``(A, B)`` with ``T = A*L + B*Q``, or ``None``.

    Degree bounds ``deg A <= deg T - 1`` and ``deg B <= deg T - 2``.  When all
    three inputs are homogeneous the cofactors are searched among homogeneous
    polynomials of the matching degree, which is equivalent.
    """
    if L.is_zero() or Q.is_zero():
        raise PolyError("zero generator")
    n = T.nvars
    if T.is_zero():
        return MultiPoly(n), MultiPoly(n)
    dT = T.degree()
    if T.is_homogeneous() and L.is_homogeneous() and Q.is_homogeneous():
        degA = [dT - L.degree()]
        degB = [dT - Q.degree()]
    else:
        degA = list(range(0, dT))
        degB = list(range(0, dT - 1))
    res = ideal_combination(T, [L, Q], [degA, degB])
    return None if res is None else tuple(res)
