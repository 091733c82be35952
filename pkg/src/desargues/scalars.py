"""Scalar field tower used throughout the package.

Four kinds of coefficients appear:

* ``Fraction`` -- exact rationals (the stdlib type is used as-is).
* :class:`QuadExt` -- elements ``u + v*sqrt(d)`` of a quadratic extension of a
  base field (the rationals, or a :class:`QuarticField`).
* :class:`QuarticFieldElem` -- elements of ``Q[x]/(m(x))`` for a fixed monic
  irreducible quartic ``m``.
* :class:`ComplexApprox` -- double precision complex numbers compared with an
  explicit tolerance.

Rational constants (``int`` / ``Fraction``) mix freely with every tier since
they lie in every field.  Anything else must be converted explicitly: a
``QuadExt`` never silently meets a ``QuarticFieldElem`` or a ``ComplexApprox``.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

import numpy as np

Rational = Fraction

DEFAULT_TOL = 1e-9

_EXACT_RATIONAL = (int, Fraction)


class ScalarError(ValueError):
    pass


# ---------------------------------------------------------------------------
# rational helpers


def is_rational(x) -> bool:
    return isinstance(x, _EXACT_RATIONAL) and not isinstance(x, bool)


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def rational_sqrt(q) -> Fraction | None:
    """Exact square root of a rational, or ``None`` if ``q`` is not a square."""
    q = Fraction(q)
    if q < 0:
        return None
    a = _isqrt_exact(q.numerator)
    b = _isqrt_exact(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def _squarefree_split(n: int) -> tuple[int, int]:
    """Write ``n = core * square**2`` removing square factors found by trial division."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    square = 1
    p = 2
    while p * p <= n and p < 100_000:
        while n % (p * p) == 0:
            n //= p * p
            square *= p
        p += 1 if p == 2 else 2
    r = _isqrt_exact(n)
    if r is not None and n > 1:
        square *= r
        n = 1
    return sign * n, square


# ---------------------------------------------------------------------------
# quadratic extensions


class QuadField:
    """Descriptor for ``K(sqrt(d))``.

    For a rational radicand the radicand is normalized to a squarefree integer
    ``core`` with ``d = core * scale**2``.  When ``d`` is a rational square the
    descriptor is *trivial* and :meth:`element` collapses to rationals.
    """

    def __init__(self, radicand, scale=1, trivial=False, root=None):
        self.radicand = radicand
        self.scale = scale
        self.trivial = trivial
        self.root = root

    def __repr__(self):
        if self.trivial:
            return f"QuadField(trivial, sqrt={self.root})"
        return f"QuadField(sqrt({format_scalar(self.radicand)}))"

    def element(self, u, v=0):
        if self.trivial:
            return u + v * self.root
        return QuadExt(u, v, self.radicand)

    @property
    def sqrt(self):
        """The element ``sqrt(d)`` for the radicand the field was built from."""
        if self.trivial:
            return self.root
        return QuadExt(0, self.scale, self.radicand)

    def __eq__(self, other):
        return (isinstance(other, QuadField) and self.trivial == other.trivial
                and self.radicand == other.radicand)

    def __hash__(self):
        return hash((self.trivial, self.radicand))


def adjoin_sqrt(d) -> QuadField:
    """Descriptor for ``Q(sqrt(d))``.

    Square detection is exact (integer square roots on numerator and
    denominator).  A non-rational ``d`` (a quartic field element) is adjoined
    formally, without a squareness test.
    """
    if isinstance(d, QuarticFieldElem):
        if d == 0:
            raise ScalarError("zero radicand")
        return QuadField(d)
    if not is_rational(d):
        raise ScalarError(f"cannot adjoin a square root of {d!r}")
    d = Fraction(d)
    if d == 0:
        raise ScalarError("zero radicand")
    root = rational_sqrt(d)
    if root is not None:
        return QuadField(d, trivial=True, root=root)
    # sqrt(p/q) = sqrt(p*q)/q, then strip square factors of p*q
    core, square = _squarefree_split(d.numerator * d.denominator)
    return QuadField(Fraction(core), Fraction(square, d.denominator))


def _base_ok(x, ref) -> bool:
    if isinstance(x, bool):
        return False
    if isinstance(x, _EXACT_RATIONAL):
        return True
    return isinstance(ref, QuarticFieldElem) and isinstance(x, QuarticFieldElem) and x.field is ref.field


class QuadExt:
    """``u + v*sqrt(d)`` with ``u, v, d`` in a common base field, ``d`` a non-square."""

    __slots__ = ("u", "v", "d")

    def __init__(self, u, v, d):
        if isinstance(d, int):
            d = Fraction(d)
        if isinstance(u, int) and not isinstance(d, Fraction):
            u = d.field(u)
        if isinstance(v, int) and not isinstance(d, Fraction):
            v = d.field(v)
        if isinstance(d, Fraction):
            u, v = Fraction(u), Fraction(v)
        self.u = u
        self.v = v
        self.d = d

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise TypeError(f"mixed radicands {self.d} and {other.d}")
            return other
        if _base_ok(other, self.d):
            return QuadExt(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.u + o.u, self.v + o.v, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.u, -self.v, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.u - o.u, self.v - o.v, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if _base_ok(other, self.d):
            return QuadExt(self.u * other, self.v * other, self.d)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.u * o.u + self.d * self.v * o.v,
                       self.u * o.v + self.v * o.u, self.d)

    __rmul__ = __mul__

    def conj(self):
        return QuadExt(self.u, -self.v, self.d)

    def norm(self):
        return self.u * self.u - self.d * self.v * self.v

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadExt inverse of zero")
        inv = 1 / n if not isinstance(n, QuarticFieldElem) else n.inverse()
        return QuadExt(self.u * inv, -self.v * inv, self.d)

    def __truediv__(self, other):
        if _base_ok(other, self.d):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            inv = Fraction(1) / other if is_rational(other) else other.inverse()
            return QuadExt(self.u * inv, self.v * inv, self.d)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        return _power(self, n)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.d == other.d and self.u == other.u and self.v == other.v
        if _base_ok(other, self.d):
            return self.v == 0 and self.u == other
        return NotImplemented

    def __hash__(self):
        if self.v == 0:
            return hash(self.u)
        return hash((self.u, self.v, self.d))

    def is_base(self) -> bool:
        return self.v == 0

    def to_base(self):
        if self.v != 0:
            raise ScalarError("element is not in the base field")
        return self.u

    def key(self):
        """Ordering key by coefficient tuple (rational base only)."""
        return (self.u, self.v)

    def __complex__(self):
        return embed_numeric(self).z

    def __repr__(self):
        return f"QuadExt({format_scalar(self)})"

    __str__ = lambda self: format_scalar(self)


# ---------------------------------------------------------------------------
# univariate rational polynomial helpers (coefficients low -> high)


def _upoly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _upoly_divmod(a, b):
    a = _upoly_trim(a)
    b = _upoly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[i + k] -= c * bi
        a = _upoly_trim(a)
    return q, a


def _upoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _upoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _upoly_trim([x - y for x, y in zip(a, b)])


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i * i != n:
                out.append(n // i)
        i += 1
    return sorted(out)


def _monic_quartic_irreducible(c: tuple[int, int, int, int]) -> bool:
    """Irreducibility of ``x^4 + c3 x^3 + c2 x^2 + c1 x + c0`` over Q (integer c)."""
    c0, c1, c2, c3 = c
    if c0 == 0:
        return False
    for r in _divisors(c0):
        for s in (r, -r):
            if s ** 4 + c3 * s ** 3 + c2 * s ** 2 + c1 * s + c0 == 0:
                return False
    # (x^2 + a x + b)(x^2 + e x + f) with b*f = c0 (Gauss lemma: integer factors)
    for b0 in _divisors(c0):
        for b in (b0, -b0):
            f = c0 // b
            if b != f:
                num = c1 - b * c3
                den = f - b
                if num % den:
                    continue
                a = num // den
                e = c3 - a
                if b + f + a * e == c2:
                    return False
            else:
                if c1 != b * c3:
                    continue
                disc = c3 * c3 - 4 * (c2 - 2 * b)
                if _isqrt_exact(disc) is not None and (c3 + _isqrt_exact(disc)) % 2 == 0:
                    return False
    return True


# ---------------------------------------------------------------------------
# quartic number fields


class QuarticField:
    """The number field ``Q[mu]/(mu^4 + c3 mu^3 + c2 mu^2 + c1 mu + c0)``.

    ``tail`` holds the integer coefficients ``(c0, c1, c2, c3)``.  The
    polynomial is checked for irreducibility on construction.
    """

    def __init__(self, tail: tuple[int, int, int, int], name: str = "mu"):
        self.tail = tuple(int(c) for c in tail)
        self.name = name
        if not _monic_quartic_irreducible(self.tail):
            raise ScalarError(f"minimal polynomial {self.minpoly_str()} is reducible")
        self._roots = None

    def minpoly_str(self) -> str:
        c0, c1, c2, c3 = self.tail
        terms = [f"{self.name}^4"]
        for c, mono in ((c3, f"{self.name}^3"), (c2, f"{self.name}^2"), (c1, self.name), (c0, "")):
            if c == 0:
                continue
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
            terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms)

    def __repr__(self):
        return f"QuarticField({self.minpoly_str()})"

    def __call__(self, *coeffs) -> "QuarticFieldElem":
        c = [Fraction(x) for x in coeffs] + [Fraction(0)] * (4 - len(coeffs))
        return QuarticFieldElem(self, c)

    @property
    def gen(self) -> "QuarticFieldElem":
        return self(0, 1)

    def minpoly(self, x):
        c0, c1, c2, c3 = self.tail
        return x ** 4 + c3 * x ** 3 + c2 * x ** 2 + c1 * x + c0

    def numeric_roots(self) -> list[complex]:
        """Roots sorted by argument in [0, 2*pi), then by modulus."""
        if self._roots is None:
            c0, c1, c2, c3 = self.tail
            coeffs = [1, c3, c2, c1, c0]
            roots = []
            for r in np.roots(coeffs):
                r = complex(r)
                for _ in range(3):
                    fr = np.polyval(coeffs, r)
                    dfr = np.polyval(np.polyder(coeffs), r)
                    if dfr != 0:
                        r -= fr / dfr
                roots.append(r)
            roots.sort(key=lambda z: (round(cmath.phase(z) % (2 * math.pi), 12), abs(z)))
            self._roots = roots
        return list(self._roots)


class QuarticFieldElem:
    __slots__ = ("field", "c")

    def __init__(self, field: QuarticField, coeffs):
        self.field = field
        self.c = tuple(Fraction(x) for x in coeffs)

    def _coerce(self, other):
        if isinstance(other, QuarticFieldElem):
            if other.field is not self.field:
                raise TypeError("elements of different quartic fields")
            return other
        if is_rational(other):
            return QuarticFieldElem(self.field, (other, 0, 0, 0))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuarticFieldElem(self.field, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return QuarticFieldElem(self.field, [-a for a in self.c])

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuarticFieldElem(self.field, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if is_rational(other):
            return QuarticFieldElem(self.field, [a * other for a in self.c])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = [Fraction(0)] * 7
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(o.c):
                prod[i + j] += a * b
        c0, c1, c2, c3 = self.field.tail
        # mu^4 = -(c3 mu^3 + c2 mu^2 + c1 mu + c0)
        for k in range(6, 3, -1):
            t = prod[k]
            if t:
                prod[k] = Fraction(0)
                prod[k - 1] -= t * c3
                prod[k - 2] -= t * c2
                prod[k - 3] -= t * c1
                prod[k - 4] -= t * c0
        return QuarticFieldElem(self.field, prod[:4])

    __rmul__ = __mul__

    def inverse(self) -> "QuarticFieldElem":
        """Inverse via the extended Euclidean algorithm in Q[x]."""
        if self == 0:
            raise ZeroDivisionError("quartic field inverse of zero")
        c0, c1, c2, c3 = self.field.tail
        r0 = [Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3), Fraction(1)]
        r1 = _upoly_trim(self.c)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _upoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _upoly_sub(s0, _upoly_mul(q, s1))
        # r1 is a nonzero constant: s1 * self == r1 mod m
        inv = [x / r1[0] for x in s1]
        _, inv = _upoly_divmod(inv, r0 if len(r0) == 5 else [Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3), Fraction(1)])
        return QuarticFieldElem(self.field, list(inv) + [Fraction(0)] * (4 - len(inv)))

    def __truediv__(self, other):
        if is_rational(other):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuarticFieldElem(self.field, [a / other for a in self.c])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        return _power(self, n)

    def __eq__(self, other):
        if isinstance(other, QuarticFieldElem):
            return other.field is self.field and self.c == other.c
        if is_rational(other):
            return self.c[1:] == (0, 0, 0) and self.c[0] == other
        return NotImplemented

    def __hash__(self):
        if self.c[1:] == (0, 0, 0):
            return hash(self.c[0])
        return hash(self.c)

    def __complex__(self):
        return embed_numeric(self).z

    def __repr__(self):
        return f"QuarticFieldElem({format_scalar(self)})"

    __str__ = lambda self: format_scalar(self)


#: The field named in the source material, ``mu^4 + mu^3 - mu^2 + mu - 1``.
MU_FIELD = QuarticField((-1, 1, -1, 1), name="mu")
#: ``mu^4 - mu^3 + mu^2 - mu + 1``: ``mu = -zeta`` for a primitive fifth root of unity.
TENTH_ROOT_FIELD = QuarticField((1, -1, 1, -1), name="mu")


# ---------------------------------------------------------------------------
# complex approximations


class ComplexApprox:
    """A complex double with an explicit comparison tolerance."""

    __slots__ = ("z", "tol")

    def __init__(self, re=0.0, im=0.0, tol: float = DEFAULT_TOL):
        if isinstance(re, complex):
            self.z = re
        else:
            self.z = complex(float(re), float(im))
        self.tol = tol

    @classmethod
    def of(cls, z, tol=DEFAULT_TOL):
        return cls(complex(z), tol=tol)

    @property
    def re(self) -> float:
        return self.z.real

    @property
    def im(self) -> float:
        return self.z.imag

    def _val(self, other):
        if isinstance(other, ComplexApprox):
            return other.z, max(self.tol, other.tol)
        if isinstance(other, (int, float, complex, Fraction)) and not isinstance(other, bool):
            return complex(other), self.tol
        return None, None

    def __add__(self, other):
        v, tol = self._val(other)
        if v is None:
            return NotImplemented
        return ComplexApprox(self.z + v, tol=tol)

    __radd__ = __add__

    def __neg__(self):
        return ComplexApprox(-self.z, tol=self.tol)

    def __pos__(self):
        return self

    def __sub__(self, other):
        v, tol = self._val(other)
        if v is None:
            return NotImplemented
        return ComplexApprox(self.z - v, tol=tol)

    def __rsub__(self, other):
        v, tol = self._val(other)
        if v is None:
            return NotImplemented
        return ComplexApprox(v - self.z, tol=tol)

    def __mul__(self, other):
        v, tol = self._val(other)
        if v is None:
            return NotImplemented
        return ComplexApprox(self.z * v, tol=tol)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v, tol = self._val(other)
        if v is None:
            return NotImplemented
        return ComplexApprox(self.z / v, tol=tol)

    def __rtruediv__(self, other):
        v, tol = self._val(other)
        if v is None:
            return NotImplemented
        return ComplexApprox(v / self.z, tol=tol)

    def __pow__(self, n: int):
        return ComplexApprox(self.z ** n, tol=self.tol)

    def __abs__(self):
        return abs(self.z)

    def __eq__(self, other):
        v, tol = self._val(other)
        if v is None:
            return NotImplemented
        return abs(self.z - v) < tol

    __hash__ = None

    def conj(self):
        return ComplexApprox(self.z.conjugate(), tol=self.tol)

    def __complex__(self):
        return self.z

    def __repr__(self):
        return f"ComplexApprox({format_scalar(self)})"

    __str__ = lambda self: format_scalar(self)


# ---------------------------------------------------------------------------
# generic helpers


def _power(x, n: int):
    if n < 0:
        return _power(1 / x, -n)
    result = 1
    base = x
    while n:
        if n & 1:
            result = base * result
        base = base * base
        n >>= 1
    return result


def is_exact(x) -> bool:
    return not isinstance(x, (ComplexApprox, float, complex))


def field_of(values) -> str:
    """Short name of the smallest tier holding all ``values``."""
    kinds = set()
    for x in values:
        if isinstance(x, ComplexApprox):
            kinds.add("C~")
        elif isinstance(x, QuadExt):
            base = "Q" if isinstance(x.d, Fraction) else f"Q({x.d.field.name})"
            kinds.add(f"{base}(sqrt({format_scalar(x.d)}))")
        elif isinstance(x, QuarticFieldElem):
            kinds.add(f"Q({x.field.name})")
    if not kinds:
        return "Q"
    if len(kinds) > 1:
        raise TypeError(f"values from several fields: {sorted(kinds)}")
    return kinds.pop()


def common_zero(values):
    """Return a zero of the field the ``values`` live in."""
    for x in values:
        if isinstance(x, QuadExt):
            return QuadExt(0, 0, x.d)
        if isinstance(x, QuarticFieldElem):
            return x.field(0)
        if isinstance(x, ComplexApprox):
            return ComplexApprox(0, tol=x.tol)
    return Fraction(0)


def embed_numeric(x, branch: int = 0, tol: float = DEFAULT_TOL) -> ComplexApprox:
    """Complex embedding of an exact scalar.

    ``branch`` picks the root of the defining polynomial, roots ordered by
    argument in ``[0, 2*pi)`` then modulus.  For a quadratic extension of a
    quartic field the base branch is ``branch // 2`` and the square root
    branch is ``branch % 2``.
    """
    if isinstance(x, ComplexApprox):
        return x
    if is_rational(x):
        return ComplexApprox(complex(Fraction(x)), tol=tol)
    if isinstance(x, float) or isinstance(x, complex):
        return ComplexApprox(complex(x), tol=tol)
    if isinstance(x, QuarticFieldElem):
        roots = x.field.numeric_roots()
        mu = roots[branch % 4]
        z = sum(complex(c) * mu ** k for k, c in enumerate(x.c))
        return ComplexApprox(z, tol=tol)
    if isinstance(x, QuadExt):
        if isinstance(x.d, Fraction):
            sign_branch = branch % 2
            base_branch = 0
        else:
            base_branch, sign_branch = branch // 2, branch % 2
        d = embed_numeric(x.d, base_branch).z
        if isinstance(x.d, Fraction):
            # roots of t^2 - d ordered by argument in [0, 2pi)
            r = math.sqrt(float(x.d)) if x.d > 0 else 1j * math.sqrt(-float(x.d))
        else:
            r = cmath.sqrt(d)
        if sign_branch:
            r = -r
        u = embed_numeric(x.u, base_branch).z
        v = embed_numeric(x.v, base_branch).z
        return ComplexApprox(u + v * r, tol=tol)
    raise TypeError(f"cannot embed {x!r}")


def to_complex(x, branch: int = 0) -> complex:
    return embed_numeric(x, branch).z


def sqrt_exact(x):
    """Exact square root inside the field of ``x``, or ``None``.

    Supported for rationals and quadratic extensions of Q.
    """
    if is_rational(x):
        return rational_sqrt(x)
    if isinstance(x, QuadExt) and isinstance(x.d, Fraction):
        if x.v == 0:
            r = rational_sqrt(x.u)
            if r is not None:
                return QuadExt(r, 0, x.d)
            r = rational_sqrt(x.u / x.d)
            if r is not None:
                return QuadExt(0, r, x.d)
            return None
        # (a + b r)^2 = a^2 + d b^2 + 2ab r
        n = rational_sqrt(x.norm())
        if n is None:
            return None
        for s in (n, -n):
            a2 = (x.u + s) / 2
            a = rational_sqrt(a2)
            if a is not None and a != 0:
                b = x.v / (2 * a)
                return QuadExt(a, b, x.d)
        return None
    return None


# ---------------------------------------------------------------------------
# text syntax

_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"^\s*(?:(?P<u>{_RAT})\s*)?(?P<sign>[+-])?\s*(?:(?P<v>\d+(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(?P<d>{_RAT})\s*\)\s*$"
)
_FLOAT = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^\s*(?P<re>{_FLOAT})?\s*(?P<im>[+-]\s*(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i\s*$")


def parse_scalar(text: str):
    """Parse ``p/q``, ``p``, ``u+v*sqrt(d)`` or ``a+bi``.

    Decimal input such as ``0.25`` is read exactly as a rational.
    """
    s = text.strip()
    if not s:
        raise ScalarError("empty scalar")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        pass
    m = _QUAD_RE.match(s)
    if m:
        u = Fraction(m.group("u")) if m.group("u") else Fraction(0)
        v = Fraction(m.group("v")) if m.group("v") else Fraction(1)
        if m.group("sign") == "-":
            v = -v
        elif m.group("sign") is None and m.group("u"):
            raise ScalarError(f"malformed scalar {text!r}")
        d = Fraction(m.group("d"))
        field = adjoin_sqrt(d)
        return u + v * field.sqrt
    m = _COMPLEX_RE.match(s)
    if m and (m.group("re") or m.group("im")):
        re_part = float(m.group("re")) if m.group("re") else 0.0
        if m.group("im"):
            im_part = float(m.group("im").replace(" ", ""))
        else:
            # "bi" form: the single number is the imaginary part
            im_part, re_part = re_part, 0.0
        return ComplexApprox(re_part, im_part)
    raise ScalarError(f"malformed scalar {text!r}")


def _fmt_rat(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if is_rational(x):
        return _fmt_rat(x)
    if isinstance(x, QuadExt):
        if isinstance(x.d, Fraction):
            u, v, d = _fmt_rat(x.u), x.v, _fmt_rat(x.d)
            if v == 0:
                return u
            sign = "-" if v < 0 else "+"
            mag = "" if abs(v) == 1 else _fmt_rat(abs(v)) + "*"
            head = "" if x.u == 0 else u
            if head == "" and sign == "+":
                sign = ""
            return f"{head}{sign}{mag}sqrt({d})"
        return f"({format_scalar(x.u)})+({format_scalar(x.v)})*sqrt({format_scalar(x.d)})"
    if isinstance(x, QuarticFieldElem):
        name = x.field.name
        parts = []
        for k, c in enumerate(x.c):
            if c == 0:
                continue
            mono = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
            parts.append(_fmt_rat(c) + ("*" + mono if mono else ""))
        return "+".join(parts).replace("+-", "-") if parts else "0"
    if isinstance(x, ComplexApprox):
        return f"{x.re:.16e}{x.im:+.16e}i"
    raise TypeError(f"not a scalar: {x!r}")
