"""Projective primitives and generalized Desargues configurations.

A configuration is cut out on a plane ``pi: sum alpha_i z_i = 0`` of P^3 by the
frame ``e1..e4`` (coordinate points) and ``e5 = (1,1,1,1)``: the point ``p_ij``
is ``line(e_i, e_j) ∩ pi`` and the line ``l_ijk`` is ``plane(e_i, e_j, e_k) ∩ pi``.

Plane coordinates use the reduced-echelon kernel basis of ``alpha``: with ``k``
the first index where ``alpha_k != 0``, the basis vectors are
``e_j - (alpha_j / alpha_k) e_k`` for ``j != k`` in increasing order, so the plane
coordinates of a point of ``pi`` are its ambient coordinates at those ``j``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .scalars import (ComplexApprox, QuadExt, QuarticFieldElem, format_scalar, is_rational,
                      parse_scalar)


class GeometryError(ValueError):
    pass


LABELS = (1, 2, 3, 4, 5)
PAIRS = tuple(itertools.combinations(LABELS, 2))
TRIPLES = tuple(itertools.combinations(LABELS, 3))


def pair_label(pair) -> str:
    return "p" + "".join(str(i) for i in sorted(pair))


def triple_label(triple) -> str:
    return "l" + "".join(str(i) for i in sorted(triple))


def frame_point(i: int):
    """Coordinates of ``e_i`` (``e5 = (1,1,1,1)``)."""
    if i == 5:
        return [Fraction(1)] * 4
    return [Fraction(int(j == i - 1)) for j in range(4)]


class ProjPoint:
    """Point of P^2 or P^3 given by homogeneous coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(Fraction(c) if isinstance(c, int) else c for c in coords)
        if len(coords) not in (3, 4):
            raise GeometryError("ProjPoint needs 3 or 4 coordinates")
        if all(c == 0 for c in coords):
            raise GeometryError("zero vector is not a projective point")
        self.coords = coords

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return linalg.proportional(self.coords, other.coords)

    __hash__ = None

    def canonical(self) -> "ProjPoint":
        return ProjPoint(linalg.normalize(list(self.coords)))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def to_text(self) -> str:
        return "(" + ":".join(format_scalar(c) for c in self.canonical().coords) + ")"

    def __repr__(self):
        return f"ProjPoint{self.to_text()}"


class Plane:
    """The plane ``sum alpha_i z_i = 0`` in P^3."""

    __slots__ = ("alpha",)

    def __init__(self, alpha):
        alpha = tuple(Fraction(a) if isinstance(a, int) else a for a in alpha)
        if len(alpha) != 4:
            raise GeometryError("a plane needs 4 coefficients")
        if all(a == 0 for a in alpha):
            raise GeometryError("alpha = 0 does not define a plane")
        self.alpha = alpha

    @classmethod
    def parse(cls, text: str) -> "Plane":
        parts = [t for t in text.split(",")]
        if len(parts) != 4:
            raise GeometryError(f"expected 4 comma-separated scalars, got {len(parts)}")
        return cls([parse_scalar(t) for t in parts])

    def __eq__(self, other):
        if not isinstance(other, Plane):
            return NotImplemented
        return linalg.proportional(self.alpha, other.alpha)

    __hash__ = None

    def __iter__(self):
        return iter(self.alpha)

    def __getitem__(self, i):
        return self.alpha[i]

    def total(self):
        return sum(self.alpha, 0)

    def kind(self) -> int:
        return sum(1 for a in self.alpha if a == 0) + (1 if self.total() == 0 else 0)

    def contains(self, z) -> bool:
        return linalg.dot(self.alpha, z) == 0

    def contained_frame_points(self):
        pts = [i + 1 for i, a in enumerate(self.alpha) if a == 0]
        if self.total() == 0:
            pts.append(5)
        return pts

    def to_text(self) -> str:
        return ",".join(format_scalar(a) for a in self.alpha)

    def __repr__(self):
        return f"Plane({self.to_text()})"


# ---------------------------------------------------------------------------
# plane coordinatization


def plane_basis(alpha):
    """4x3 matrix whose columns span the plane (reduced-echelon kernel basis)."""
    alpha = list(alpha)
    k = next(i for i, a in enumerate(alpha) if a != 0)
    free = [j for j in range(4) if j != k]
    cols = []
    for j in free:
        v = [Fraction(0)] * 4
        v[j] = Fraction(1)
        v[k] = -alpha[j] / alpha[k]
        cols.append(v)
    return linalg.transpose(cols)


def free_indices(alpha):
    k = next(i for i, a in enumerate(alpha) if a != 0)
    return [j for j in range(4) if j != k]


def to_plane_coords(alpha, z):
    return [z[j] for j in free_indices(alpha)]


def to_ambient(alpha, y):
    return linalg.matvec(plane_basis(alpha), y)


def restrict_covector(alpha, beta):
    """Line ``beta ∩ pi`` in plane coordinates (``beta B``)."""
    return linalg.vecmat(list(beta), plane_basis(alpha))


# ---------------------------------------------------------------------------
# incidence primitives


def join(p, q):
    """Line through two points of P^2."""
    v = linalg.cross(list(p), list(q))
    if all(x == 0 for x in v):
        raise GeometryError("points coincide")
    return v


def meet(l, m):
    """Intersection point of two lines of P^2."""
    v = linalg.cross(list(l), list(m))
    if all(x == 0 for x in v):
        raise GeometryError("lines coincide")
    return v


def incident(point, line, tol: float = 1e-9) -> bool:
    """Exact incidence; numeric input is compared relative to the vector norms."""
    point, line = list(point), list(line)
    if all(linalg.is_exact(x) for x in point + line):
        return linalg.dot(point, line) == 0
    v = abs(complex(linalg.dot(point, line)))
    n = sum(abs(complex(x)) ** 2 for x in point) ** 0.5 * sum(abs(complex(x)) ** 2 for x in line) ** 0.5
    return v <= tol * n


def frame_line_covector(triple):
    """Covector of ``plane(e_i, e_j, e_k)`` in P^3."""
    M = [frame_point(i) for i in triple]
    ns = linalg.nullspace(M)
    return ns[0]


def _line_point(alpha, i, j):
    """``line(e_i, e_j) ∩ pi`` or ``None`` if the line lies in the plane."""
    ei, ej = frame_point(i), frame_point(j)
    ai, aj = linalg.dot(alpha, ei), linalg.dot(alpha, ej)
    z = [aj * x - ai * y for x, y in zip(ei, ej)]
    if all(c == 0 for c in z):
        return None
    return z


# special points S_ij = line(e_i, e_j) ∩ plane(e_k, e_l, e_m), recomputed from the definition


@lru_cache(maxsize=None)
def special_point_table():
    table = {}
    for i, j in PAIRS:
        rest = tuple(k for k in LABELS if k not in (i, j))
        beta = frame_line_covector(rest)
        ei, ej = frame_point(i), frame_point(j)
        bi, bj = linalg.dot(beta, ei), linalg.dot(beta, ej)
        z = [bj * x - bi * y for x, y in zip(ei, ej)]
        table[(i, j)] = tuple(linalg.normalize(z))
    return table


def special_conditions(alpha):
    """Pairs ``(i, j)`` with ``S_ij`` on the plane."""
    return [pair for pair, s in special_point_table().items() if linalg.dot(alpha, s) == 0]


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class PlaneClass:
    kind: str  # "nondegenerate" | "special" | "degenerate"
    special: tuple = ()
    degenerate_kind: int = 0

    def to_text(self) -> str:
        if self.kind == "degenerate":
            return f"degenerate kind {self.degenerate_kind}"
        if self.kind == "special":
            return "special " + " ".join("S" + "".join(map(str, p)) for p in self.special)
        return "nondegenerate"


def classify_plane(plane) -> PlaneClass:
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    k = plane.kind()
    assert k <= 3, "a plane cannot contain 4 points of a projective frame"
    if k:
        return PlaneClass("degenerate", (), k)
    sp = special_conditions(plane.alpha)
    if sp:
        return PlaneClass("special", tuple(sp))
    return PlaneClass("nondegenerate")


# ---------------------------------------------------------------------------
# configurations


@dataclass
class Configuration:
    plane: Plane
    kind: int
    basis: list
    points: dict            # "p12" -> plane coordinates or None
    ambient: dict           # "p12" -> ambient coordinates or None
    lines: dict             # "l123" -> plane line coefficients or None
    incidence: list         # 10x10 booleans, rows PAIRS, cols TRIPLES
    special_points: list = field(default_factory=list)

    def point(self, pair):
        return self.points[pair_label(pair)]

    def line(self, triple):
        return self.lines[triple_label(triple)]

    def field_name(self) -> str:
        from .scalars import field_of
        vals = [c for p in self.points.values() if p for c in p]
        return field_of(vals + list(self.plane.alpha))

    def has_10_3(self) -> bool:
        return check_10_3(self.points, self.lines)

    def four_point_lines(self):
        out = []
        for t in TRIPLES:
            l = self.lines[triple_label(t)]
            if l is None:
                continue
            cnt = sum(1 for p in PAIRS if self.points[pair_label(p)] is not None
                      and incident(self.points[pair_label(p)], l))
            if cnt >= 4:
                out.append(t)
        return out


def incidence_table(points, lines):
    table = []
    for p in PAIRS:
        pt = points[pair_label(p)]
        row = []
        for t in TRIPLES:
            l = lines[triple_label(t)]
            row.append(bool(pt is not None and l is not None and incident(pt, l)))
        table.append(row)
    return table


def check_10_3(points, lines, allow_special=False) -> bool:
    """Each labeled line holds its 3 labeled points and each point lies on its 3 lines."""
    for t in TRIPLES:
        l = lines[triple_label(t)]
        if l is None:
            return False
        for p in itertools.combinations(t, 2):
            pt = points[pair_label(p)]
            if pt is None or not incident(pt, l):
                return False
        if not allow_special:
            for p in PAIRS:
                if set(p) <= set(t):
                    continue
                if incident(points[pair_label(p)], l):
                    return False
    return True


def build_configuration(plane) -> Configuration:
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    alpha = list(plane.alpha)
    B = plane_basis(alpha)
    free = free_indices(alpha)
    points, ambient = {}, {}
    for i, j in PAIRS:
        z = _line_point(alpha, i, j)
        ambient[pair_label((i, j))] = z
        points[pair_label((i, j))] = None if z is None else [z[f] for f in free]
    lines = {}
    for t in TRIPLES:
        beta = frame_line_covector(t)
        l = linalg.vecmat(beta, B)
        lines[triple_label(t)] = None if all(x == 0 for x in l) else l
    return Configuration(
        plane=plane,
        kind=plane.kind(),
        basis=B,
        points=points,
        ambient=ambient,
        lines=lines,
        incidence=incidence_table(points, lines),
        special_points=special_conditions(alpha) if plane.kind() == 0 else [],
    )


# ---------------------------------------------------------------------------
# the S5 frame action


class Permutation5:
    """Bijection of {1..5}; ``images[i-1] = sigma(i)``."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != [1, 2, 3, 4, 5]:
            raise GeometryError(f"not a permutation of 1..5: {images}")
        self.images = images

    @classmethod
    def identity(cls):
        return cls((1, 2, 3, 4, 5))

    @classmethod
    def from_cycles(cls, cycles):
        img = {i: i for i in LABELS}
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls([img[i] for i in LABELS])

    @classmethod
    def parse(cls, text: str) -> "Permutation5":
        text = text.strip()
        if text in ("()", "id", ""):
            return cls.identity()
        cycles = []
        for chunk in text.replace(")", "").split("("):
            chunk = chunk.strip()
            if chunk:
                cycles.append([int(x) for x in chunk.replace(",", " ").split()])
        return cls.from_cycles(cycles)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation5") -> "Permutation5":
        """Composition ``self ∘ other``."""
        return Permutation5([self(other(i)) for i in LABELS])

    def inverse(self) -> "Permutation5":
        inv = [0] * 5
        for i in LABELS:
            inv[self(i) - 1] = i
        return Permutation5(inv)

    def order(self) -> int:
        k, p = 1, self
        while p.images != (1, 2, 3, 4, 5):
            p = p * self
            k += 1
        return k

    def __eq__(self, other):
        return isinstance(other, Permutation5) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def cycles(self):
        seen, out = set(), []
        for i in LABELS:
            if i in seen or self(i) == i:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self(j)
            out.append(cyc)
        return out

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    __repr__ = lambda self: f"Permutation5{str(self)}"


def all_permutations():
    return [Permutation5(p) for p in itertools.permutations(LABELS)]


@lru_cache(maxsize=None)
def _frame_transform_cached(images):
    sigma = Permutation5(images)
    cols = [frame_point(sigma(i)) for i in range(1, 5)]
    target = frame_point(sigma(5))
    c = linalg.solve(linalg.transpose(cols), target)
    A = [[c[j] * cols[j][i] for j in range(4)] for i in range(4)]
    return tuple(tuple(r) for r in A), tuple(tuple(r) for r in linalg.inverse(A))


def frame_transform(sigma: Permutation5):
    """Matrix ``A`` with ``A e_i ∝ e_sigma(i)`` for ``i = 1..5``."""
    return [list(r) for r in _frame_transform_cached(sigma.images)[0]]


def frame_transform_inverse(sigma: Permutation5):
    return [list(r) for r in _frame_transform_cached(sigma.images)[1]]


def dual_image(plane, sigma: Permutation5) -> Plane:
    """Image of the plane under ``A_sigma``: coefficients ``alpha A^{-1}``."""
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    return Plane(linalg.vecmat(list(plane.alpha), frame_transform_inverse(sigma)))


def configs_isomorphic(p1, p2):
    """First permutation (lexicographic) whose frame transform maps p1 to p2, else None."""
    p1 = p1 if isinstance(p1, Plane) else Plane(p1)
    p2 = p2 if isinstance(p2, Plane) else Plane(p2)
    if p1.kind() != p2.kind():
        return None
    for sigma in all_permutations():
        if dual_image(p1, sigma) == p2:
            return sigma
    return None


def automorphisms(plane):
    """All permutations whose frame transform maps the plane to itself."""
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    return [s for s in all_permutations() if dual_image(plane, s) == plane]


def _order_key(x):
    if isinstance(x, QuarticFieldElem) or isinstance(x, ComplexApprox):
        raise GeometryError("unordered field")
    if isinstance(x, QuadExt):
        if not is_rational(x.u):
            raise GeometryError("unordered field")
        return (x.u, x.v)
    return (Fraction(x), Fraction(0))


@lru_cache(maxsize=None)
def _integer_inverses():
    """``A_sigma^{-1}`` for all sigma, scaled to integer rows (scale is irrelevant projectively)."""
    out = []
    for sigma in all_permutations():
        M = frame_transform_inverse(sigma)
        den = 1
        for row in M:
            for x in row:
                den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
        out.append(tuple(tuple(int(x * den) for x in row) for row in M))
    return tuple(out)


def _canonical_rational(alpha):
    den = 1
    for a in alpha:
        den = den * a.denominator // math.gcd(den, a.denominator)
    a = [int(x * den) for x in alpha]
    best = None
    for M in _integer_inverses():
        w = [a[0] * M[0][j] + a[1] * M[1][j] + a[2] * M[2][j] + a[3] * M[3][j] for j in range(4)]
        k = next(i for i, x in enumerate(w) if x)
        key = tuple(Fraction(x, w[k]) for x in w)
        if best is None or key < best:
            best = key
    return Plane(best)


def canonical_form(plane) -> Plane:
    """Lexicographically least normalized coefficient vector over the S5 orbit."""
    plane = plane if isinstance(plane, Plane) else Plane(plane)
    if all(is_rational(a) for a in plane.alpha):
        return _canonical_rational([Fraction(a) for a in plane.alpha])
    for a in plane.alpha:
        _order_key(a)
    best, best_key = None, None
    for sigma in all_permutations():
        v = linalg.normalize(list(dual_image(plane, sigma).alpha))
        key = tuple(_order_key(x) for x in v)
        if best_key is None or key < best_key:
            best, best_key = v, key
    return Plane(best)
