"""Acceptance criteria as callable checks, shared by the test-suite and ``verify-paper``.

Each criterion returns a :class:`CriterionResult` made of named checks.  A
check is ``stated`` (the claim exactly as formulated, with the printed data)
or ``corrected`` (the same claim on recomputed data, where the printed data
is demonstrably wrong).  A criterion passes iff every stated check passes
within its time bound; corrected checks are reported alongside.
"""

from __future__ import annotations

import cmath
import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .conics import (ConicParametrization, admissible, point_on_conic, quadrangle_pencil,
                     reconstruct_configuration, phi_from_configuration, von_staudt_conic)
from .degenerate import (degenerate_divisor, involution_fixed_lines, is_semistable,
                         product_certificate, six_fold_sextic)
from .grassmann import fiber_solve, in_H, jac_projection, jac_rank, pluecker
from .phi import (congruence_constant, expected_congruence_constant, galois_invariant,
                  jacobian_pencil, moduli_equal, phi_sextic)
from .polyforms import BinaryForm, BinomialQuartic, is_stable
from .projective import (Permutation5, Plane, ProjPoint, all_permutations, canonical_form, configs_isomorphic,
                         dual_image, frame_point, frame_transform, special_conditions,
                         special_point_table)
from .scalars import MU_FIELD, TENTH_ROOT_FIELD, QuadExt

SEED = 20240607


@dataclass
class Check:
    name: str
    passed: bool
    role: str = "stated"        # "stated" | "corrected" | "info"
    note: str = ""
    printed: bool = False       # stated check that consumes printed example data


@dataclass
class CriterionResult:
    number: int
    title: str
    limit: float
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def within_time(self) -> bool:
        return self.seconds <= self.limit

    @property
    def passed(self) -> bool:
        stated = [c for c in self.checks if c.role == "stated"]
        return bool(stated) and all(c.passed for c in stated) and self.within_time

    @property
    def corrected_passed(self) -> bool:
        """Pass when printed-data checks are replaced by their recomputed counterparts."""
        keep = [c for c in self.checks
                if c.role == "corrected" or (c.role == "stated" and not c.printed)]
        return bool(keep) and all(c.passed for c in keep) and self.within_time

    def add(self, name, passed, role="stated", note="", printed=False):
        self.checks.append(Check(name, bool(passed), role, note, printed))

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = ""
        if not self.passed and any(c.printed and not c.passed for c in self.checks):
            extra = f" (corrected data: {'PASS' if self.corrected_passed else 'FAIL'})"
        return f"criterion {self.number:2d} {status} {self.seconds:7.2f}s/{self.limit:.0f}s  {self.title}{extra}"


def _timed(number, title, limit):
    def deco(fn):
        def run(scale: float = 1.0, seed: int = SEED):
            res = CriterionResult(number, title, limit)
            t0 = time.perf_counter()
            try:
                fn(res, scale, random.Random(seed + number))
            except Exception as exc:  # a crash is a failed check, reported with its message
                res.add(f"raised {type(exc).__name__}", False, note=str(exc))
            res.seconds = time.perf_counter() - t0
            return res
        run.__name__ = fn.__name__
        run.number = number
        return run
    return deco


def _n(count, scale):
    return max(1, int(round(count * scale)))


# ---------------------------------------------------------------------------
# random inputs


def random_fraction(rng, bound=20, den=6):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def random_nondegenerate(rng, bound=30):
    while True:
        a = [Fraction(rng.randint(-bound, bound)) for _ in range(4)]
        if any(a) and Plane(a).kind() == 0:
            return Plane(a)


def random_generic(rng, bound=30):
    """Nondegenerate and not special."""
    while True:
        P = random_nondegenerate(rng, bound)
        if not special_conditions(P.alpha):
            return P


def random_special(rng, conditions=1, bound=30):
    table = special_point_table()
    keys = sorted(table)
    while True:
        chosen = rng.sample(keys, conditions)
        rows = [table[k] for k in chosen]
        basis = linalg.nullspace(rows)
        a = [sum((Fraction(rng.randint(-bound, bound)) * v[i] for v in basis), Fraction(0))
             for i in range(4)]
        if not any(a):
            continue
        P = Plane(a)
        if P.kind() == 0 and len(special_conditions(P.alpha)) == conditions:
            return P


def random_kind(rng, kind, bound=999):
    """Random plane of the given kind containing randomly chosen frame points."""
    while True:
        pts = rng.sample([1, 2, 3, 4, 5], kind)
        rows = [frame_point(k) for k in pts]
        basis = linalg.nullspace(rows)
        a = [sum((Fraction(rng.randint(-bound, bound)) * v[i] for v in basis), Fraction(0))
             for i in range(4)]
        if any(a) and Plane(a).kind() == kind:
            return Plane(a)


def random_pencil(rng):
    while True:
        f = [random_fraction(rng) for _ in range(5)]
        g = [random_fraction(rng) for _ in range(5)]
        if any(f[i] * g[j] != f[j] * g[i] for i in range(5) for j in range(i + 1, 5)):
            return BinomialQuartic(f), BinomialQuartic(g)


# ---------------------------------------------------------------------------
# printed example data

EX52 = {
    "p1": ([-1, 0, 0, 0, 1], [-8, 1, 0, 1, 0]),
    "p2": ([1, 1, -1, 0, 1], [0, 1, 0, 1, 0]),
    "p3": ([-1, 1, 0, 0, 1], [0, 1, 0, 1, 0]),
}
EX52_TRUE_P2 = ([0, 1, 0, -1, 0], [-1, 0, 1, -1, -1])
EX53_PENCIL2 = ([1, 0, 1, Fraction(-1, 2), 0], [0, 0, 1, 0, 0])
J1 = BinaryForm([0, 48, 0, 0, 48, 0, 0])
J3 = BinaryForm([0, 1, 0, 0, -1, 0, 0])
J5 = BinaryForm([1, 0, 0, 0, 0, -1, 0])
F3 = BinaryForm([2, 0, 6, 4, 0])
G3 = BinaryForm([0, 0, Fraction(1, 16), 0, 0])
CYCLE_MATRIX = [[0, 0, 0, 1], [-1, 0, 0, 1], [0, -1, 0, 1], [0, 0, -1, 1]]


def _q(v):
    return BinomialQuartic([Fraction(x) for x in v])


def ex53_pencil1(c, d):
    """Printed pencil 1 for cube roots ``c`` of -2 and ``d`` of 4 (complex)."""
    return ([2 * c, 1, d / 8, c / 4, 1], [2 * c, -1, 0, 0, 0])


def _numeric_jacobian(a, b):
    a, b = np.array(a, dtype=complex), np.array(b, dtype=complex)
    p = {(i, j): a[i] * b[j] - a[j] * b[i] for i in range(5) for j in range(i + 1, 5)}
    return 16 * np.array([p[0, 1], 3 * p[0, 2], 3 * (2 * p[1, 2] + p[0, 3]), 8 * p[1, 3] + p[0, 4],
                          3 * (2 * p[2, 3] + p[1, 4]), 3 * p[2, 4], p[3, 4]])


def _numeric_proportional(u, v, tol=1e-9):
    u, v = np.asarray(u, dtype=complex), np.asarray(v, dtype=complex)
    u, v = u / np.linalg.norm(u), v / np.linalg.norm(v)
    k = int(np.argmax(np.abs(v)))
    return np.linalg.norm(u - (u[k] / v[k]) * v) <= tol


def _numeric_in_H(a, b, tol=1e-9):
    """Vanishing discriminant of ``det(x q1 + y q2)`` for complex pencils."""
    def hankel(v):
        return np.array([[v[0], v[1], v[2]], [v[1], v[2], v[3]], [v[2], v[3], v[4]]], dtype=complex)
    A, B = hankel(a), hankel(b)
    # det(x A + y B) sampled at 4 points, interpolated as a binary cubic
    xs = [0, 1, 2, 3]
    vals = [np.linalg.det(A + x * B) for x in xs]
    c = np.polyfit(xs, vals, 3)[::-1]   # low -> high in y/x
    c0, c1, c2, c3 = c
    disc = c1 ** 2 * c2 ** 2 - 4 * c0 * c2 ** 3 - 4 * c1 ** 3 * c3 - 27 * c0 ** 2 * c3 ** 2 + 18 * c0 * c1 * c2 * c3
    scale = max(abs(x) for x in c) ** 4
    return abs(disc) <= tol * max(scale, 1e-300)


def _plucker_close(v, w, tol=1e-9):
    v, w = np.asarray(v, dtype=complex), np.asarray(w, dtype=complex)
    return abs(abs(np.vdot(v, w)) / (np.linalg.norm(v) * np.linalg.norm(w)) - 1) <= tol


# ---------------------------------------------------------------------------
# criteria


@_timed(1, "Jacobian identity: determinant = 16 x Plücker projection", 5)
def criterion_1(res, scale, rng):
    n = _n(1000, scale)
    bad = 0
    for _ in range(n):
        f, g = random_pencil(rng)
        F, G = f.to_form(), g.to_form()
        det = F.d0() * G.d1() - F.d1() * G.d0()
        via = jac_projection(pluecker(f, g)) * 16
        if det != via:
            bad += 1
    res.add(f"{n} random rational pencils agree exactly", bad == 0, note=f"{bad} mismatches")


@_timed(2, "Cubic congruence J = c * sum a z^3 mod (L, Q)", 30)
def criterion_2(res, scale, rng):
    n = _n(100, scale)
    e5_ok, other_ok, member_ok = 0, 0, 0
    for _ in range(n):
        P = random_nondegenerate(rng)
        cs = {i: congruence_constant(P, i) for i in range(1, 6)}
        member_ok += all(c is not None for c in cs.values())
        e5_ok += cs[5] == -2 * sum(P.alpha, Fraction(0))
        other_ok += all(cs[i] == expected_congruence_constant(P, i) for i in range(1, 5))
    res.add(f"membership certified for all 5 indices on {n} planes", member_ok == n, note=f"{member_ok}/{n}")
    res.add("constant at e5 equals -2 sum(alpha)", e5_ok == n, note=f"{e5_ok}/{n}")
    res.add("constants at e1..e4 equal the solved per-index values", other_ok == n, role="info",
            note=f"{other_ok}/{n}; c = 2 a1 at e1, -2 a_i at e2..e4")


@_timed(3, "Stability of the sextic for nondegenerate planes", 60)
def criterion_3(res, scale, rng):
    n = _n(500, scale)
    bad = []
    for _ in range(n):
        P = random_nondegenerate(rng)
        if not phi_sextic(P).stable:
            bad.append(P.to_text())
    res.add(f"{n} random planes give stable sextics", not bad, note="; ".join(bad[:3]))


def _double_root_count(s):
    return sum(1 for _, m in s.double_roots if m == 2)


@_timed(4, "Special planes <=> double roots", 30)
def criterion_4(res, scale, rng):
    n = _n(100, scale)
    ok_s = sum(1 for _ in range(n) if _double_root_count(phi_sextic(random_special(rng, 1))) == 1)
    ok_g = sum(1 for _ in range(n) if _double_root_count(phi_sextic(random_generic(rng))) == 0)
    res.add(f"{n} one-condition special planes have one double root", ok_s == n, note=f"{ok_s}/{n}")
    res.add(f"{n} non-special planes have no double root", ok_g == n, note=f"{ok_g}/{n}")
    fixed = Plane([1, -1, -1, 3])
    res.add("alpha=(1,-1,-1,3) has exactly 2 double roots", _double_root_count(phi_sextic(fixed)) == 2)
    m = _n(20, scale)
    ok2 = sum(1 for _ in range(m) if _double_root_count(phi_sextic(random_special(rng, 2))) == 2)
    res.add(f"{m} random two-condition planes have 2 double roots", ok2 == m, note=f"{ok2}/{m}")
    three = Plane([1, -1, -1, -1])
    res.add("three-condition plane (1,-1,-1,-1) has 3 double roots",
            _double_root_count(phi_sextic(three)) == 3, role="info")


@_timed(5, "Printed fiber of the Jacobian map", 10)
def criterion_5(res, scale, rng):
    pen = {k: (_q(a), _q(b)) for k, (a, b) in EX52.items()}
    jac = {k: jacobian_pencil(*v) for k, v in pen.items()}
    j0 = jac["p2"]                            # reference adopted for the printed j0
    res.add("Jac(p1) ~ Jac(p2) ~ Jac(p3) exactly",
            jac["p1"].proportional(j0) and jac["p3"].proportional(j0), printed=True)
    ranks = tuple(jac_rank(*pen[k]) for k in ("p1", "p2", "p3"))
    res.add("jac_rank = (5,6,5)", ranks == (5, 6, 5), note=f"computed {ranks}", printed=True)
    res.add("all three pencils lie in H", all(in_H(*pen[k]) for k in pen))
    sol = fiber_solve(j0)
    found = [p.normalized_complex() for p, _, _ in sol.pencils]
    hits = [any(_plucker_close([complex(x) for x in pluecker(*pen[k]).p], w) for w in found) for k in pen]
    res.add("fiber at Jac(p2) is exactly {p1,p2,p3} with total multiplicity 5",
            all(hits) and len(found) == 3 and sol.total_multiplicity == 5,
            note=f"hits {hits}, {len(found)} points, total {sol.total_multiplicity}", printed=True)
    # recomputed data: p1 and p3 determine the fiber; the third point is recomputed
    true2 = (_q(EX52_TRUE_P2[0]), _q(EX52_TRUE_P2[1]))
    jt = jacobian_pencil(*true2)
    res.add("Jac(p1) ~ Jac(true p2) ~ Jac(p3) exactly [recomputed p2]",
            jac["p1"].proportional(jt) and jac["p3"].proportional(jt), role="corrected")
    res.add("true p2 lies in H [recomputed p2]", in_H(*true2), role="corrected")
    sol = fiber_solve(jac["p1"])
    found = [(p.normalized_complex(), m) for p, m, _ in sol.pencils]
    want = [pen["p1"], true2, pen["p3"]]
    mults = []
    for f, g in want:
        v = [complex(x) for x in pluecker(f, g).p]
        mults.append(next((m for w, m in found if _plucker_close(v, w)), 0))
    res.add("fiber at Jac(p1) is {p1, true p2, p3}, total multiplicity 5 [recomputed p2]",
            len(found) == 3 and all(mults) and sum(mults) == 5, role="corrected",
            note=f"multiplicities {mults}")
    ranks_t = (jac_rank(*pen["p1"]), jac_rank(*true2), jac_rank(*pen["p3"]))
    res.add("rank drops exactly at the point of multiplicity > 1 [recomputed p2]",
            all((r < 6) == (m > 1) for r, m in zip(ranks_t, mults)), role="corrected",
            note=f"ranks {ranks_t}")


@_timed(6, "Printed pencils over the sextic j1", 10)
def criterion_6(res, scale, rng):
    cm2 = [cmath.rect(2 ** (1 / 3), cmath.pi / 3 + 2 * cmath.pi * k / 3) for k in range(3)]
    c4 = [cmath.rect(4 ** (1 / 3), 2 * cmath.pi * k / 3) for k in range(3)]
    target = [complex(x) for x in J1.coeffs]
    prop, inH = [], []
    for c, d in itertools.product(cm2, c4):
        a, b = ex53_pencil1(c, d)
        prop.append(bool(_numeric_proportional(_numeric_jacobian(a, b), target)))
        inH.append(bool(_numeric_in_H(a, b)))
    a2, b2 = (_q(v) for v in EX53_PENCIL2)
    jac2 = [complex(x) for x in jacobian_pencil(a2, b2).coeffs]
    res.add("pencil 1 maps to a sextic proportional to j1 (some cube-root branch)", any(prop),
            note=f"branches {prop}", printed=True)
    res.add("pencil 2 maps to a sextic proportional to j1", _numeric_proportional(jac2, target))
    res.add("pencil 1 lies in H (some cube-root branch)", any(inH), note=f"branches {inH}", printed=True)
    res.add("pencil 2 is not in H", not in_H(a2, b2))
    cfg = reconstruct_configuration(a2, b2)
    res.add("reconstruction of pencil 2 satisfies the incidences", cfg is not None)
    res.add("Phi of the reconstruction is moduli-equal to j1",
            moduli_equal(phi_from_configuration(cfg, 1), J1))
    # recomputed: the other points of the fiber of j1
    sol = fiber_solve(J1)
    others = [(p, m) for p, m, _ in sol.pencils
              if not _plucker_close(p.normalized_complex(), [complex(x) for x in pluecker(a2, b2).p])]
    res.add("fiber of j1 has total multiplicity 5 [recomputed pencil 1]", sol.total_multiplicity == 5,
            role="corrected")
    res.add("the fiber points other than pencil 2 lie in H [recomputed pencil 1]",
            bool(others) and all(_numeric_in_H(*[[complex(x) for x in q.a] for q in p.pencil()])
                                 for p, _ in others), role="corrected")


@_timed(7, "Degree-5 covering: fibers of Phi(alpha) are the quadrangle pencils", 300)
def criterion_7(res, scale, rng):
    n = _n(50, scale)
    tot_ok = res_ok = match_ok = 0
    for _ in range(n):
        P = random_generic(rng)
        s = phi_sextic(P)
        S, _ = von_staudt_conic(P)
        R = ConicParametrization(S, point_on_conic(S))
        sol = fiber_solve(s.form)
        tot_ok += sol.total_multiplicity == 5
        res_ok += all(r < 1e-9 for _, _, r in sol.pencils)
        found = [p.normalized_complex() for p, _, _ in sol.pencils]
        hits = 0
        for i in range(1, 6):
            q1, q2 = quadrangle_pencil(P, i).conics
            f = BinomialQuartic.from_form(R.pullback(q1))
            g = BinomialQuartic.from_form(R.pullback(q2))
            v = [complex(x) for x in pluecker(f, g).p]
            hits += any(_plucker_close(v, w) for w in found)
        match_ok += hits == 5 and len(found) == 5
    res.add(f"total multiplicity 5 on {n} sextics", tot_ok == n, note=f"{tot_ok}/{n}")
    res.add("every solution reprojects with residual < 1e-9", res_ok == n, note=f"{res_ok}/{n}")
    res.add("the 5 solutions are the 5 quadrangle pencils", match_ok == n, note=f"{match_ok}/{n}")


def _fifth_power_scalar(A):
    P = A
    for _ in range(4):
        P = linalg.matmul(P, A)
    c = P[0][0]
    return c != 0 and all(P[i][j] == (c if i == j else 0) for i in range(4) for j in range(4))


def _pi5(K):
    mu = K.gen
    return Plane([K(1), -mu, mu * mu, -mu * mu * mu])


@_timed(8, "Singular-point data: 5-cycle, pi5, j5 and (f3, g3)", 10)
def criterion_8(res, scale, rng):
    A = [[Fraction(x) for x in r] for r in CYCLE_MATRIX]
    res.add("matrix fifth power is scalar", _fifth_power_scalar(A))
    cyc = Permutation5.parse("(1 2 3 4 5)")
    images = [linalg.matvec(A, frame_point(i)) for i in range(1, 6)]
    res.add("matrix realizes the 5-cycle on e1..e5",
            all(linalg.proportional(images[i - 1], frame_point(cyc(i))) for i in range(1, 6)))
    res.add("matrix equals the frame transform of (1 2 3 4 5)", frame_transform(cyc) == A, role="info")
    for K, role, tag in ((MU_FIELD, "stated", ""), (TENTH_ROOT_FIELD, "corrected", " [corrected field]")):
        pi5 = _pi5(K)
        fixed = dual_image(pi5, cyc) == pi5
        printed = role == "stated"
        res.add(f"the 5-cycle fixes pi5 over Q[mu]/({K.minpoly_str()}){tag}", fixed, role=role,
                printed=printed)
        res.add(f"Phi(pi5) is moduli-equal to j5{tag}", moduli_equal(phi_sextic(pi5), J5), role=role,
                printed=printed)
    res.add("Jac(f3, g3) = j3 exactly", jacobian_pencil(F3, G3) == J3)
    res.add("(f3, g3) is admissible", admissible(BinomialQuartic.from_form(F3), BinomialQuartic.from_form(G3)))


@_timed(9, "Degenerations: 6-fold point, whole line, fixed-line ideal", 30)
def criterion_9(res, scale, rng):
    n = _n(100, scale)
    six = cert = conj = prod = 0
    for _ in range(n):
        P = random_kind(rng, 1)
        d = degenerate_divisor(P)
        k = P.contained_frame_points()[0]
        six += (d.variant == "SixFoldPoint" and d.point == ProjPoint(frame_point(k)) and not d.semistable)
        cert += d.certificate.get("multiplicities") == [3, 3]
        _, l1, l2 = involution_fixed_lines(P)
        conj += all((x.conj() if isinstance(x, QuadExt) else x) == y for x, y in zip(l1, l2))
        prod += product_certificate(P) is not None
    res.add(f"{n} kind-1 planes give the 6-fold point at the frame point, not semistable", six == n,
            note=f"{six}/{n}")
    res.add("3+3 certificate on every kind-1 plane", cert == n, note=f"{cert}/{n}")
    res.add("fixed lines are Galois conjugate", conj == n, note=f"{conj}/{n}")
    res.add("fixed-line product ideal equals the von Staudt ideal", prod == n, note=f"{prod}/{n}")
    m = _n(100, scale)
    wl = sum(1 for _ in range(m) if degenerate_divisor(random_kind(rng, 2)).variant == "WholeLine")
    res.add(f"{m} kind-2 planes give the whole-line verdict", wl == m, note=f"{wl}/{m}")
    f6 = six_fold_sextic()
    res.add("a 6-fold sextic is neither stable nor semistable", not is_stable(f6) and not is_semistable(f6))


@_timed(10, "Moduli sanity: canonical form, isomorphism, Galois", 60)
def criterion_10(res, scale, rng):
    n = _n(50, scale)
    perms = all_permutations()
    const = iso = 0
    for _ in range(n):
        P = random_nondegenerate(rng)
        c0 = canonical_form(P)
        const += all(tuple(canonical_form(dual_image(P, s)).alpha) == tuple(c0.alpha) for s in perms)
        sigma = rng.choice(perms)
        Q = dual_image(P, sigma)
        tau = configs_isomorphic(P, Q)
        iso += tau is not None and dual_image(P, tau) == Q
    res.add(f"canonical form constant on {n} orbits x 120 images", const == n, note=f"{const}/{n}")
    res.add("configs_isomorphic round-trips", iso == n, note=f"{iso}/{n}")
    m = _n(100, scale)
    gal = tried = 0
    while tried < m:
        P = random_nondegenerate(rng)
        s = phi_sextic(P)
        if s.field is None:
            continue
        tried += 1
        gal += galois_invariant(s)
    res.add(f"absolute invariants rational for {m} sextics over Q(sqrt d)", gal == m, note=f"{gal}/{m}")
    res.add("canonical form of (1,2,3,4) is (1,-10,2,3)",
            tuple(canonical_form(Plane([1, 2, 3, 4])).alpha) == (1, -10, 2, 3), role="info")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_all(scale: float = 1.0, seed: int = SEED, progress=None):
    out = []
    for crit in CRITERIA:
        r = crit(scale, seed)
        out.append(r)
        if progress:
            progress(r)
    return out
