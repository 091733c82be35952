"""Small dense linear algebra over any scalar tier.

Matrices are lists of row lists.  Exact tiers use plain
Gauss-Jordan elimination with the first nonzero pivot; ``ComplexApprox``
entries use partial pivoting and the SVD for rank decisions.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .scalars import ComplexApprox, common_zero, is_exact

NUMERIC_RANK_TOL = 1e-8


def _is_numeric(M) -> bool:
    return any(isinstance(x, (ComplexApprox, complex, float)) for row in M for x in row)


def _zero_like(M):
    return common_zero([x for row in M for x in row])


def _is_zero(x) -> bool:
    return x == 0


def identity(n, one=1):
    return [[Fraction(one) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def matmul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            s = 0
            for k in range(m):
                a = A[i][k]
                if _is_zero(a):
                    continue
                b = B[k][j]
                if _is_zero(b):
                    continue
                s = a * b + s
            row.append(s)
        out.append(row)
    return out


def matvec(A, v):
    return [sum((a * x for a, x in zip(row, v)), 0) for row in A]


def vecmat(v, A):
    return [sum((v[i] * A[i][j] for i in range(len(v))), 0) for j in range(len(A[0]))]


def transpose(A):
    return [list(col) for col in zip(*A)]


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), 0)


def scale(M, c):
    return [[c * x for x in row] for row in M]


def _to_numpy(M):
    return np.array([[complex(x) for x in row] for row in M], dtype=complex)


def rref(M):
    """Reduced row echelon form.  Returns ``(R, pivots)``.

    Exact input only; for ``ComplexApprox`` use :func:`rank` / :func:`nullspace`.
    """
    # ints would turn into floats under 1/x
    R = [[Fraction(x) if isinstance(x, int) else x for x in row] for row in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if not _is_zero(R[i][c])), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(rows):
            if i != r and not _is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, rtol: float = NUMERIC_RANK_TOL) -> int:
    if not M or not M[0]:
        return 0
    if _is_numeric(M):
        s = np.linalg.svd(_to_numpy(M), compute_uv=False)
        if s.size == 0 or s[0] == 0:
            return 0
        return int(np.sum(s > rtol * s[0]))
    return len(rref(M)[1])


def nullspace(M, rtol: float = NUMERIC_RANK_TOL):
    """Basis of ``{x : M x = 0}``.

    Exact: one vector per free column, with a 1 in that column (the
    reduced-echelon basis).  Numeric: right singular vectors, as
    ``ComplexApprox`` lists.
    """
    cols = len(M[0])
    if _is_numeric(M):
        A = _to_numpy(M)
        _, s, vh = np.linalg.svd(A)
        r = int(np.sum(s > rtol * s[0])) if s.size and s[0] > 0 else 0
        return [[ComplexApprox(complex(z)) for z in vh[k].conj()] for k in range(r, cols)]
    R, pivots = rref(M)
    zero = _zero_like(M)
    basis = []
    for free in range(cols):
        if free in pivots:
            continue
        v = [zero] * cols
        v[free] = zero + 1
        for row, pc in enumerate(pivots):
            v[pc] = -R[row][free]
        basis.append(v)
    return basis


def det(M):
    n = len(M)
    if n == 0:
        return Fraction(1)
    if _is_numeric(M):
        return ComplexApprox(complex(np.linalg.det(_to_numpy(M))))
    A = [list(row) for row in M]
    sign = 1
    result = None
    for c in range(n):
        piv = next((i for i in range(c, n) if not _is_zero(A[i][c])), None)
        if piv is None:
            return _zero_like(M)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        p = A[c][c]
        result = p if result is None else result * p
        inv = 1 / p
        for i in range(c + 1, n):
            if not _is_zero(A[i][c]):
                f = A[i][c] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return result if sign > 0 else -result


def solve(A, b):
    """One solution of ``A x = b`` (free variables set to zero), or ``None``."""
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    cols = len(A[0])
    if _is_numeric(aug):
        An = _to_numpy(A)
        bn = np.array([complex(x) for x in b])
        x, *_ = np.linalg.lstsq(An, bn, rcond=None)
        if np.linalg.norm(An @ x - bn) > 1e-8 * max(1.0, np.linalg.norm(bn)):
            return None
        return [ComplexApprox(complex(z)) for z in x]
    R, pivots = rref(aug)
    if cols in pivots:
        return None
    zero = _zero_like(aug)
    x = [zero] * cols
    for row, pc in enumerate(pivots):
        x[pc] = R[row][cols]
    return x


def inverse(M):
    n = len(M)
    if _is_numeric(M):
        inv = np.linalg.inv(_to_numpy(M))
        return [[ComplexApprox(complex(z)) for z in row] for row in inv]
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def proportional(u, v) -> bool:
    """Projective equality: ``u`` and ``v`` nonzero and ``u_i v_j = u_j v_i``."""
    if len(u) != len(v):
        return False
    if all(_is_zero(x) for x in u) or all(_is_zero(x) for x in v):
        return False
    if any(not is_exact(x) for x in list(u) + list(v)):
        a = np.array([complex(x) for x in u])
        b = np.array([complex(x) for x in v])
        a = a / np.linalg.norm(a)
        b = b / np.linalg.norm(b)
        k = int(np.argmax(np.abs(b)))
        lam = a[k] / b[k]
        return bool(np.linalg.norm(a - lam * b) < 1e-9)
    k = next(i for i, x in enumerate(v) if not _is_zero(x))
    if _is_zero(u[k]):
        return False
    return all(u[i] * v[k] == u[k] * v[i] for i in range(len(u)))


def ratio(u, v):
    """The scalar ``c`` with ``u = c v`` (assumes :func:`proportional`)."""
    k = next(i for i, x in enumerate(v) if not _is_zero(x))
    return u[k] / v[k]


def normalize(v):
    """Scale so the first nonzero entry is 1."""
    k = next((i for i, x in enumerate(v) if not _is_zero(x)), None)
    if k is None:
        raise ValueError("zero vector")
    inv = 1 / v[k]
    return [x * inv for x in v]


def cross(u, v):
    return [u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]]


def adjugate3(M):
    """Adjugate of a 3x3 matrix."""
    a = M
    def m(i0, i1, j0, j1):
        return a[i0][j0] * a[i1][j1] - a[i0][j1] * a[i1][j0]
    C = [[m(1, 2, 1, 2), -m(1, 2, 0, 2), m(1, 2, 0, 1)],
         [-m(0, 2, 1, 2), m(0, 2, 0, 2), -m(0, 2, 0, 1)],
         [m(0, 1, 1, 2), -m(0, 1, 0, 2), m(0, 1, 0, 1)]]
    return transpose(C)


def adjugate(M):
    n = len(M)
    if n == 3:
        return adjugate3(M)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[M[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            out[j][i] = det(minor) * (1 if (i + j) % 2 == 0 else -1)
    return out


def trace(M):
    return sum((M[i][i] for i in range(len(M))), 0)
