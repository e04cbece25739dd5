"""Exact integer linear algebra and integer polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd
from typing import Iterable, Sequence

import numpy as np

INT64_SAFE = 1 << 62


class ArithmeticCheckError(AssertionError):
    """An exactness check inside an exact algorithm failed."""


# ---------------------------------------------------------------- polynomials


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending order (c_0, c_1, ...)."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPolynomial":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @classmethod
    def monomial(cls, k: int) -> "IntPolynomial":
        return cls((0,) * k + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "IntPolynomial":
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def divmod_monic(self, d: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        if d.lead not in (1, -1):
            raise ValueError("divisor must be monic (up to sign)")
        r = list(self.coeffs)
        dq = d.degree
        q = [0] * max(0, len(r) - dq)
        for k in range(len(r) - 1, dq - 1, -1):
            c = r[k] * d.lead
            if c:
                q[k - dq] = c
                for j, dc in enumerate(d.coeffs):
                    r[k - dq + j] -= c * dc
        return IntPolynomial(tuple(q)), IntPolynomial(tuple(r[:dq]))

    def taylor_shift(self, a: int) -> "IntPolynomial":
        """p(x + a)."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n):
            for k in range(n - 2, i - 1, -1):
                c[k] += a * c[k + 1]
        return IntPolynomial(tuple(c))

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


def derivative(p: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(tuple(k * p.coeffs[k] for k in range(1, len(p.coeffs))))


def pseudo_remainder(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero")
    r = list(a.coeffs)
    db = b.degree
    lb = b.lead
    while len(r) - 1 >= db and r:
        k = len(r) - 1
        lr = r[k]
        r = [x * lb for x in r]
        for j, c in enumerate(b.coeffs):
            r[k - db + j] -= lr * c
        while r and r[-1] == 0:
            r.pop()
    return IntPolynomial(tuple(r))


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """GCD via the primitive pseudo-remainder sequence; primitive, lead > 0."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p.primitive(), q.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_remainder(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def multiplicity_of_factor(p: IntPolynomial, d: IntPolynomial) -> int:
    """Largest k with d^k | p, for monic d of positive degree."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    k = 0
    while p.degree >= d.degree:
        q, r = p.divmod_monic(d)
        if not r.is_zero():
            break
        p = q
        k += 1
    return k


# ---------------------------------------------------------------- matrices


def _as_int_rows(A) -> list[list[int]]:
    return [[int(x) for x in row] for row in np.asarray(A).tolist()]


def det_bareiss(A) -> int:
    """Exact determinant by fraction-free elimination with row pivoting."""
    M = _as_int_rows(A)
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            a = ri[k]
            for j in range(k + 1, n):
                num = pk * ri[j] - a * rk[j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticCheckError("inexact Bareiss division")
                ri[j] = q
            ri[k] = 0
        prev = pk
    return sign * M[n - 1][n - 1]


def leading_principal_minors(A, stop_at_nonpositive: bool = False) -> list[int]:
    """d_1, ..., d_n.  Fraction-free elimination without pivoting; once a
    pivot vanishes the remaining minors are computed block by block."""
    M = _as_int_rows(A)
    n = len(M)
    out = []
    prev = 1
    for k in range(n):
        pk = M[k][k]
        if pk == 0:
            out.append(0)
            if stop_at_nonpositive:
                return out
            B = _as_int_rows(A)
            for m in range(k + 2, n + 1):
                out.append(det_bareiss([row[:m] for row in B[:m]]))
            return out
        out.append(pk)
        if stop_at_nonpositive and pk < 0:
            return out
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            a = ri[k]
            for j in range(k + 1, n):
                num = pk * ri[j] - a * rk[j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticCheckError("inexact Bareiss division")
                ri[j] = q
            ri[k] = 0
        prev = pk
    return out


def rank(A) -> int:
    """Exact rank via fraction-free elimination with full pivoting."""
    M = _as_int_rows(A)
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    prev = 1
    for _ in range(min(rows, cols)):
        piv = None
        for i in range(r, rows):
            for j in range(r, cols):
                if M[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        M[r], M[i] = M[i], M[r]
        for row in M:
            row[r], row[j] = row[j], row[r]
        pk = M[r][r]
        rk = M[r]
        for i in range(r + 1, rows):
            ri = M[i]
            a = ri[r]
            for j in range(r + 1, cols):
                num = pk * ri[j] - a * rk[j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticCheckError("inexact Bareiss division")
                ri[j] = q
            ri[r] = 0
        prev = pk
        r += 1
    return r


def nullspace(A) -> list[list[int]]:
    """Integer basis of the right kernel of an integer matrix."""
    return eliminate(A).kernel


def _gauss_jordan(M: list[list[int]], pivot_cols: int):
    """Fraction-free Gauss-Jordan elimination in place.

    Pivots are searched only among the first ``pivot_cols`` columns.  On
    return every pivot entry equals ``d`` (the last pivot) and the matrix is
    d times the reduced row echelon form.  Returns (pivot columns, original
    row index of each pivot row, d).
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    order = list(range(rows))
    pivots = []
    prev = 1
    r = 0
    for c in range(pivot_cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        order[r], order[p] = order[p], order[r]
        pr = M[r]
        pv = pr[c]
        for i in range(rows):
            if i == r:
                continue
            ri = M[i]
            f = ri[c]
            if f == 0 and i > r:
                if prev != 1 or pv != 1:
                    # scale stays consistent: row i must still be multiplied by pv / prev
                    for j in range(cols):
                        v = ri[j] * pv
                        q, rem = divmod(v, prev)
                        if rem:
                            raise ArithmeticCheckError("inexact fraction-free step")
                        ri[j] = q
                continue
            for j in range(cols):
                v = pv * ri[j] - f * pr[j]
                q, rem = divmod(v, prev)
                if rem:
                    raise ArithmeticCheckError("inexact fraction-free step")
                ri[j] = q
        pivots.append(c)
        prev = pv
        r += 1
    return pivots, order[:r], prev


def adjugate_det(A) -> tuple[list[list[int]], int]:
    """(d * A^-1, d) with d = +-det(A) for a nonsingular integer matrix."""
    M = _as_int_rows(A)
    n = len(M)
    aug = [row + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    pivots, _, d = _gauss_jordan(aug, n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in aug], d


# ---------------------------------------------------------------- characteristic polynomials


def _fl_batch(A: np.ndarray):
    """Faddeev-LeVerrier on a stack of integer matrices.

    Returns the coefficient array (batch, n + 1) in ascending order and the
    stack of adjugate coefficient matrices M_1..M_n, where
    adj(x I - A) = sum_k M_k x^(n - k).  Falls back to Python integers when
    the 64-bit bound check fails.
    """
    A = np.asarray(A)
    if A.ndim == 2:
        A = A[None]
    b, n, _ = A.shape
    eye = np.eye(n, dtype=np.int64)
    rowsum = int(np.abs(A).sum(axis=2).max()) if n else 0
    big = False
    Ak = A.astype(np.int64)
    M = np.zeros((b, n, n), dtype=np.int64)
    coeffs = [[0] * (n + 1) for _ in range(b)]
    c_prev = np.ones(b, dtype=np.int64)  # c_{n-k+1}
    for row in coeffs:
        row[n] = 1
    mats = []
    for k in range(1, n + 1):
        if not big:
            mmax = int(np.abs(M).max()) if k > 1 else 0
            cmax = int(np.abs(c_prev).max())
            if (rowsum * mmax + cmax) * max(rowsum, 1) * n >= INT64_SAFE:
                big = True
                Ak = A.astype(object)
                M = M.astype(object)
                c_prev = c_prev.astype(object)
                eye = eye.astype(object)
        M = Ak @ M + c_prev[:, None, None] * eye
        mats.append(M)
        AM = Ak @ M
        tr = np.trace(AM, axis1=1, axis2=2)
        if big:
            ck = []
            for i, t in enumerate(tr):
                q, r = divmod(-int(t), k)
                if r:
                    raise ArithmeticCheckError("inexact Faddeev-LeVerrier division")
                ck.append(q)
            c_prev = np.array(ck, dtype=object)
        else:
            if np.any(tr % k):
                raise ArithmeticCheckError("inexact Faddeev-LeVerrier division")
            c_prev = -tr // k
        for i in range(b):
            coeffs[i][n - k] = int(c_prev[i])
    return coeffs, mats


def charpoly_fl(A) -> IntPolynomial:
    coeffs, _ = _fl_batch(np.asarray(A))
    return IntPolynomial(tuple(coeffs[0]))


def charpoly_batch(A: np.ndarray) -> list[tuple[int, ...]]:
    """Ascending coefficient tuples for a stack of matrices."""
    A = np.asarray(A)
    if A.shape[0] == 0:
        return []
    coeffs, _ = _fl_batch(A)
    return [tuple(c) for c in coeffs]


def charpoly_eval_interp(A) -> IntPolynomial:
    """det(x I - A) from Bareiss determinants at x = 0..n and exact interpolation."""
    M = np.asarray(A)
    n = M.shape[0]
    base = _as_int_rows(M)
    vals = []
    for x in range(n + 1):
        B = [[(x if i == j else 0) - base[i][j] for j in range(n)] for i in range(n)]
        vals.append(det_bareiss(B))
    # forward differences give the binomial-basis coefficients
    diffs = []
    cur = vals[:]
    for _ in range(n + 1):
        diffs.append(cur[0])
        cur = [b - a for a, b in zip(cur, cur[1:])]
    out = [Fraction(0)] * (n + 1)
    for k, d in enumerate(diffs):
        if d == 0:
            continue
        # C(x, k) = x (x - 1) ... (x - k + 1) / k!
        ff = IntPolynomial.from_roots(range(k))
        for i, c in enumerate(ff.coeffs):
            out[i] += Fraction(d * c, factorial(k))
    if any(c.denominator != 1 for c in out):
        raise ArithmeticCheckError("interpolation produced a non-integer coefficient")
    return IntPolynomial(tuple(int(c) for c in out))


def check_seidel_charpoly(p: IntPolynomial, n: int) -> None:
    """Zero trace and tr(S^2) = n(n - 1) fix the top two coefficients."""
    c = p.coeffs
    if len(c) != n + 1 or c[n] != 1:
        raise ArithmeticCheckError("characteristic polynomial is not monic of degree n")
    if n >= 1 and c[n - 1] != 0:
        raise ArithmeticCheckError("trace coefficient is nonzero")
    if n >= 2 and c[n - 2] != -comb(n, 2):
        raise ArithmeticCheckError("second coefficient differs from -n(n-1)/2")


def hadamard_bound(A) -> float:
    """Product of row norms; bounds |det A|."""
    a = np.asarray(A, dtype=float)
    return float(np.prod(np.sqrt((a * a).sum(axis=1))))


@dataclass
class Elimination:
    """Row echelon data of an integer matrix: rank, a nonsingular submatrix
    (pivot rows x pivot columns) and an integer kernel basis."""

    rank: int
    pivot_rows: list[int]
    pivot_cols: list[int]
    kernel: list[list[int]]


def eliminate(A) -> Elimination:
    M = _as_int_rows(A)
    cols = len(M[0]) if M else 0
    pivots, prow, d = _gauss_jordan(M, cols)
    pset = set(pivots)
    basis = []
    for fc in range(cols):
        if fc in pset:
            continue
        v = [0] * cols
        v[fc] = d
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc]
        g = 0
        for x in v:
            g = gcd(g, x)
        basis.append([x // g for x in v])
    return Elimination(len(pivots), prow, pivots, basis)
