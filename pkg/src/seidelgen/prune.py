"""Hereditary, equivalence-invariant prune predicates for the generator.

Every predicate has a plain exact definition (``accepts``) and a fast path
that decides all one-row extensions of a fixed parent at once.  The fast path
relies on the bordered-matrix identities for ``B' = [[B, x], [x^T, d]]``:

* if ``x`` is not in the column space of B then rank(B') = rank(B) + 2;
* otherwise rank(B') = rank(B) + [d - x^T B^# x != 0] for any generalized
  inverse B^#, and for positive semidefinite B the child is positive
  semidefinite iff ``d - x^T B^# x >= 0``.

``x`` in the column space of symmetric B is the linear condition x ⊥ ker(B),
which the generator uses to enumerate only admissible rows.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import SeidelMatrix
from .linalg import INT64_SAFE, IntPolynomial, adjugate_det, charpoly_batch, eliminate, multiplicity_of_factor
from .spectral import (
    AlgebraicEigenvalue,
    Int,
    QuadPair,
    charpoly,
    in_interval_open,
    is_psd_poly,
    multiplicity_int,
    multiplicity_quad,
)

MOD_PRIME = 268435399  # < 2^28, keeps int64 dot products exact


@dataclass
class _Bordered:
    """Everything needed to decide B' = [[B, x], [x^T, d]] for many x."""

    rank: int
    kernel: np.ndarray  # (k, m) integer kernel basis of B
    rows: list[int]
    cols: list[int]
    adj: list[list[int]]  # adjugate of B[rows, cols]
    det: int

    @classmethod
    def of(cls, B: np.ndarray) -> "_Bordered":
        el = eliminate(B)
        m = B.shape[0]
        kernel = np.array(el.kernel, dtype=object).reshape(len(el.kernel), m)
        if el.rank:
            sub = B[np.ix_(el.pivot_rows, el.pivot_cols)]
            adj, det = adjugate_det(sub)
        else:
            adj, det = [], 1
        return cls(el.rank, kernel, el.pivot_rows, el.pivot_cols, adj, det)

    def schur_numerator(self, X: np.ndarray, d: int) -> np.ndarray:
        """det * (d - x^T B^# x) for each row x of X (exact, object or int64)."""
        if not self.rank:
            return np.full(len(X), d * self.det, dtype=object)
        adj = np.array(self.adj, dtype=object)
        amax = int(np.abs(adj).max()) if adj.size else 0
        r = self.rank
        if amax * r * r + abs(d * self.det) < INT64_SAFE:
            a = adj.astype(np.int64)
            xc = X[:, self.cols].astype(np.int64)
            xr = X[:, self.rows].astype(np.int64)
            q = np.einsum("ij,ij->i", xc @ a, xr)
            return d * self.det - q
        xc = X[:, self.cols].astype(object)
        xr = X[:, self.rows].astype(object)
        q = ((xc @ adj) * xr).sum(axis=1)
        return d * self.det - q

    def schur_zero(self, X: np.ndarray, d: int) -> np.ndarray:
        """d - x^T B^# x == 0, screened modulo a prime and confirmed exactly."""
        if not self.rank:
            return np.full(len(X), d == 0)
        p = MOD_PRIME
        adj = np.array([[v % p for v in row] for row in self.adj], dtype=np.int64)
        xc = X[:, self.cols].astype(np.int64) % p
        xr = X[:, self.rows].astype(np.int64)
        t = (xc @ adj) % p
        q = np.einsum("ij,ij->i", t, xr) % p
        cand = ((d * self.det) % p - q) % p == 0
        out = np.zeros(len(X), dtype=bool)
        idx = np.flatnonzero(cand)
        if len(idx):
            exact = self.schur_numerator(X[idx], d)
            out[idx] = np.array([v == 0 for v in exact], dtype=bool)
        return out


class Prune:
    """Base class. Subclasses define ``accepts`` and may speed up ``extend``."""

    name = "prune"

    def accepts(self, S: SeidelMatrix) -> bool:
        raise NotImplementedError

    def prepare(self, S: SeidelMatrix):
        return None

    def constraints(self, state) -> np.ndarray | None:
        """Integer vectors every admissible new row must be orthogonal to."""
        return None

    def extend(self, S: SeidelMatrix, state, X: np.ndarray) -> np.ndarray:
        """Boolean mask: which rows of X give an accepted child."""
        return np.array([self.accepts(S.augment(x)) for x in X.tolist()], dtype=bool)

    def spec(self) -> str:
        return self.name


@dataclass
class LambdaMinAtLeast(Prune):
    """Smallest eigenvalue >= bound (bound an integer)."""

    bound: int
    name: str = field(default="lambda-min-ge", init=False)

    def accepts(self, S: SeidelMatrix) -> bool:
        n = S.order
        A = S.array - self.bound * np.eye(n, dtype=np.int64)
        from .linalg import charpoly_fl

        return is_psd_poly(charpoly_fl(A))

    def prepare(self, S):
        n = S.order
        return _Bordered.of(S.array.astype(object) - self.bound * np.eye(n, dtype=object))

    def constraints(self, state):
        return state.kernel if len(state.kernel) else None

    def extend(self, S, state, X):
        # rows already satisfy x ⊥ ker, so only the Schur sign is left
        num = state.schur_numerator(X, -self.bound)
        sgn = 1 if state.det > 0 else -1
        return np.array([v * sgn >= 0 for v in num], dtype=bool)

    def spec(self) -> str:
        return f"lambda-min-ge:{self.bound}"


@dataclass
class IntMultiplicityAtLeast(Prune):
    """Multiplicity of the integer eigenvalue ``root`` is at least
    ``required(order)``, where required(m) = max(0, mult - (total - m)) for a
    target of multiplicity ``mult`` at order ``total``."""

    root: int
    mult: int
    total: int
    name: str = field(default="eig-mult", init=False)

    def required(self, m: int) -> int:
        return max(0, self.mult - (self.total - m))

    def accepts(self, S):
        need = self.required(S.order)
        return need == 0 or multiplicity_int(S, self.root) >= need

    def prepare(self, S):
        m = S.order
        if self.required(m + 1) == 0:
            st = _Bordered(m, np.zeros((0, m), dtype=object), [], [], [], 1)
            st.parent_mult = st.need = 0
            return st
        st = _Bordered.of(S.array.astype(object) - self.root * np.eye(m, dtype=object))
        st.parent_mult = m - st.rank
        st.need = self.required(m + 1)
        return st

    def constraints(self, state):
        if state.need >= state.parent_mult and len(state.kernel):
            return state.kernel
        return None

    def extend(self, S, state, X):
        k, need = state.parent_mult, state.need
        if need <= k - 1:
            return np.ones(len(X), dtype=bool)
        if need == k:
            return np.ones(len(X), dtype=bool)  # x ⊥ ker already enforced
        if need == k + 1:
            return state.schur_zero(X, -self.root)
        return np.zeros(len(X), dtype=bool)

    def spec(self) -> str:
        return f"eig-mult:{self.root}:{self.mult}@{self.total}"


@dataclass
class QuadMultiplicityAtLeast(Prune):
    """Same as IntMultiplicityAtLeast for both roots of x^2 - p x + q."""

    p: int
    q: int
    mult: int
    total: int
    name: str = field(default="quad-mult", init=False)

    def required(self, m: int) -> int:
        return max(0, self.mult - (self.total - m))

    def _poly(self) -> IntPolynomial:
        return QuadPair(self.p, self.q).polynomial()

    def accepts(self, S):
        need = self.required(S.order)
        return need == 0 or multiplicity_quad(S, self.p, self.q) >= need

    def prepare(self, S):
        m = S.order
        if self.required(m + 1) == 0:
            return {"kernel": np.zeros((0, m), dtype=object), "parent_mult": 0, "need": 0}
        a = S.array.astype(object)
        Q = a @ a - self.p * a + self.q * np.eye(m, dtype=object)
        el = eliminate(Q)
        kernel = np.array(el.kernel, dtype=object).reshape(len(el.kernel), m)
        return {"kernel": kernel, "parent_mult": (m - el.rank) // 2, "need": self.required(m + 1)}

    def constraints(self, state):
        if state["need"] >= state["parent_mult"] and len(state["kernel"]):
            return state["kernel"]
        return None

    def extend(self, S, state, X):
        k, need = state["parent_mult"], state["need"]
        if need <= k:
            # need <= k - 1: always; need == k: x ⊥ ker(Q) already enforced
            return np.ones(len(X), dtype=bool)
        if need > k + 1 or not len(X):
            return np.zeros(len(X), dtype=bool)
        m = S.order
        stack = np.empty((len(X), m + 1, m + 1), dtype=np.int64)
        stack[:, :m, :m] = S.array
        stack[:, :m, m] = X
        stack[:, m, :m] = X
        stack[:, m, m] = 0
        quad = self._poly()
        return np.array(
            [multiplicity_of_factor(IntPolynomial(c), quad) >= need for c in charpoly_batch(stack)], dtype=bool
        )

    def spec(self) -> str:
        return f"quad-mult:{self.p}:{self.q}:{self.mult}@{self.total}"


@dataclass
class OpenInterval(Prune):
    """All eigenvalues strictly inside (lo/100, hi/100)."""

    lo100: int
    hi100: int
    name: str = field(default="interval", init=False)

    def accepts(self, S):
        return in_interval_open(S, self.lo100, self.hi100)

    def prepare(self, S):
        a = S.array.astype(float)
        m = S.order
        out = []
        for sign, shift in ((1.0, -self.lo100), (-1.0, self.hi100)):
            A = sign * 100.0 * a + shift * np.eye(m)
            w = np.linalg.eigvalsh(A)
            if w.min() <= 0:
                out.append((sign, shift, None, float(w.min()), float(w.max())))
                continue
            inv = np.linalg.inv(A)
            out.append((sign, shift, inv, float(w.min()), float(w.max())))
        return out

    def extend(self, S, state, X):
        Xf = X.astype(float)
        m = S.order
        ok = np.ones(len(X), dtype=bool)
        unsure = np.zeros(len(X), dtype=bool)
        eps = np.finfo(float).eps
        if any(wmin <= 0 for *_, wmin, _ in state):
            # the parent is a principal submatrix of every child
            if not self.accepts(S):
                return np.zeros(len(X), dtype=bool)
            return np.array([self.accepts(S.augment(x.tolist())) for x in X], dtype=bool)
        for sign, shift, inv, wmin, wmax in state:
            quad = np.einsum("ij,ij->i", Xf @ inv, Xf) * 1e4
            val = shift - quad
            kappa = wmax / max(wmin, 1e-300)
            tol = 1e3 * eps * kappa * (abs(shift) + 1e4 * m / max(wmin, 1e-300))
            ok &= val > tol
            unsure |= np.abs(val) <= tol
        for i in np.flatnonzero(unsure):
            ok[i] = self.accepts(S.augment(X[i].tolist()))
        return ok

    def spec(self) -> str:
        return f"interval:{self.lo100}:{self.hi100}"


def parse_prune(text: str) -> list[Prune]:
    """``lambda-min-ge:X`` or ``eig-mult:R:D`` (multiplicity of R >= order - D)."""
    kind, _, rest = text.partition(":")
    if kind == "lambda-min-ge":
        return [LambdaMinAtLeast(int(rest))]
    if kind == "eig-mult":
        r, d = rest.split(":")
        return [EigenvalueCodimension(int(r), int(d))]
    raise ValueError(f"unknown prune spec {text!r}")


@dataclass
class EigenvalueCodimension(Prune):
    """Multiplicity of the integer eigenvalue ``root`` is >= order - dim."""

    root: int
    dim: int
    name: str = field(default="eig-mult", init=False)

    def _inner(self, order: int) -> IntMultiplicityAtLeast:
        # required(m) = max(0, m - dim) matches mult - (total - m) with total = mult + dim
        return IntMultiplicityAtLeast(self.root, order - self.dim, order)

    def required(self, m: int) -> int:
        return max(0, m - self.dim)

    def accepts(self, S):
        need = self.required(S.order)
        return need == 0 or multiplicity_int(S, self.root) >= need

    def prepare(self, S):
        return self._inner(S.order + 1).prepare(S)

    def constraints(self, state):
        return self._inner(0).constraints(state)

    def extend(self, S, state, X):
        return self._inner(S.order + 1).extend(S, state, X)

    def spec(self) -> str:
        return f"eig-mult:{self.root}:{self.dim}"
