"""Exact spectral predicates for Seidel and other integer symmetric matrices."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Sequence, Union

import numpy as np

from .core import SeidelMatrix
from .linalg import (
    IntPolynomial,
    charpoly_fl,
    check_seidel_charpoly,
    derivative,
    leading_principal_minors,
    multiplicity_of_factor,
    poly_gcd,
    rank,
)


def _matrix(A) -> np.ndarray:
    return A.array if isinstance(A, SeidelMatrix) else np.asarray(A)


def charpoly(A) -> IntPolynomial:
    p = charpoly_fl(_matrix(A))
    if isinstance(A, SeidelMatrix):
        check_seidel_charpoly(p, A.order)
    return p


# ---------------------------------------------------------------- eigenvalue types


@dataclass(frozen=True, order=True)
class Int:
    r: int

    def polynomial(self) -> IntPolynomial:
        return IntPolynomial((-self.r, 1))

    def negate(self) -> "Int":
        return Int(-self.r)

    def __str__(self) -> str:
        return f"[{self.r}]"


@dataclass(frozen=True, order=True)
class QuadPair:
    """Both roots of x^2 - p x + q."""

    p: int
    q: int

    def __post_init__(self):
        d = self.p * self.p - 4 * self.q
        if d <= 0 or isqrt(d) ** 2 == d:
            raise ValueError(f"x^2 - {self.p}x + {self.q} is not an irreducible real quadratic")

    @property
    def discriminant(self) -> int:
        return self.p * self.p - 4 * self.q

    def polynomial(self) -> IntPolynomial:
        return IntPolynomial((self.q, -self.p, 1))

    def negate(self) -> "QuadPair":
        return QuadPair(-self.p, self.q)

    def __str__(self) -> str:
        return f"Q({self.p},{self.q})"


AlgebraicEigenvalue = Union[Int, QuadPair]


def floor_times_100(e: AlgebraicEigenvalue, upper: bool) -> int:
    """floor(100 * root); ``upper`` picks the larger root of a pair."""
    if isinstance(e, Int):
        return 100 * e.r
    s = isqrt(2500 * e.discriminant)  # floor(50 sqrt(D)), never exact
    return 50 * e.p + s if upper else 50 * e.p - s - 1


def ceil_times_100(e: AlgebraicEigenvalue, upper: bool) -> int:
    if isinstance(e, Int):
        return 100 * e.r
    return floor_times_100(e, upper) + 1


_TERM = re.compile(r"\s*(?:\[\s*(-?\d+)\s*\]|Q\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))\s*\^\s*(\d+)\s*")


@dataclass(frozen=True)
class SpectrumSpec:
    terms: tuple[tuple[AlgebraicEigenvalue, int], ...]

    def __post_init__(self):
        seen = set()
        for e, m in self.terms:
            if m < 1:
                raise ValueError("multiplicities must be positive")
            if e in seen:
                raise ValueError(f"repeated eigenvalue {e}")
            seen.add(e)
        roots = [e for e, _ in self.terms]
        for a in roots:
            for b in roots:
                if isinstance(a, Int) and isinstance(b, QuadPair) and b.polynomial()(a.r) == 0:
                    raise ValueError("integer root coincides with a quadratic root")

    @classmethod
    def parse(cls, text: str) -> "SpectrumSpec":
        terms = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TERM.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse spectrum near {text[pos:]!r}")
            if m.group(1) is not None:
                e = Int(int(m.group(1)))
            else:
                e = QuadPair(int(m.group(2)), int(m.group(3)))
            terms.append((e, int(m.group(4))))
            pos = m.end()
            if pos < len(text):
                if text[pos] != ",":
                    raise ValueError(f"expected ',' at {text[pos:]!r}")
                pos += 1
        if not terms:
            raise ValueError("empty spectrum")
        return cls(tuple(terms))

    def __str__(self) -> str:
        return ",".join(f"{e}^{m}" for e, m in self.terms)

    @property
    def order(self) -> int:
        return sum(m * (2 if isinstance(e, QuadPair) else 1) for e, m in self.terms)

    def power_sum(self, k: int) -> int:
        """Exact sum of the k-th powers of all eigenvalues (k = 1, 2)."""
        total = 0
        for e, m in self.terms:
            if isinstance(e, Int):
                total += m * e.r**k
            elif k == 1:
                total += m * e.p
            elif k == 2:
                total += m * (e.p * e.p - 2 * e.q)
            else:
                raise ValueError("only k = 1, 2 supported")
        return total

    def is_seidel_consistent(self) -> bool:
        n = self.order
        return self.power_sum(1) == 0 and self.power_sum(2) == n * (n - 1)

    def polynomial(self) -> IntPolynomial:
        out = IntPolynomial((1,))
        for e, m in self.terms:
            out = out * e.polynomial() ** m
        return out

    def negate(self) -> "SpectrumSpec":
        return SpectrumSpec(tuple((e.negate(), m) for e, m in self.terms))

    def same_multiset(self, other: "SpectrumSpec") -> bool:
        return Counter(self.terms) == Counter(other.terms)

    def interval_times_100(self) -> tuple[int, int]:
        """(lo, hi) with all roots strictly inside (lo/100, hi/100), margin >= 1/100."""
        lo = min(floor_times_100(e, upper=False) for e, _ in self.terms) - 1
        hi = max(ceil_times_100(e, upper=True) for e, _ in self.terms) + 1
        return lo, hi

    def multiplicity_of(self, e: AlgebraicEigenvalue) -> int:
        for f, m in self.terms:
            if f == e:
                return m
        return 0


# ---------------------------------------------------------------- predicates


def distinct_count_from_poly(p: IntPolynomial) -> int:
    return p.degree - poly_gcd(p, derivative(p)).degree


def distinct_eigenvalue_count(A) -> int:
    """Number of distinct eigenvalues: n - deg gcd(p, p')."""
    return distinct_count_from_poly(charpoly(A))


def is_psd_poly(p: IntPolynomial) -> bool:
    n = p.degree
    return all((-1) ** (n - i) * c >= 0 for i, c in enumerate(p.coeffs))


def is_psd(A) -> bool:
    """All coefficients of the characteristic polynomial alternate in sign."""
    return is_psd_poly(charpoly_fl(_matrix(A)))


def is_pd_sylvester(A) -> bool:
    minors = leading_principal_minors(_matrix(A), stop_at_nonpositive=True)
    return all(d > 0 for d in minors)


def in_interval_open(S, lo_times_100: int, hi_times_100: int) -> bool:
    """Every eigenvalue lies strictly between lo/100 and hi/100."""
    if lo_times_100 >= hi_times_100:
        raise ValueError("empty interval")
    a = _matrix(S).astype(object)
    n = a.shape[0]
    eye = np.eye(n, dtype=object)
    return is_pd_sylvester(100 * a - lo_times_100 * eye) and is_pd_sylvester(hi_times_100 * eye - 100 * a)


def multiplicity_int(S, r: int) -> int:
    a = _matrix(S).astype(object)
    n = a.shape[0]
    return n - rank(a - r * np.eye(n, dtype=object))


def multiplicity_quad(S, p: int, q: int) -> int:
    """Common multiplicity of the two roots of x^2 - p x + q."""
    quad = QuadPair(p, q).polynomial()
    cp = charpoly(S) if isinstance(S, SeidelMatrix) else charpoly_fl(_matrix(S))
    return multiplicity_quad_poly(cp, quad)


def multiplicity_quad_poly(cp: IntPolynomial, quad: IntPolynomial) -> int:
    n = cp.degree
    g = poly_gcd(cp, quad ** (n // 2)) if n >= 2 else IntPolynomial((1,))
    if g.degree % 2:
        raise AssertionError("gcd with a power of an irreducible quadratic has odd degree")
    return g.degree // 2


def multiplicity_from_poly(cp: IntPolynomial, e: AlgebraicEigenvalue) -> int:
    return multiplicity_of_factor(cp, e.polynomial())


def lambda_min_class_poly(p: IntPolynomial, x: int) -> int:
    """Sign of lambda_min - x: -1, 0 or +1."""
    shifted = p.taylor_shift(x)  # roots are the eigenvalues minus x
    if not is_psd_poly(shifted):
        return -1
    return 0 if shifted.coeffs and shifted.coeffs[0] == 0 else 1


def lambda_min_class(S, x: int) -> int:
    """-1 if lambda_min < x, 0 if equal, +1 if greater."""
    return lambda_min_class_poly(charpoly(S), x)


def gersgorin_ok(S: SeidelMatrix) -> bool:
    n = S.order
    if n == 1:
        return True
    return in_interval_open(S, -(n - 1) * 100 - 1, (n - 1) * 100 + 1)


# ---------------------------------------------------------------- cospectrality


@dataclass(frozen=True)
class CospectralSummary:
    distinct_polys: int
    with_mate: int
    max_family: int


def cospectral_census(polys: Iterable[Sequence[int]], shard_prime: int | None = None) -> CospectralSummary:
    """Count distinct characteristic polynomials and cospectral families.

    ``polys`` are ascending coefficient tuples.  With ``shard_prime`` the
    polynomials are bucketed by |det| mod p first and each bucket is counted
    separately; a family never spans two buckets.
    """
    polys = [tuple(p) for p in polys]
    if shard_prime is None:
        shards = [polys]
    else:
        buckets: dict[int, list] = {}
        for p in polys:
            buckets.setdefault(abs(p[0]) % shard_prime, []).append(p)
        shards = [buckets[k] for k in sorted(buckets)]
    distinct = mates = biggest = 0
    for shard in shards:
        counts = Counter(shard)
        distinct += len(counts)
        mates += sum(c for c in counts.values() if c > 1)
        biggest = max(biggest, max(counts.values(), default=0))
    return CospectralSummary(distinct, mates, biggest)
