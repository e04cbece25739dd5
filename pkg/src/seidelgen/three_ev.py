"""Seidel matrices with exactly three distinct eigenvalues."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterator, Sequence

import numpy as np

from .core import AmbientGraph, SeidelMatrix
from .generator import Generated, generate_levels
from .prune import IntMultiplicityAtLeast, OpenInterval, Prune, QuadMultiplicityAtLeast
from .spectral import Int, QuadPair, SpectrumSpec, charpoly

log = logging.getLogger(__name__)

MAX_REGULAR_SCAN = 30

# order-24 spectra whose searches are known to be out of reach for this method
OPEN_SPECTRA = (
    "[-7]^7,[1]^9,[5]^8",
    "[-7]^6,[1]^15,[9]^3",
    "[-5]^10,[1]^8,[7]^6",
    "[-5]^11,[3]^9,[7]^4",
    "[1]^12,Q(-2,-43)^6",
)


class Infeasible(ValueError):
    pass


def multiplicities(n: int, roots: Sequence) -> tuple[int, ...]:
    """Multiplicities forced by n, zero trace and tr(S^2) = n(n - 1).

    ``roots`` is three distinct integers, or one integer followed by a QuadPair
    (returns (a, b) with b the common multiplicity of the pair).
    """
    if len(roots) == 3:
        lam, mu, nu = (Fraction(r) for r in roots)
        if len({lam, mu, nu}) != 3:
            raise ValueError("roots must be distinct")
        a = n * (n - 1 + mu * nu) / ((lam - mu) * (lam - nu))
        b = n * (n - 1 + lam * nu) / ((mu - lam) * (mu - nu))
        c = n * (n - 1 + lam * mu) / ((nu - lam) * (nu - mu))
        out = (a, b, c)
    elif len(roots) == 2 and isinstance(roots[1], QuadPair):
        lam = roots[0]
        pair = roots[1]
        if pair.polynomial()(lam) == 0:
            raise ValueError("roots must be distinct")
        a = Fraction(n * (n - 1 + pair.q), lam * lam - pair.p * lam + pair.q)
        b = (n - a) / 2
        if a * lam + 2 * b * Fraction(pair.p, 2) != 0 or a * lam * lam + b * (pair.p**2 - 2 * pair.q) != n * (n - 1):
            raise Infeasible("trace identities fail")
        out = (a, b)
    else:
        raise ValueError("expected three integers or an integer and a QuadPair")
    if any(v.denominator != 1 or v <= 0 for v in out):
        raise Infeasible("multiplicities are not positive integers")
    return tuple(int(v) for v in out)


def _roots_and_sums(spec: SpectrumSpec):
    ints = [(e.r, m) for e, m in spec.terms if isinstance(e, Int)]
    quads = [(e, m) for e, m in spec.terms if isinstance(e, QuadPair)]
    return ints, quads


def necessary_conditions(spec: SpectrumSpec) -> list[str]:
    """Names of the failed conditions; an empty list means all pass.

    (i)   det = product of the roots is congruent to 1 - n mod 4
    (ii)  every even integer root is simple
    (iii) (n-1)(sum of distinct roots) + product of distinct roots - n^2 - n - 2 = 0 mod 4
    (iv)  an integer root exists and there is at most one conjugate pair
    """
    n = spec.order
    ints, quads = _roots_and_sums(spec)
    failed = []
    det = 1
    for r, m in ints:
        det *= r**m
    for e, m in quads:
        det *= e.q**m
    if (det - (1 - n)) % 4:
        failed.append("i")
    if any(r % 2 == 0 and m != 1 for r, m in ints):
        failed.append("ii")
    distinct = len(ints) + 2 * len(quads)
    if distinct == 3:
        if quads:
            e = quads[0][0]
            lam = ints[0][0]
            s1 = lam + e.p
            s3 = lam * e.q
        else:
            s1 = sum(r for r, _ in ints)
            s3 = ints[0][0] * ints[1][0] * ints[2][0]
        if ((n - 1) * s1 + s3 - n * n - n - 2) % 4:
            failed.append("iii")
    if not ints or len(quads) > 1:
        failed.append("iv")
    return failed


def _normalize(spec: SpectrumSpec) -> SpectrumSpec:
    """Pick the reporting orientation of {spec, -spec}."""
    ints, quads = _roots_and_sums(spec)
    neg = spec.negate()
    if quads:
        lam = ints[0][0]
        p = quads[0][0].p
        keep = lam > 0 or (lam == 0 and p <= 0)
    else:
        lam, mu, nu = sorted(r for r, _ in ints)
        keep = mu > 0 or (mu == 0 and -lam <= nu)
    chosen = spec if keep else neg
    return SpectrumSpec(tuple(sorted(chosen.terms, key=_term_key)))


def _term_key(term):
    e, _ = term
    if isinstance(e, Int):
        return (0, e.r, 0)
    return (1, e.p, e.q)


@dataclass(frozen=True)
class FeasibleSpectrum:
    spec: SpectrumSpec
    self_negating: bool

    def __str__(self) -> str:
        return str(self.spec)


def enumerate_feasible(n: int) -> list[FeasibleSpectrum]:
    """All three-eigenvalue spectra of order n passing every necessary
    condition, one per {S, -S} pair, in the reporting orientation."""
    if n < 3:
        raise ValueError("n must be at least 3")
    R = n - 1
    found: dict[tuple, SpectrumSpec] = {}
    for lam in range(-R, R + 1):
        for mu in range(lam + 1, R + 1):
            for nu in range(mu + 1, R + 1):
                try:
                    a, b, c = multiplicities(n, (lam, mu, nu))
                except Infeasible:
                    continue
                spec = SpectrumSpec(((Int(lam), a), (Int(mu), b), (Int(nu), c)))
                if not necessary_conditions(spec):
                    norm = _normalize(spec)
                    found[tuple(sorted(norm.terms, key=_term_key))] = norm
    for p in range(-2 * R, 2 * R + 1):
        qmin = max(p * R - R * R, -p * R - R * R)
        qmax = (p * p - 1) // 4
        for q in range(qmin, qmax + 1):
            d = p * p - 4 * q
            if d <= 0 or isqrt(d) ** 2 == d:
                continue
            pair = QuadPair(p, q)
            for lam in range(-R, R + 1):
                try:
                    a, b = multiplicities(n, (lam, pair))
                except Infeasible:
                    continue
                spec = SpectrumSpec(((Int(lam), a), (pair, b)))
                if spec.order != n or not spec.is_seidel_consistent():
                    continue
                if not necessary_conditions(spec):
                    norm = _normalize(spec)
                    found[tuple(sorted(norm.terms, key=_term_key))] = norm
    out = []
    for key in sorted(found, key=lambda k: [_term_key(t) + (t[1],) for t in k]):
        spec = found[key]
        out.append(FeasibleSpectrum(spec, spec.same_multiset(spec.negate())))
    return out


def is_open(spec: SpectrumSpec) -> bool:
    for text in OPEN_SPECTRA:
        known = SpectrumSpec.parse(text)
        if spec.same_multiset(known) or spec.same_multiset(known.negate()):
            return True
    return False


def spectrum_prunes(spec: SpectrumSpec) -> list[Prune]:
    n = spec.order
    prunes: list[Prune] = []
    for e, m in spec.terms:
        if isinstance(e, Int):
            prunes.append(IntMultiplicityAtLeast(e.r, m, n))
    for e, m in spec.terms:
        if isinstance(e, QuadPair):
            prunes.append(QuadMultiplicityAtLeast(e.p, e.q, m, n))
    lo, hi = spec.interval_times_100()
    prunes.append(OpenInterval(lo, hi))
    return prunes


@dataclass
class SearchResult:
    spec: SpectrumSpec
    matrices: list[SeidelMatrix]
    level_counts: dict[int, int] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.matrices)


def search_spectrum(spec: SpectrumSpec, jobs: int = 1) -> SearchResult:
    """Every class of order n with exactly the given spectrum."""
    n = spec.order
    if not spec.is_seidel_consistent():
        raise ValueError(f"{spec} violates the trace identities")
    target = spec.polynomial()
    prunes = spectrum_prunes(spec)
    counts = {}
    last: list[Generated] = []
    for order, level in generate_levels(n, prunes, jobs=jobs):
        counts[order] = len(level)
        log.info("%s: order %d -> %d", spec, order, len(level))
        last = level
    hits = [g.matrix for g in last if g.matrix.order == n and charpoly(g.matrix) == target]
    return SearchResult(spec, hits, counts)


def count_three_ev(n: int, jobs: int = 1) -> tuple[int, list[tuple[FeasibleSpectrum, int]]]:
    """Number of classes with exactly three distinct eigenvalues; S and -S
    are both counted when their spectra differ."""
    total = 0
    rows = []
    for fs in enumerate_feasible(n):
        c = search_spectrum(fs.spec, jobs=jobs).count
        rows.append((fs, c))
        total += c if fs.self_negating else 2 * c
    return total, rows


# ---------------------------------------------------------------- switching classes


def _switching_degrees(S: SeidelMatrix, block: np.ndarray) -> np.ndarray:
    """Degrees of the ambient graph of D S D for each sign vector row in block."""
    a = S.array
    n = S.order
    SS = block @ a
    return (n - 1 - block * SS) // 2


def _switching_blocks(n: int) -> Iterator[np.ndarray]:
    k = n - 1
    step = min(k, 16)
    idx = np.arange(1 << step, dtype=np.int64)
    low = 1 - 2 * ((idx[:, None] >> np.arange(step)) & 1)
    for high in range(1 << (k - step)):
        block = np.empty((len(low), n), dtype=np.int64)
        block[:, 0] = 1
        block[:, 1:step + 1] = low
        if k > step:
            block[:, step + 1:] = 1 - 2 * ((high >> np.arange(k - step)) & 1)
        yield block


def has_regular_switching_graph(S: SeidelMatrix) -> bool:
    """Whether some switching of S has a regular ambient graph."""
    n = S.order
    if n > MAX_REGULAR_SCAN:
        raise ValueError(f"exhaustive switching scan limited to n <= {MAX_REGULAR_SCAN}")
    if n <= 2:
        return True
    for block in _switching_blocks(n):
        deg = _switching_degrees(S, block)
        if np.any((deg == deg[:, :1]).all(axis=1)):
            return True
    return False


def even_degree_graph(S: SeidelMatrix) -> AmbientGraph:
    """The switching-class member whose ambient graph has all degrees even (n odd)."""
    n = S.order
    if n % 2 == 0:
        raise ValueError("only defined for odd order")
    if n > MAX_REGULAR_SCAN:
        raise ValueError(f"exhaustive switching scan limited to n <= {MAX_REGULAR_SCAN}")
    for block in _switching_blocks(n):
        deg = _switching_degrees(S, block)
        hit = np.flatnonzero((deg % 2 == 0).all(axis=1))
        if len(hit):
            s = block[hit[0]]
            T = SeidelMatrix.from_array(S.array * np.outer(s, s))
            return AmbientGraph.of(T)
    raise AssertionError("no even-degree member found")
