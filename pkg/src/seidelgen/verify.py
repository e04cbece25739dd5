"""Consistency checks on complete censuses."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable


class PrunedCensusError(ValueError):
    pass


@dataclass(frozen=True)
class MassCheck:
    order: int
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def line(self) -> str:
        if self.ok:
            return f"{self.lhs} = {self.rhs} PASS"
        return f"{self.lhs} != {self.rhs} FAIL"


def expected_mass(n: int) -> Fraction:
    """Number of labeled Seidel matrices over the order of the signed permutation group."""
    return Fraction(2 ** (n * (n - 1) // 2), factorial(n) * 2**n)


def mass_check(n: int, aut_orders: Iterable[int], pruned: bool = False) -> MassCheck:
    """Sum of 1/|Aut| over a full census of order n, compared exactly."""
    if pruned:
        raise PrunedCensusError("the mass formula only holds for a complete census")
    group = factorial(n) * 2**n
    num = 0
    for a in aut_orders:
        if a <= 0 or group % a:
            raise ValueError(f"automorphism order {a} does not divide {group}")
        num += group // a
    return MassCheck(n, Fraction(num, group), expected_mass(n))


def aut_histogram(aut_orders: Iterable[int]) -> dict[int, int]:
    return dict(sorted(Counter(aut_orders).items()))


def merge_histograms(parts: Iterable[dict[int, int]]) -> dict[int, int]:
    total: Counter = Counter()
    for h in parts:
        total.update(h)
    return dict(sorted(total.items()))


def histogram_mass(n: int, hist: dict[int, int]) -> MassCheck:
    group = factorial(n) * 2**n
    num = sum(count * (group // a) for a, count in hist.items())
    return MassCheck(n, Fraction(num, group), expected_mass(n))
