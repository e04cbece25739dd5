"""Equiangular line systems as Seidel matrices with a large smallest eigenvalue.

n lines in R^d at common angle arccos(1/k) correspond to Seidel matrices of
order n whose eigenvalue -k is the smallest one and has multiplicity at least
n - d.  The Gram matrix is (S + kI) / k.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .core import SeidelMatrix
from .generator import Generated, generate_levels
from .linalg import rank
from .prune import EigenvalueCodimension, LambdaMinAtLeast, Prune
from .spectral import is_psd

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LineSystemTarget:
    dimension: int
    angle_inverse: int
    bound_lambda_min: bool = False  # also require lambda_min >= -k while searching

    def __post_init__(self):
        if self.dimension < 2:
            raise ValueError("dimension must be at least 2")
        if self.angle_inverse < 1 or self.angle_inverse % 2 == 0:
            raise ValueError("the inverse angle must be a positive odd integer")

    @property
    def eigenvalue(self) -> int:
        return -self.angle_inverse

    def prunes(self) -> list[Prune]:
        out: list[Prune] = []
        if self.bound_lambda_min:
            out.append(LambdaMinAtLeast(self.eigenvalue))
        out.append(EigenvalueCodimension(self.eigenvalue, self.dimension))
        return out


@dataclass(frozen=True)
class GramForm:
    """Integer matrix S + kI; the Gram matrix is this divided by ``scale``."""

    matrix: np.ndarray
    scale: int
    rank: int


def to_gram(S: SeidelMatrix, k: int) -> GramForm:
    a = S.array.astype(object) + k * np.eye(S.order, dtype=object)
    if not is_psd(a):
        raise ValueError(f"-{k} is not a lower bound for the spectrum")
    r = rank(a)
    if r == S.order:
        raise ValueError(f"-{k} is not an eigenvalue")
    return GramForm(a, k, r)


@dataclass
class LineCounts:
    target: LineSystemTarget
    counts: dict[int, int]
    last: list[Generated]

    @property
    def extinct_at(self) -> int | None:
        for order in sorted(self.counts):
            if self.counts[order] == 0:
                return order
        return None

    def max_lines(self) -> int | None:
        """Largest order with a nonzero count, when the search reached extinction."""
        end = self.extinct_at
        return None if end is None else end - 1


def iter_lines(
    target: LineSystemTarget,
    n_max: int,
    start: Sequence[SeidelMatrix] | None = None,
    jobs: int = 1,
) -> Iterator[tuple[int, list[Generated]]]:
    """Per-order classes of the pruned search; stops after the first empty order."""
    zero_at = None
    for order, level in generate_levels(n_max, target.prunes(), start=start, jobs=jobs):
        if zero_at is not None and level:
            raise AssertionError(f"classes reappeared at order {order} after extinction at {zero_at}")
        if not level and zero_at is None:
            zero_at = order
        yield order, level


def search_lines(
    target: LineSystemTarget,
    n_max: int,
    start: Sequence[SeidelMatrix] | None = None,
    jobs: int = 1,
) -> LineCounts:
    counts: dict[int, int] = {}
    last: list[Generated] = []
    for order, level in iter_lines(target, n_max, start, jobs):
        counts[order] = len(level)
        log.info("d=%d k=%d order %d: %d", target.dimension, target.angle_inverse, order, len(level))
        if level:
            last = level
    return LineCounts(target, counts, last)


def check_seed(target: LineSystemTarget, seed: Sequence[SeidelMatrix]) -> list[int]:
    """Indices of seed matrices that violate the target's prunes."""
    bad = []
    for i, S in enumerate(seed):
        if not all(p.accepts(S) for p in target.prunes()):
            bad.append(i)
    return bad
