"""Slow reference implementations used only by the tests."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

import numpy as np

from seidelgen.core import SeidelMatrix


def all_matrices(n: int):
    m = n * (n - 1) // 2
    for bits in range(1 << m):
        yield SeidelMatrix(n, bits)


def _signed_perms(n: int):
    for perm in permutations(range(n)):
        P = np.zeros((n, n), dtype=np.int64)
        P[np.arange(n), perm] = 1
        for signs in product((1, -1), repeat=n):
            yield P * np.array(signs)[:, None]


@lru_cache(maxsize=None)
def brute_classes(n: int) -> dict[int, frozenset[int]]:
    """Map bits -> the set of bits of every equivalent matrix."""
    mats = list(_signed_perms(n))
    out: dict[int, frozenset[int]] = {}
    for S in all_matrices(n):
        if S.bits in out:
            continue
        a = S.array
        orbit = frozenset(SeidelMatrix.from_array(M @ a @ M.T).bits for M in mats)
        for b in orbit:
            out[b] = orbit
    return out


def brute_aut_order(S: SeidelMatrix) -> int:
    a = S.array
    return sum(1 for M in _signed_perms(S.order) if np.array_equal(M @ a @ M.T, a))


def brute_row_orbits(S: SeidelMatrix) -> list[list[int]]:
    n = S.order
    a = S.array
    parent = list(range(n))
    for M in _signed_perms(n):
        if np.array_equal(M @ a @ M.T, a):
            perm = np.abs(M).argmax(axis=1)
            for i in range(n):
                r1, r2 = parent[i], parent[int(perm[i])]
                while parent[r1] != r1:
                    r1 = parent[r1]
                while parent[r2] != r2:
                    r2 = parent[r2]
                parent[max(r1, r2)] = min(r1, r2)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        r = i
        while parent[r] != r:
            r = parent[r]
        groups.setdefault(r, []).append(i)
    return sorted(groups.values())


def float_spectrum(S) -> np.ndarray:
    a = S.array if isinstance(S, SeidelMatrix) else np.asarray(S)
    return np.linalg.eigvalsh(a.astype(float))
