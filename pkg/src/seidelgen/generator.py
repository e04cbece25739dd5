"""Isomorph-free generation of Seidel matrices by canonical augmentation.

A child of order m + 1 is the parent plus one new last row.  It is kept only
when the new row lies in the canonical deletion orbit of the child:

* if some row invariant value occurs exactly once, the canonical row is the
  row holding the smallest such value (no labeling needed);
* otherwise the canonical row orbit is the orbit of the row that the
  canonical form puts first.

Children passing this test are deduplicated per parent by certificate.
Switching the new vertex gives an equivalent child, so only rows with
x_0 = +1 are enumerated.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .canonical import SeidelCanon, seidel_canon, triple_counts
from .core import SeidelMatrix, triangle_index
from .linalg import eliminate
from .prune import Prune

log = logging.getLogger(__name__)

CHUNK = 1 << 15


@dataclass(frozen=True)
class Generated:
    matrix: SeidelMatrix
    aut_order: int
    certificate: bytes


def compute_invariant(S: SeidelMatrix) -> np.ndarray:
    """f(i) = number of ordered pairs (j, k) such that {i, j, k} is a
    triangle equivalent to J3 - I3, i.e. with S_ij S_ik S_jk = +1."""
    n = S.order
    if n < 3:
        raise ValueError("the row invariant needs order >= 3")
    return (n - 1) * (n - 2) // 2 + triple_counts(S) // 2


@lru_cache(maxsize=32)
def _sign_table(k: int) -> np.ndarray:
    """All +-1 vectors of length k, first coordinate free, as int8 rows."""
    idx = np.arange(1 << k, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(k)) & 1
    return (1 - 2 * bits).astype(np.int8)


def candidate_rows(m: int, constraints: np.ndarray | None) -> Iterator[np.ndarray]:
    """Blocks of +-1 rows x of length m with x_0 = +1 and x ⊥ constraints."""
    if m == 0:
        yield np.zeros((1, 0), dtype=np.int8)
        return
    if constraints is None or not len(constraints):
        total = m - 1
        step = min(total, 15)
        low = _sign_table(step)
        for high in range(1 << (total - step)):
            block = np.empty((len(low), m), dtype=np.int8)
            block[:, 0] = 1
            block[:, 1:step + 1] = low
            if total > step:
                hb = (high >> np.arange(total - step)) & 1
                block[:, step + 1:] = (1 - 2 * hb).astype(np.int8)
            yield block
        return
    K = np.asarray(constraints, dtype=object)
    el = eliminate(K[:, ::-1])  # pivots prefer high coordinates so x_0 stays free
    piv = [m - 1 - c for c in el.pivot_cols]
    free = [c for c in range(m) if c not in set(piv)]
    # solve K_P x_P = -K_F x_F via the nonsingular block from the elimination
    rows = el.pivot_rows
    KP = K[np.ix_(rows, piv)]
    KF = K[np.ix_(rows, free)]
    from .linalg import adjugate_det

    adj, det = adjugate_det(KP)
    T = -(np.array(adj, dtype=object) @ KF)  # det * x_P = T x_F
    tmax = int(np.abs(T).max()) if T.size else 0
    use64 = tmax * max(len(free), 1) < (1 << 62) and abs(det) < (1 << 62)
    Ti = T.astype(np.int64) if use64 else T
    nfree = len(free)
    fix_first = bool(free) and free[0] == 0
    k = nfree - 1 if fix_first else nfree
    step = min(k, 15)
    low = _sign_table(step) if step > 0 else np.ones((1, 0), dtype=np.int8)
    for high in range(1 << (k - step)):
        F = np.empty((len(low), nfree), dtype=np.int8)
        off = 0
        if fix_first:
            F[:, 0] = 1
            off = 1
        F[:, off:off + step] = low
        if k > step:
            hb = (high >> np.arange(k - step)) & 1
            F[:, off + step:] = (1 - 2 * hb).astype(np.int8)
        Y = F.astype(np.int64 if use64 else object) @ Ti.T
        ok = np.all((Y == det) | (Y == -det), axis=1)
        if not ok.any():
            continue
        Fk, Yk = F[ok], Y[ok]
        X = np.empty((len(Fk), m), dtype=np.int8)
        X[:, free] = Fk
        X[:, piv] = np.where((Yk > 0) == (det > 0), 1, -1).astype(np.int8)
        if not fix_first:
            X = X[X[:, 0] == 1]
        if len(X):
            yield X


def _child(S: SeidelMatrix, x: np.ndarray, arr: np.ndarray | None = None) -> SeidelMatrix:
    m = S.order
    neg = np.flatnonzero(x == -1)
    extra = 0
    for i in neg.tolist():
        extra |= 1 << i
    child = SeidelMatrix(m + 1, S.bits | (extra << (m * (m - 1) // 2)))
    if arr is not None:
        child.__dict__["array"] = arr
    return child


def _child_array(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    m = a.shape[0]
    out = np.zeros((m + 1, m + 1), dtype=np.int64)
    out[:m, :m] = a
    out[:m, m] = x
    out[m, :m] = x
    out.setflags(write=False)
    return out


def augment_one(S: SeidelMatrix, prune: Sequence[Prune] = (), use_invariant: bool = True) -> list[Generated]:
    """All accepted children of S, one per equivalence class."""
    m = S.order
    a = S.array
    states = [p.prepare(S) for p in prune]
    cons = [p.constraints(st) for p, st in zip(prune, states)]
    cons = [c for c in cons if c is not None and len(c)]
    K = np.concatenate([np.asarray(c, dtype=object) for c in cons], axis=0) if cons else None
    g_parent = triple_counts(S) if m else np.zeros(0, dtype=np.int64)
    seen: dict[bytes, Generated] = {}
    out: list[Generated] = []
    fast = use_invariant and m + 1 >= 4
    for X in candidate_rows(m, K):
        mask = np.ones(len(X), dtype=bool)
        for p, st in zip(prune, states):
            idx = np.flatnonzero(mask)
            if not len(idx):
                break
            mask[idx] = p.extend(S, st, X[idx])
        X = X[mask]
        if not len(X):
            continue
        Xi = X.astype(np.int64)
        SX = Xi @ a
        G = np.empty((len(X), m + 1), dtype=np.int64)
        G[:, :m] = g_parent + 2 * Xi * SX
        G[:, m] = np.einsum("ij,ij->i", Xi, SX)
        if fast:
            Gs = np.sort(G, axis=1)
            uniq = np.ones(Gs.shape, dtype=bool)
            uniq[:, 1:] &= Gs[:, 1:] != Gs[:, :-1]
            uniq[:, :-1] &= Gs[:, :-1] != Gs[:, 1:]
            has = uniq.any(axis=1)
            first = np.argmax(uniq, axis=1)
            minval = Gs[np.arange(len(Gs)), first]
            take = np.flatnonzero((has & (G[:, m] == minval)) | ~has)
            decided = has
        else:
            take = np.arange(len(X))
            decided = np.zeros(len(X), dtype=bool)
        for t in take.tolist():
            x = X[t]
            child = _child(S, x, _child_array(a, x))
            c = seidel_canon(child, g=G[t])
            if not decided[t] and m not in c.first_orbit:
                continue
            if c.certificate not in seen:
                gen = Generated(child, c.aut_order, c.certificate)
                seen[c.certificate] = gen
                out.append(gen)
    return out


def _worker(args):
    S, prune, use_invariant = args
    return augment_one(S, prune, use_invariant)


def extend_level(
    parents: Sequence[SeidelMatrix],
    prune: Sequence[Prune] = (),
    use_invariant: bool = True,
    jobs: int = 1,
    shard: tuple[int, int] = (0, 1),
    on_parent: Callable[[int, list[Generated]], None] | None = None,
    skip: int = 0,
) -> list[Generated]:
    """Children of every parent whose index is congruent to shard[0] mod shard[1].

    Results are concatenated in parent index order regardless of ``jobs``.
    ``skip`` resumes after the first ``skip`` selected parents.
    """
    i, m = shard
    chosen = [k for k in range(len(parents)) if k % m == i][skip:]
    out: list[Generated] = []
    if jobs > 1 and len(chosen) > 1:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(jobs) as pool:
            it = pool.imap(_worker, ((parents[k], tuple(prune), use_invariant) for k in chosen), chunksize=8)
            for k, res in zip(chosen, it):
                out.extend(res)
                if on_parent:
                    on_parent(k, res)
    else:
        for k in chosen:
            res = augment_one(parents[k], prune, use_invariant)
            out.extend(res)
            if on_parent:
                on_parent(k, res)
    return out


def seed() -> list[SeidelMatrix]:
    return [SeidelMatrix(1, 0)]


def generate_levels(
    n_target: int,
    prune: Sequence[Prune] = (),
    start: Sequence[SeidelMatrix] | None = None,
    use_invariant: bool = True,
    jobs: int = 1,
) -> Iterator[tuple[int, list[Generated]]]:
    """Yield (order, classes) for each order from the start order up to n_target."""
    level = list(start) if start is not None else seed()
    if not level:
        return
    order = level[0].order
    if any(S.order != order for S in level):
        raise ValueError("start census mixes orders")
    current = [Generated(S, 0, b"") for S in level]
    yield order, current
    while order < n_target:
        nxt = extend_level([g.matrix for g in current], prune, use_invariant, jobs)
        order += 1
        log.info("order %d: %d classes", order, len(nxt))
        yield order, nxt
        current = nxt
        if not nxt:
            break


def generate(
    n_target: int,
    prune: Sequence[Prune] = (),
    start: Sequence[SeidelMatrix] | None = None,
    use_invariant: bool = True,
    jobs: int = 1,
) -> list[Generated]:
    """One representative per class at order n_target (after pruning)."""
    last: list[Generated] = []
    for order, level in generate_levels(n_target, prune, start, use_invariant, jobs):
        last = level
    if last and last[0].matrix.order != n_target:
        return []
    if last and last[0].aut_order == 0:
        last = [Generated(g.matrix, c.aut_order, c.certificate) for g in last for c in [seidel_canon(g.matrix)]]
    return last
