"""Canonical labeling, automorphism group order and orbits of colored graphs.

The search is the usual individualization-refinement scheme: equitable
refinement by neighbour counting, target cell = first smallest non-singleton
cell, pruning by node invariants (refinement traces) and by automorphisms
found along the way.

Seidel matrices get a faster dedicated canonical form (``seidel_canon``)
built on the same engine: a row is chosen, the matrix is switched so that row
is all +1, and the remaining structure is the graph on the other rows with
``j ~ k`` iff ``S_ij S_ik S_jk = -1``.  The generic colored-graph route
(``canon(encode_colored(S))``) is kept and cross-checked in the tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import ColoredGraph, SeidelMatrix, encode_colored, s6_encode


@dataclass(frozen=True)
class CanonCertificate:
    certificate: bytes
    aut_order: int
    orbits: tuple[int, ...]  # orbit id (smallest member) per vertex
    labeling: tuple[int, ...]  # labeling[p] = original vertex placed at position p

    def orbit_partition(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for v, o in enumerate(self.orbits):
            groups.setdefault(o, []).append(v)
        return [groups[k] for k in sorted(groups)]


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def _orbit_finder(gens, n, fixed):
    uf = _UnionFind(n)
    for g in gens:
        if all(g[p] == p for p in fixed):
            for a in range(n):
                if g[a] != a:
                    uf.union(a, g[a])
    return uf


class _Engine:
    """One canonical labeling run on a graph given by adjacency bitmasks."""

    def __init__(self, rows: Sequence[int], colors: Sequence[int]):
        self.rows = list(rows)
        self.n = n = len(rows)
        order = sorted(range(n), key=lambda v: (colors[v], v))
        lab = order
        cellend = [0] * n
        sizes = []
        s = 0
        while s < n:
            e = s
            c = colors[lab[s]]
            while e < n and colors[lab[e]] == c:
                e += 1
            cellend[s] = e
            sizes.append((c, e - s))
            s = e
        self.color_sig = tuple(sizes)
        self.gens: list[list[int]] = []
        starts = []
        s = 0
        while s < n:
            starts.append(s)
            s = cellend[s]
        self.root_lab = lab
        self.root_cellend = cellend
        self.root_trace = self._refine(lab, cellend, starts)

    # -- refinement -------------------------------------------------------
    def _refine(self, lab, cellend, active):
        rows = self.rows
        n = self.n
        inq = [False] * n
        for a in active:
            inq[a] = True
        queue = list(active)
        qi = 0
        trace = []
        ncells = 0
        s = 0
        while s < n:
            ncells += 1
            s = cellend[s]
        while qi < len(queue) and ncells < n:
            w = queue[qi]
            qi += 1
            inq[w] = False
            wmask = 0
            for p in range(w, cellend[w]):
                wmask |= 1 << lab[p]
            s = 0
            while s < n:
                e = cellend[s]
                if e - s > 1:
                    counts = [(rows[lab[p]] & wmask).bit_count() for p in range(s, e)]
                    lo = min(counts)
                    if lo != max(counts):
                        pairs = sorted(zip(counts, lab[s:e]))
                        lab[s:e] = [v for _, v in pairs]
                        frag_starts = []
                        keys = []
                        sizes = []
                        prev = None
                        for off, (c, _) in enumerate(pairs):
                            if c != prev:
                                frag_starts.append(s + off)
                                keys.append(c)
                                prev = c
                        bounds = frag_starts + [e]
                        for a, b in zip(bounds, bounds[1:]):
                            cellend[a] = b
                            sizes.append(b - a)
                        ncells += len(frag_starts) - 1
                        trace.append((w, s, tuple(keys), tuple(sizes)))
                        if inq[s]:
                            for a in frag_starts[1:]:
                                inq[a] = True
                                queue.append(a)
                        else:
                            big = max(range(len(sizes)), key=lambda k: (sizes[k], -k))
                            for k, a in enumerate(frag_starts):
                                if k != big:
                                    inq[a] = True
                                    queue.append(a)
                        if ncells == n:
                            break
                s = e
        return tuple(trace)

    def _individualize(self, lab, cellend, v):
        lab = lab[:]
        cellend = cellend[:]
        p = lab.index(v)
        s = 0
        while cellend[s] <= p:
            s = cellend[s]
        e = cellend[s]
        lab[p], lab[s] = lab[s], lab[p]
        cellend[s] = s + 1
        if e > s + 1:
            cellend[s + 1] = e
        trace = self._refine(lab, cellend, [s])
        return lab, cellend, trace

    def _target(self, cellend):
        n = self.n
        best = None
        s = 0
        while s < n:
            e = cellend[s]
            size = e - s
            if size > 1 and (best is None or size < best[1]):
                best = (s, size)
                if size == 2:
                    break
            s = e
        return best

    def _cert(self, lab):
        n = self.n
        pos = [0] * n
        for p, v in enumerate(lab):
            pos[v] = p
        out = []
        rows = self.rows
        for v in lab:
            r = rows[v]
            m = 0
            while r:
                low = r & -r
                m |= 1 << pos[low.bit_length() - 1]
                r ^= low
            out.append(m)
        return tuple(out)

    # -- search -----------------------------------------------------------
    def run(self):
        n = self.n
        lab, cellend = self.root_lab[:], self.root_cellend[:]
        traces = [self.root_trace]
        path_nodes = []  # (lab, cellend, traces, cell members, chosen)
        while True:
            t = self._target(cellend)
            if t is None:
                break
            s, size = t
            members = lab[s:s + size]
            v = members[0]
            path_nodes.append((lab, cellend, list(traces), members, v))
            lab, cellend, tr = self._individualize(lab, cellend, v)
            traces.append(tr)
        zeta = (tuple(traces), self._cert(lab), lab)
        self.zeta = zeta
        self.best = zeta
        aut = 1
        path = [node[4] for node in path_nodes]
        for level in range(len(path_nodes) - 1, -1, -1):
            plab, pcellend, ptraces, members, v = path_nodes[level]
            prefix = path[:level]
            explored = [v]
            ngens = -1
            uf = None
            for w in members:
                if w == v:
                    continue
                if ngens != len(self.gens):
                    uf = _orbit_finder(self.gens, n, prefix)
                    ngens = len(self.gens)
                rw = uf.find(w)
                if any(uf.find(u) == rw for u in explored):
                    continue
                explored.append(w)
                self._explore(plab, pcellend, ptraces, prefix, w)
            uf = _orbit_finder(self.gens, n, prefix)
            rv = uf.find(v)
            aut *= sum(1 for w in members if uf.find(w) == rv)
        self.aut = aut
        return self

    def _explore(self, plab, pcellend, ptraces, prefix, w):
        """Search the subtree below individualizing w. True once a leaf
        equivalent to the first leaf has been found."""
        lab, cellend, tr = self._individualize(plab, pcellend, w)
        traces = ptraces + [tr]
        d = len(traces)
        zt = self.zeta[0]
        key = tuple(traces)
        on_zeta = key == zt[:d]
        if not on_zeta and key > self.best[0][:d]:
            return False
        path = prefix + [w]
        t = self._target(cellend)
        if t is None:
            cert = self._cert(lab)
            if on_zeta and d == len(zt) and cert == self.zeta[1]:
                self._add_gen(self.zeta[2], lab)
                return True
            best = self.best
            if best is not self.zeta and key == best[0] and cert == best[1]:
                self._add_gen(best[2], lab)
                return False
            if (key, cert) < (best[0], best[1]):
                self.best = (key, cert, lab)
            return False
        s, size = t
        members = lab[s:s + size]
        explored = []
        ngens = -1
        uf = None
        for u in members:
            if explored:
                if ngens != len(self.gens):
                    uf = _orbit_finder(self.gens, self.n, path)
                    ngens = len(self.gens)
                ru = uf.find(u)
                if any(uf.find(x) == ru for x in explored):
                    continue
            explored.append(u)
            if self._explore(lab, cellend, traces, path, u):
                return True
        return False

    def _add_gen(self, lab_from, lab_to):
        g = [0] * self.n
        for a, b in zip(lab_from, lab_to):
            g[a] = b
        if any(g[a] != a for a in range(self.n)):
            self.gens.append(g)

    def orbits(self) -> tuple[int, ...]:
        uf = _orbit_finder(self.gens, self.n, ())
        return tuple(uf.find(v) for v in range(self.n))


def _certificate_bytes(color_sig, cert, n) -> bytes:
    head = b"".join(c.to_bytes(2, "big") + s.to_bytes(2, "big") for c, s in color_sig)
    width = (n + 7) // 8
    body = b"".join(m.to_bytes(width, "little") for m in cert)
    return len(color_sig).to_bytes(2, "big") + head + body


def canon(X: ColoredGraph) -> CanonCertificate:
    if X.num_vertices < 1:
        raise ValueError("graph must have at least one vertex")
    eng = _Engine(X.rows, X.colors).run()
    traces, cert, lab = eng.best
    return CanonCertificate(
        certificate=_certificate_bytes(eng.color_sig, cert, eng.n),
        aut_order=eng.aut,
        orbits=eng.orbits(),
        labeling=tuple(lab),
    )


def canonical_graph(rows: Sequence[int], colors: Sequence[int] | None = None):
    """(certificate tuple, aut order, labeling, generators) for a small graph.

    Lower-level entry point used by the Seidel canonical form; skips byte
    packing.
    """
    if colors is None:
        colors = [0] * len(rows)
    eng = _Engine(rows, colors).run()
    return eng.best[1], eng.aut, eng.best[2], eng.gens


# ---------------------------------------------------------------- Seidel matrices


def triple_counts(S: SeidelMatrix) -> np.ndarray:
    """Diagonal of S^3; the row invariant f is C(n-1, 2) + diag(S^3)/2."""
    a = S.array
    return np.einsum("ij,jk,ki->i", a, a, a)


def row_invariant(S: SeidelMatrix) -> np.ndarray:
    """Ordered pairs (j, k) whose triangle with row i is equivalent to J3 - I3."""
    n = S.order
    return (n - 1) * (n - 2) // 2 + triple_counts(S) // 2


def _neg_masks(S: SeidelMatrix) -> list[int]:
    a = S.array
    n = S.order
    masks = []
    weights = 1 << np.arange(n, dtype=object) if n > 62 else (1 << np.arange(n, dtype=np.int64))
    neg = (a == -1)
    for i in range(n):
        masks.append(int(weights[neg[i]].sum()))
    return masks


def descendant_graph(neg: Sequence[int], i: int) -> list[int]:
    """Graph on the rows other than i with j ~ k iff S_ij S_ik S_jk = -1.

    Vertices are relabeled 0..n-2 in the original order with i removed.
    """
    n = len(neg)
    full = (1 << n) - 1
    ni = neg[i]
    low_mask = (1 << i) - 1
    out = []
    for j in range(n):
        if j == i:
            continue
        r = neg[j] ^ ni
        if (ni >> j) & 1:
            r ^= full
        r &= ~((1 << i) | (1 << j))
        out.append((r & low_mask) | ((r >> (i + 1)) << i))
    return out


@dataclass(frozen=True)
class SeidelCanon:
    certificate: bytes  # s6 record of the canonical representative
    aut_order: int
    first_row: int  # the row that became row 0 of the canonical form
    first_orbit: tuple[int, ...]  # rows in the orbit of first_row
    order: tuple[int, ...]  # original row placed at each canonical position

    def matrix(self) -> SeidelMatrix:
        from .core import s6_decode

        return s6_decode(self.certificate)


def _select_cell(g: np.ndarray) -> list[int]:
    vals, counts = np.unique(g, return_counts=True)
    k = min(range(len(vals)), key=lambda t: (counts[t], vals[t]))
    return [int(i) for i in np.flatnonzero(g == vals[k])]


def seidel_canon(S: SeidelMatrix, g: np.ndarray | None = None, rows: Sequence[int] | None = None) -> SeidelCanon:
    """Canonical representative, |Aut(S)| and the orbit of the chosen row.

    ``g`` may pass precomputed diag(S^3).  ``rows`` restricts which rows are
    canonized (all rows by default only inside the selected invariant cell).
    """
    n = S.order
    if n == 1:
        return SeidelCanon(s6_encode(S), 2, 0, (0,), (0,))
    if g is None:
        g = triple_counts(S)
    g = [int(x) for x in g]
    cell = _select_cell(np.array(g)) if rows is None else list(rows)
    neg = _neg_masks(S)
    best = None
    keys = {}
    for i in cell:
        gr = descendant_graph(neg, i)
        colors = [g[j] for j in range(n) if j != i]
        cert, aut, lab, _ = canonical_graph(gr, colors)
        key = (tuple(colors[v] for v in lab), cert)
        keys[i] = key
        if best is None or key < best[0]:
            best = (key, i, aut, lab)
    key, istar, aut, lab = best
    orbit = tuple(i for i in cell if keys[i] == key)
    others = [j for j in range(n) if j != istar]
    order = (istar,) + tuple(others[v] for v in lab)
    # canonical matrix: row 0 all +1, T[p, q] = -1 iff positions p-1, q-1 adjacent
    bits = 0
    cert = key[1]
    for q in range(1, n - 1):
        m = cert[q]
        for p in range(q):
            if (m >> p) & 1:
                pp, qq = p + 1, q + 1
                bits |= 1 << (qq * (qq - 1) // 2 + pp)
    T = SeidelMatrix(n, bits)
    return SeidelCanon(s6_encode(T), 2 * len(orbit) * aut, istar, orbit, order)


def seidel_certificate(S: SeidelMatrix) -> bytes:
    return seidel_canon(S).certificate


def row_orbits(S: SeidelMatrix) -> list[list[int]]:
    """Partition of the rows into orbits of Aut(S)."""
    n = S.order
    if n == 1:
        return [[0]]
    g = [int(x) for x in triple_counts(S)]
    neg = _neg_masks(S)
    groups: dict = {}
    for i in range(n):
        gr = descendant_graph(neg, i)
        colors = [g[j] for j in range(n) if j != i]
        cert, _, lab, _ = canonical_graph(gr, colors)
        key = (g[i], tuple(colors[v] for v in lab), cert)
        groups.setdefault(key, []).append(i)
    return sorted(groups.values())


def colored_row_orbits(S: SeidelMatrix) -> list[list[int]]:
    """Row orbits read off the color-0 orbits of canon(encode_colored(S))."""
    c = canon(encode_colored(S))
    groups: dict[int, list[int]] = {}
    for v in range(S.order):
        groups.setdefault(c.orbits[v], []).append(v)
    return sorted(groups.values())


def are_equivalent(S1: SeidelMatrix, S2: SeidelMatrix) -> bool:
    if S1.order != S2.order:
        raise ValueError("order mismatch")
    return seidel_canon(S1).certificate == seidel_canon(S2).certificate


def aut_order(S: SeidelMatrix) -> int:
    return seidel_canon(S).aut_order
