"""Seidel matrices, signed permutations, graph encodings and the s6 format.

A Seidel matrix of order n is stored as the packed strict upper triangle in
column-major order: bit ``k = j*(j-1)//2 + i`` (``i < j``) is set when
``S[i, j] == -1``.  This is exactly the graph6 bit order of the ambient graph,
so appending a new last row/column only appends high bits.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_S6_ORDER = 62


class S6Error(ValueError):
    """Malformed or unsupported s6 record."""


class MalformedGraphError(ValueError):
    """A colored graph that is not of the X(S) shape."""


@lru_cache(maxsize=None)
def triangle_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Row and column indices of the strict upper triangle in bit order."""
    rows, cols = [], []
    for j in range(1, n):
        for i in range(j):
            rows.append(i)
            cols.append(j)
    return np.array(rows, dtype=np.intp), np.array(cols, dtype=np.intp)


def _bits_from_mask(mask: np.ndarray) -> int:
    if mask.size == 0:
        return 0
    packed = np.packbits(mask.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _mask_from_bits(bits: int, length: int) -> np.ndarray:
    if length == 0:
        return np.zeros(0, dtype=bool)
    nbytes = (length + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:length].astype(bool)


@dataclass(frozen=True, eq=True)
class SeidelMatrix:
    order: int
    bits: int = 0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be at least 1")
        if self.bits < 0 or self.bits >> (self.order * (self.order - 1) // 2):
            raise ValueError("sign bits exceed the strict upper triangle")

    @classmethod
    def from_array(cls, arr) -> "SeidelMatrix":
        a = np.asarray(arr)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("matrix must be square")
        if np.any(np.diag(a) != 0) or np.any(a != a.T):
            raise ValueError("not symmetric with zero diagonal")
        r, c = triangle_index(n)
        upper = a[r, c]
        if np.any((upper != 1) & (upper != -1)):
            raise ValueError("off-diagonal entries must be +1 or -1")
        return cls(n, _bits_from_mask(upper == -1))

    @classmethod
    def from_graph(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SeidelMatrix":
        """Seidel matrix J - I - 2A of the graph with the given edges."""
        bits = 0
        for i, j in edges:
            if i == j:
                raise ValueError("loops are not allowed")
            i, j = min(i, j), max(i, j)
            bits |= 1 << (j * (j - 1) // 2 + i)
        return cls(n, bits)

    @classmethod
    def all_ones(cls, n: int) -> "SeidelMatrix":
        """J - I."""
        return cls(n, 0)

    @cached_property
    def array(self) -> np.ndarray:
        n = self.order
        a = np.zeros((n, n), dtype=np.int64)
        r, c = triangle_index(n)
        signs = np.where(_mask_from_bits(self.bits, len(r)), -1, 1)
        a[r, c] = signs
        a[c, r] = signs
        a.setflags(write=False)
        return a

    def entry(self, i: int, j: int) -> int:
        if i == j:
            return 0
        if i > j:
            i, j = j, i
        return -1 if (self.bits >> (j * (j - 1) // 2 + i)) & 1 else 1

    def augment(self, row: Sequence[int]) -> "SeidelMatrix":
        """Append a new last row/column with off-diagonal entries ``row``."""
        n = self.order
        if len(row) != n:
            raise ValueError("new row must have length equal to the order")
        extra = 0
        for i, x in enumerate(row):
            if x == -1:
                extra |= 1 << i
            elif x != 1:
                raise ValueError("entries must be +1 or -1")
        return SeidelMatrix(n + 1, self.bits | (extra << (n * (n - 1) // 2)))

    def delete(self, i: int) -> "SeidelMatrix":
        keep = [k for k in range(self.order) if k != i]
        return SeidelMatrix.from_array(self.array[np.ix_(keep, keep)])

    def negate(self) -> "SeidelMatrix":
        full = (1 << (self.order * (self.order - 1) // 2)) - 1
        return SeidelMatrix(self.order, self.bits ^ full)

    def __neg__(self) -> "SeidelMatrix":
        return self.negate()

    def s6(self) -> bytes:
        return s6_encode(self)

    def __repr__(self) -> str:
        if self.order <= MAX_S6_ORDER:
            return f"SeidelMatrix({self.order}, {s6_encode(self).decode()!r})"
        return f"SeidelMatrix({self.order}, bits={self.bits:#x})"


@dataclass(frozen=True)
class SignedPermutation:
    """Row i is negated (if flipped) and then moved to position perm[i]."""

    perm: tuple[int, ...]
    flips: tuple[bool, ...] = ()

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise ValueError("perm is not a bijection")
        if not self.flips:
            object.__setattr__(self, "flips", (False,) * n)
        elif len(self.flips) != n:
            raise ValueError("flips has the wrong length")

    @property
    def order(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)))

    def matrix(self) -> np.ndarray:
        n = self.order
        p = np.zeros((n, n), dtype=np.int64)
        for i, (t, f) in enumerate(zip(self.perm, self.flips)):
            p[t, i] = -1 if f else 1
        return p

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """``self`` after ``other``."""
        if other.order != self.order:
            raise ValueError("order mismatch")
        perm = tuple(self.perm[other.perm[i]] for i in range(self.order))
        flips = tuple(other.flips[i] ^ self.flips[other.perm[i]] for i in range(self.order))
        return SignedPermutation(perm, flips)

    def inverse(self) -> "SignedPermutation":
        n = self.order
        perm = [0] * n
        flips = [False] * n
        for i, t in enumerate(self.perm):
            perm[t] = i
            flips[t] = self.flips[i]
        return SignedPermutation(tuple(perm), tuple(flips))


def apply(S: SeidelMatrix, g: SignedPermutation) -> SeidelMatrix:
    """P S P^T for the signed permutation matrix P of g."""
    if g.order != S.order:
        raise ValueError("order mismatch")
    a = S.array
    s = np.where(np.array(g.flips, dtype=bool), -1, 1)
    switched = a * np.outer(s, s)
    out = np.empty_like(switched)
    p = np.array(g.perm, dtype=np.intp)
    out[np.ix_(p, p)] = switched
    return SeidelMatrix.from_array(out)


def switch(S: SeidelMatrix, subset: Iterable[int]) -> SeidelMatrix:
    flips = [False] * S.order
    for i in subset:
        flips[i] = True
    return apply(S, SignedPermutation(tuple(range(S.order)), tuple(flips)))


# ---------------------------------------------------------------- graphs


@dataclass(frozen=True)
class AmbientGraph:
    order: int
    rows: tuple[int, ...]

    @classmethod
    def of(cls, S: SeidelMatrix) -> "AmbientGraph":
        a = S.array
        n = S.order
        weights = [1 << k for k in range(n)]
        rows = tuple(sum(w for w, x in zip(weights, row) if x == -1) for row in a.tolist())
        return cls(n, rows)

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def adjacency(self) -> np.ndarray:
        n = self.order
        return np.array([[(r >> j) & 1 for j in range(n)] for r in self.rows], dtype=np.int64)

    def seidel(self) -> SeidelMatrix:
        edges = [(i, j) for i in range(self.order) for j in range(i + 1, self.order) if (self.rows[i] >> j) & 1]
        return SeidelMatrix.from_graph(self.order, edges)


@dataclass(frozen=True)
class ColoredGraph:
    """Undirected graph with adjacency bitmask rows and a color per vertex."""

    rows: tuple[int, ...]
    colors: tuple[int, ...]

    @property
    def num_vertices(self) -> int:
        return len(self.rows)

    def color_classes(self) -> list[list[int]]:
        classes: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            classes.setdefault(c, []).append(v)
        return [classes[c] for c in sorted(classes)]

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, r in enumerate(self.rows):
            w = r >> (v + 1)
            k = v + 1
            while w:
                if w & 1:
                    yield v, k
                w >>= 1
                k += 1

    def relabel(self, mapping: Sequence[int]) -> "ColoredGraph":
        """Vertex v becomes mapping[v]."""
        nv = self.num_vertices
        rows = [0] * nv
        colors = [0] * nv
        for v, r in enumerate(self.rows):
            m = 0
            for w in range(nv):
                if (r >> w) & 1:
                    m |= 1 << mapping[w]
            rows[mapping[v]] = m
            colors[mapping[v]] = self.colors[v]
        return ColoredGraph(tuple(rows), tuple(colors))

    @classmethod
    def from_edges(cls, nv: int, edges: Iterable[tuple[int, int]], colors: Sequence[int] | None = None) -> "ColoredGraph":
        rows = [0] * nv
        for a, b in edges:
            if a == b:
                raise ValueError("loops are not allowed")
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return cls(tuple(rows), tuple(colors) if colors is not None else (0,) * nv)


def u_vertex(i: int) -> int:
    return i


def v_vertex(n: int, i: int, k: int) -> int:
    return n + 2 * i + k


def encode_colored(S: SeidelMatrix) -> ColoredGraph:
    """The 3n-vertex two-colored graph X(S).

    Vertices 0..n-1 are u_i (color 0); vertex n + 2i + k is v_i^(k) (color 1).
    """
    n = S.order
    rows = [0] * (3 * n)

    def add(a, b):
        rows[a] |= 1 << b
        rows[b] |= 1 << a

    for i in range(n):
        add(i, v_vertex(n, i, 0))
        add(i, v_vertex(n, i, 1))
    a = S.array
    for i in range(n):
        for j in range(i + 1, n):
            for k in (0, 1):
                other = k if a[i, j] == 1 else 1 - k
                add(v_vertex(n, i, k), v_vertex(n, j, other))
    return ColoredGraph(tuple(rows), (0,) * n + (1,) * (2 * n))


def decode_colored(Y: ColoredGraph) -> SeidelMatrix:
    """Reconstruct a Seidel matrix T with X(T) isomorphic to Y.

    Validates the X(S) structure first and raises MalformedGraphError otherwise.
    """
    classes = {}
    for v, c in enumerate(Y.colors):
        classes.setdefault(c, []).append(v)
    if len(classes) != 2:
        raise MalformedGraphError("expected exactly two color classes")
    c0, c1 = sorted(classes)
    us, vs = classes[c0], classes[c1]
    n = len(us)
    if len(vs) != 2 * n:
        raise MalformedGraphError("color class sizes must be n and 2n")
    umask = sum(1 << u for u in us)
    vmask = sum(1 << v for v in vs)
    pairs = []
    owner = {}
    for idx, u in enumerate(us):
        r = Y.rows[u]
        if r & umask or r.bit_count() != 2 or (r & ~vmask):
            raise MalformedGraphError(f"vertex {u} must have exactly two color-1 neighbours")
        a = (r & -r).bit_length() - 1
        b = (r ^ (1 << a)).bit_length() - 1
        if (Y.rows[a] >> b) & 1:
            raise MalformedGraphError(f"the pair of vertex {u} is adjacent")
        for z in (a, b):
            if z in owner:
                raise MalformedGraphError(f"vertex {z} is attached to two color-0 vertices")
            owner[z] = idx
        pairs.append((a, b))
    for v in vs:
        if (Y.rows[v] & umask).bit_count() != 1:
            raise MalformedGraphError(f"vertex {v} must have exactly one color-0 neighbour")
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        a0, a1 = pairs[i]
        for j in range(i + 1, n):
            b0, b1 = pairs[j]
            e00 = (Y.rows[a0] >> b0) & 1
            e11 = (Y.rows[a1] >> b1) & 1
            e01 = (Y.rows[a0] >> b1) & 1
            e10 = (Y.rows[a1] >> b0) & 1
            if (e00, e11, e01, e10) == (1, 1, 0, 0):
                out[i, j] = out[j, i] = 1
            elif (e00, e11, e01, e10) == (0, 0, 1, 1):
                out[i, j] = out[j, i] = -1
            else:
                raise MalformedGraphError(f"rows {i}, {j} are neither parallel nor crossed")
    return SeidelMatrix.from_array(out)


# ---------------------------------------------------------------- constructions


def k_construction(a: int, b: int) -> SeidelMatrix:
    """K(a, b) = J_a (x) (J_b - 2 I_b) + I_ab."""
    if a < 2 or b < 3:
        raise ValueError("K(a, b) needs a >= 2 and b >= 3")
    return blowup(SeidelMatrix.all_ones(b), a)


def blowup(S: SeidelMatrix, a: int) -> SeidelMatrix:
    """J_a (x) (S - I) + I of order a*n."""
    if a < 1:
        raise ValueError("a must be positive")
    n = S.order
    big = np.kron(np.ones((a, a), dtype=np.int64), S.array - np.eye(n, dtype=np.int64))
    big += np.eye(a * n, dtype=np.int64)
    return SeidelMatrix.from_array(big)


def paley_seidel(q: int) -> SeidelMatrix:
    """Paley Seidel matrix of prime order q = 1 (mod 4): S_ij = Legendre(i - j)."""
    if q % 4 != 1 or any(q % d == 0 for d in range(2, int(q**0.5) + 1)):
        raise ValueError("q must be a prime congruent to 1 mod 4")
    squares = {(x * x) % q for x in range(1, q)}
    a = np.zeros((q, q), dtype=np.int64)
    for i in range(q):
        for j in range(q):
            if i != j:
                a[i, j] = 1 if (i - j) % q in squares else -1
    return SeidelMatrix.from_array(a)


def conference(q: int) -> SeidelMatrix:
    """Symmetric conference two-graph of order q + 1 with spectrum {[-sqrt q], [sqrt q]}."""
    core = paley_seidel(q).array
    n = q + 1
    a = np.ones((n, n), dtype=np.int64)
    a[1:, 1:] = core
    np.fill_diagonal(a, 0)
    return SeidelMatrix.from_array(a)


# ---------------------------------------------------------------- s6


def s6_encode(S: SeidelMatrix) -> bytes:
    n = S.order
    if not 1 <= n <= MAX_S6_ORDER:
        raise S6Error(f"order {n} outside the supported range 1..{MAX_S6_ORDER}")
    length = n * (n - 1) // 2
    groups = (length + 5) // 6
    out = bytearray([n + 63])
    # reverse the sequence so the first bit ends up most significant
    padded = _mask_from_bits(S.bits, length)
    if groups:
        seq = np.zeros(groups * 6, dtype=np.int64)
        seq[:length] = padded
        vals = seq.reshape(groups, 6) @ np.array([32, 16, 8, 4, 2, 1])
        out.extend((vals + 63).tolist())
    return bytes(out)


def s6_decode(record: bytes | str) -> SeidelMatrix:
    if isinstance(record, str):
        record = record.encode("ascii")
    record = record.rstrip(b"\r\n")
    if not record:
        raise S6Error("empty record")
    if any(b < 63 or b > 126 for b in record):
        raise S6Error("non-printable byte in record")
    n = record[0] - 63
    if not 1 <= n <= MAX_S6_ORDER:
        raise S6Error(f"order {n} outside the supported range 1..{MAX_S6_ORDER}")
    length = n * (n - 1) // 2
    groups = (length + 5) // 6
    body = record[1:]
    if len(body) != groups:
        raise S6Error(f"expected {groups} data bytes, got {len(body)}")
    if not groups:
        return SeidelMatrix(n, 0)
    vals = np.frombuffer(body, dtype=np.uint8).astype(np.int64) - 63
    seq = ((vals[:, None] >> np.array([5, 4, 3, 2, 1, 0])) & 1).reshape(-1)
    if np.any(seq[length:]):
        raise S6Error("nonzero padding bits")
    return SeidelMatrix(n, _bits_from_mask(seq[:length].astype(bool)))


# ---------------------------------------------------------------- census files


@dataclass
class CensusRecord:
    matrix: SeidelMatrix
    annotations: list[str] = field(default_factory=list)

    def line(self) -> str:
        return "\t".join([s6_encode(self.matrix).decode("ascii"), *self.annotations])


def read_census(path) -> list[CensusRecord]:
    records = []
    with open(path, "rb") as fh:
        for lineno, raw in enumerate(fh, 1):
            raw = raw.rstrip(b"\r\n")
            if not raw:
                continue
            head, *rest = raw.split(b"\t")
            try:
                S = s6_decode(head)
            except S6Error as exc:
                raise S6Error(f"{path}:{lineno}: {exc}") from None
            records.append(CensusRecord(S, [r.decode() for r in rest]))
    return records


def iter_census(path) -> Iterator[SeidelMatrix]:
    with open(path, "rb") as fh:
        for raw in fh:
            raw = raw.split(b"\t", 1)[0].rstrip(b"\r\n")
            if raw:
                yield s6_decode(raw)


def write_census(path, matrices: Iterable[SeidelMatrix | CensusRecord]) -> int:
    count = 0
    with open(path, "w") as fh:
        for item in matrices:
            rec = item if isinstance(item, CensusRecord) else CensusRecord(item)
            fh.write(rec.line() + "\n")
            count += 1
    return count


def signed_permutation_group_order(n: int) -> int:
    return factorial(n) * 2**n
