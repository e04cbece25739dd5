import numpy as np
from hypothesis import strategies as st

from seidelgen.core import SeidelMatrix, SignedPermutation


@st.composite
def seidel_matrices(draw, min_order=1, max_order=12):
    n = draw(st.integers(min_order, max_order))
    bits = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1)) if n > 1 else 0
    return SeidelMatrix(n, bits)


@st.composite
def signed_permutations(draw, n):
    perm = draw(st.permutations(range(n)))
    flips = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    return SignedPermutation(tuple(perm), tuple(flips))


@st.composite
def matrix_and_symmetry(draw, min_order=1, max_order=12):
    S = draw(seidel_matrices(min_order, max_order))
    return S, draw(signed_permutations(S.order))


def int_matrices(n, lo=-3, hi=3, symmetric=False):
    elems = st.integers(lo, hi)
    return st.lists(elems, min_size=n * n, max_size=n * n).map(
        lambda v: _sym(np.array(v, dtype=np.int64).reshape(n, n)) if symmetric else np.array(v, dtype=np.int64).reshape(n, n)
    )


def _sym(a):
    return np.triu(a) + np.triu(a, 1).T
