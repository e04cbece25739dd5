from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from seidelgen.linalg import (
    ArithmeticCheckError,
    IntPolynomial,
    adjugate_det,
    charpoly_batch,
    charpoly_eval_interp,
    charpoly_fl,
    check_seidel_charpoly,
    derivative,
    det_bareiss,
    eliminate,
    leading_principal_minors,
    multiplicity_of_factor,
    nullspace,
    poly_gcd,
    rank,
)
from strategies import int_matrices, seidel_matrices


def test_charpoly_dual_algorithms_agree_on_random_inputs():
    rng = np.random.default_rng(20240611)
    checked = 0
    for n in range(1, 13):
        count = 10_000 // 12 + (1 if n <= 10_000 % 12 else 0)
        stack = rng.integers(-4, 5, size=(count, n, n))
        if n % 2 == 0:
            stack = np.triu(stack) + np.transpose(np.triu(stack, 1), (0, 2, 1))
        fast = charpoly_batch(stack)
        for A, c in zip(stack, fast):
            assert c == charpoly_eval_interp(A).coeffs
            checked += 1
    assert checked == 10_000


@given(seidel_matrices(min_order=1, max_order=16))
def test_seidel_charpoly_identities(S):
    p = charpoly_fl(S.array)
    check_seidel_charpoly(p, S.order)
    w = np.linalg.eigvalsh(S.array.astype(float))
    assert np.allclose(np.poly(w)[::-1], [float(c) for c in p.coeffs], atol=1e-6 * 2**S.order)


def test_seidel_charpoly_check_catches_corruption():
    p = charpoly_fl(np.ones((4, 4), dtype=np.int64) - np.eye(4, dtype=np.int64))
    bad = IntPolynomial(p.coeffs[:-2] + (p.coeffs[-2] + 1, 1))
    with pytest.raises(ArithmeticCheckError):
        check_seidel_charpoly(bad, 4)


def test_charpoly_object_fallback_for_large_entries():
    A = np.array([[0, 10**12], [10**12, 0]], dtype=object)
    assert charpoly_fl(A).coeffs == (-(10**24), 0, 1)


@given(st.integers(1, 7).flatmap(lambda n: int_matrices(n, -6, 6)))
def test_bareiss_matches_fraction_determinant(A):
    n = A.shape[0]
    M = [[Fraction(int(x)) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            det = Fraction(0)
            break
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    assert det_bareiss(A) == det


@given(st.integers(1, 7).flatmap(lambda n: int_matrices(n, -2, 2)))
def test_elimination_rank_kernel(A):
    el = eliminate(A)
    assert el.rank == rank(A) == np.linalg.matrix_rank(A.astype(float))
    K = nullspace(A)
    assert len(K) == A.shape[1] - el.rank
    for v in K:
        assert not (A.astype(object) @ np.array(v, dtype=object)).any()
    if el.rank:
        sub = A[np.ix_(el.pivot_rows, el.pivot_cols)]
        assert det_bareiss(sub) != 0


@given(st.integers(1, 6).flatmap(lambda n: int_matrices(n, -3, 3)))
def test_adjugate_identity(A):
    if det_bareiss(A) == 0:
        with pytest.raises(ValueError):
            adjugate_det(A)
        return
    adj, d = adjugate_det(A)
    n = A.shape[0]
    assert abs(d) == abs(det_bareiss(A))
    assert (np.array(adj, dtype=object) @ A.astype(object) == d * np.eye(n, dtype=object)).all()


@given(st.integers(1, 7).flatmap(lambda n: int_matrices(n, -3, 3, symmetric=True)))
def test_leading_minors(A):
    minors = leading_principal_minors(A)
    for k, m in enumerate(minors, 1):
        assert m == det_bareiss(A[:k, :k])


def test_poly_gcd_and_multiplicity():
    x1 = IntPolynomial.from_roots([1])
    q = IntPolynomial((-5, 0, 1))
    p = x1**3 * q**2 * IntPolynomial.from_roots([-2])
    assert multiplicity_of_factor(p, x1) == 3
    assert multiplicity_of_factor(p, q) == 2
    g = poly_gcd(p, derivative(p))
    assert g.degree == 4  # (x-1)^2 (x^2-5)
    assert p.degree - g.degree == 4  # roots 1, -2, +-sqrt(5)


def test_polynomial_arithmetic():
    p = IntPolynomial.from_roots([1, 2, 3])
    assert p(2) == 0 and p(4) == 6
    assert p.taylor_shift(1)(1) == 0  # p(x + 1) vanishes at x = 1
    qt, r = p.divmod_monic(IntPolynomial.from_roots([1]))
    assert r.is_zero and qt == IntPolynomial.from_roots([2, 3])
    assert (p - p).is_zero
