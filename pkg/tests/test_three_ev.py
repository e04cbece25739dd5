import pytest
from hypothesis import given
from hypothesis import strategies as st

from seidelgen.canonical import seidel_certificate
from seidelgen.core import SeidelMatrix, k_construction
from seidelgen.spectral import QuadPair, SpectrumSpec, charpoly, distinct_eigenvalue_count, multiplicity_int
from seidelgen.three_ev import (
    Infeasible,
    enumerate_feasible,
    even_degree_graph,
    has_regular_switching_graph,
    is_open,
    multiplicities,
    necessary_conditions,
    search_spectrum,
)
from three_ev_tables import INTEGER_ROWS, QUADRATIC_ROWS


def test_multiplicity_examples():
    assert multiplicities(9, (-3, 0, 3)) == (4, 1, 4)
    assert multiplicities(6, (-3, 1, 3)) == (2, 3, 1)
    with pytest.raises(Infeasible):
        multiplicities(6, (-2, 1, 3))
    assert multiplicities(5, (0, QuadPair(0, -5))) == (1, 2)
    with pytest.raises(ValueError):
        multiplicities(6, (1, 1, 3))


def test_necessary_condition_examples():
    # the three roots -sqrt(3), 0, sqrt(3): integer root 0 with the pair x^2 - 3
    assert "i" in necessary_conditions(SpectrumSpec.parse("[0]^1,Q(0,-3)^1"))
    assert "ii" in necessary_conditions(SpectrumSpec.parse("[-7]^1,[-1]^3,[2]^5"))
    assert "iii" in necessary_conditions(SpectrumSpec.parse("[1]^8,Q(-4,-23)^3"))
    assert necessary_conditions(SpectrumSpec.parse("[-3]^2,[1]^3,[3]^1")) == []


@pytest.mark.parametrize("n", range(3, 25))
def test_feasible_spectra_match_reference_rows(n):
    got = {str(f.spec) for f in enumerate_feasible(n)}
    want = {r for m, r, _ in INTEGER_ROWS + QUADRATIC_ROWS if m == n}
    assert got == want


def test_feasible_orientation_and_identities():
    for n in range(3, 25):
        for f in enumerate_feasible(n):
            spec = f.spec
            assert spec.is_seidel_consistent()
            ints = sorted(e.r for e, _ in spec.terms if hasattr(e, "r"))
            if len(ints) == 3:
                assert ints[0] < 0 <= ints[1] <= ints[2]


def test_open_spectra_flagged():
    assert is_open(SpectrumSpec.parse("[-7]^7,[1]^9,[5]^8"))
    assert is_open(SpectrumSpec.parse("[7]^7,[-1]^9,[-5]^8"))
    assert not is_open(SpectrumSpec.parse("[-3]^2,[1]^3,[3]^1"))


SMALL = [(n, s, c) for n, s, c in INTEGER_ROWS + QUADRATIC_ROWS if n <= 13]


@pytest.mark.parametrize("n,text,count", SMALL)
def test_small_searches(n, text, count):
    res = search_spectrum(SpectrumSpec.parse(text))
    assert res.count == count
    for S in res.matrices:
        assert distinct_eigenvalue_count(S) == 3
        assert charpoly(S) == SpectrumSpec.parse(text).polynomial()


@pytest.mark.parametrize("a,b", [(2, 3), (2, 4), (3, 3), (2, 5), (4, 3)])
def test_k_construction_is_found(a, b):
    S = k_construction(a, b)
    spec = SpectrumSpec.parse(f"[{-2 * a + 1}]^{b - 1},[1]^{a * b - b},[{a * b - 2 * a + 1}]^1")
    found = {seidel_certificate(T) for T in search_spectrum(spec).matrices}
    assert seidel_certificate(S) in found


@pytest.mark.parametrize("text", ["[-3]^2,[1]^3,[3]^1", "[3]^4,Q(-4,-1)^3", "[-3]^6,[1]^3,[5]^3"])
def test_negated_search_has_same_count(text):
    spec = SpectrumSpec.parse(text)
    a = search_spectrum(spec)
    b = search_spectrum(spec.negate())
    assert a.count == b.count
    certs = {seidel_certificate(S) for S in b.matrices}
    assert {seidel_certificate(S.negate()) for S in a.matrices} == certs


def test_regular_switching_check():
    assert has_regular_switching_graph(k_construction(2, 3))
    assert has_regular_switching_graph(SeidelMatrix(4, 0b000111))
    with pytest.raises(ValueError):
        has_regular_switching_graph(SeidelMatrix.all_ones(31))


@given(st.integers(1, 6).map(lambda h: 2 * h + 1).flatmap(
    lambda n: st.integers(0, (1 << (n * (n - 1) // 2)) - 1).map(lambda b: SeidelMatrix(n, b))))
def test_even_degree_member(S):
    G = even_degree_graph(S)
    assert all(d % 2 == 0 for d in G.degrees())
    assert seidel_certificate(G.seidel()) == seidel_certificate(S)


def test_even_degree_needs_odd_order():
    with pytest.raises(ValueError):
        even_degree_graph(SeidelMatrix.all_ones(4))
