from fractions import Fraction
from math import factorial

import pytest

from seidelgen.canonical import seidel_canon
from seidelgen.verify import (
    PrunedCensusError,
    aut_histogram,
    expected_mass,
    histogram_mass,
    mass_check,
    merge_histograms,
)
from oracles import brute_aut_order


def test_expected_mass_values():
    assert expected_mass(3) == Fraction(1, 6)
    assert expected_mass(5) == Fraction(4, 15)
    assert expected_mass(10) == Fraction(2**35, factorial(10))


@pytest.mark.parametrize("n", range(1, 9))
def test_mass_formula(n, census):
    auts = [seidel_canon(S).aut_order for S in census(n)]
    res = mass_check(n, auts)
    assert res.ok, res.line()
    assert res.line().endswith("PASS")
    assert histogram_mass(n, aut_histogram(auts)).ok


@pytest.mark.parametrize("n", range(1, 6))
def test_mass_formula_with_brute_force_orders(n, census):
    assert mass_check(n, [brute_aut_order(S) for S in census(n)]).ok


def test_histograms(census):
    assert aut_histogram(seidel_canon(S).aut_order for S in census(3)) == {12: 2}
    assert aut_histogram(seidel_canon(S).aut_order for S in census(2)) == {4: 1}
    for n in range(2, 8):
        hist = aut_histogram(seidel_canon(S).aut_order for S in census(n))
        assert all(a % 2 == 0 and (factorial(n) * 2**n) % a == 0 for a in hist)
    assert merge_histograms([{2: 1, 4: 2}, {4: 1}]) == {2: 1, 4: 3}


def test_mass_refuses_pruned_and_bad_orders():
    with pytest.raises(PrunedCensusError):
        mass_check(4, [8], pruned=True)
    with pytest.raises(ValueError):
        mass_check(3, [5])
    assert not mass_check(3, [12]).ok
