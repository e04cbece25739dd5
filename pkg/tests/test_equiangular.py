import numpy as np
import pytest

from seidelgen.core import SeidelMatrix, k_construction
from seidelgen.equiangular import LineSystemTarget, check_seed, search_lines, to_gram


def test_gram_of_triangle():
    g = to_gram(SeidelMatrix.all_ones(3), 1)
    assert g.rank == 1 and g.scale == 1
    assert (g.matrix == np.ones((3, 3), dtype=object)).all()


def test_gram_rejects_wrong_bound():
    with pytest.raises(ValueError):
        to_gram(k_construction(2, 3), 1)  # -3 is the smallest eigenvalue
    with pytest.raises(ValueError):
        to_gram(k_construction(2, 3), 5)  # -5 is not an eigenvalue
    assert to_gram(k_construction(2, 3), 3).rank == 4


def test_target_validation():
    with pytest.raises(ValueError):
        LineSystemTarget(7, 2)
    with pytest.raises(ValueError):
        LineSystemTarget(1, 3)


def test_small_line_search_reaches_extinction():
    # lines at angle 1/3 in R^3: at most 4 (the diagonals of a cube)
    res = search_lines(LineSystemTarget(3, 3, True), 8)
    assert res.max_lines() == 4
    assert res.counts[5] == 0
    for g in res.last:
        assert to_gram(g.matrix, 3).rank <= 3


def test_seed_check():
    t = LineSystemTarget(2, 3, False)
    # order 3 in the plane needs -3 as an eigenvalue
    assert check_seed(t, [SeidelMatrix.all_ones(2)]) == []
    assert check_seed(t, [SeidelMatrix.all_ones(2), SeidelMatrix.all_ones(3)]) == [1]
