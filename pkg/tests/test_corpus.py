from collections import Counter

import pytest

from chowforge.corpus import corpus, figure3_lattice, lookup, simple_matroids
from chowforge.matroid import MatroidError


def test_counts_of_simple_matroids():
    by_size = Counter(M.n for M in simple_matroids(5))
    assert [by_size[n] for n in range(1, 6)] == [1, 1, 2, 4, 9]


def test_names():
    names = [M.name for M in simple_matroids(4)]
    assert names == ["B1", "B2", "U2,3", "B3", "U2,4", "U3,4", "S4.3.1", "B4"]
    assert len(corpus()) == 19


def test_lookup():
    assert lookup("fig2").rank() == 4
    assert lookup("U5,6").n == 6
    assert lookup("C4").rank() == 3
    assert lookup("S5.3.1").n == 5
    assert len(figure3_lattice()) == 8
    with pytest.raises(MatroidError):
        lookup("nope")
