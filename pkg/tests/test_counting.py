from itertools import product

import pytest

from digdef.canon import canonicalize
from digdef.counting import count_binary_relations, partitions
from digdef.digraph import Digraph


def test_partitions():
    assert len(list(partitions(4))) == 5
    assert all(sum(p) == 6 for p in partitions(6))


@pytest.mark.parametrize("n,want", [(1, 2), (2, 10), (3, 104), (4, 3044)])
def test_burnside(n, want):
    assert count_binary_relations(n) == want


@pytest.mark.parametrize("n", [1, 2, 3])
def test_burnside_against_brute_force(n):
    keys = {canonicalize(Digraph(n, rows)).key for rows in product(range(1 << n), repeat=n)}
    assert len(keys) == count_binary_relations(n)
