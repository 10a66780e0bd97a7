from itertools import combinations

import pytest

from unlinking.groups import FiniteAbelianGroup


def brute_subgroups(G, t):
    elems = G.elements()
    out = set()
    for r in range(1, G.rank + 1):
        for gens in combinations(elems, r):
            S = G.span(list(gens))
            if len(S) == t:
                out.add(S)
    return out


def test_basic_operations():
    G = FiniteAbelianGroup([2, 4])
    assert G.order == 8 and G.rank == 2 and not G.is_cyclic
    assert G.add((1, 3), (1, 2)) == (0, 1)
    assert G.neg((1, 1)) == (1, 3)
    assert G.element_order((1, 2)) == 2
    assert sorted(G.two_torsion()) == [(0, 0), (0, 2), (1, 0), (1, 2)]
    assert len(G.elements()) == 8


def test_invalid_factors():
    with pytest.raises(ValueError):
        FiniteAbelianGroup([0])
    assert FiniteAbelianGroup([1, 6]) == FiniteAbelianGroup([6])


@pytest.mark.parametrize("factors", [[12], [2, 2], [2, 4], [3, 6], [2, 2, 2]])
def test_subgroups_match_brute_force(factors):
    G = FiniteAbelianGroup(factors)
    for t in range(1, G.order + 1):
        if G.order % t:
            assert G.subgroups_of_order(t) == []
            continue
        assert set(G.subgroups_of_order(t)) == brute_subgroups(G, t)


def test_trivial_group():
    G = FiniteAbelianGroup([])
    assert G.order == 1 and G.is_cyclic
    assert G.subgroups_of_order(1) == [frozenset([()])]
