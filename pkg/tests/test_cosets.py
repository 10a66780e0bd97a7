from fractions import Fraction
from itertools import product

import pytest

from reference_values import G3, M_Q13_AT_XI, Q, Q13_XI, negate
from unlinking.cosets import (NotDefiniteError, coset_system, cyclic_listing,
                              cyclic_listing_matches, d_invariants_alternating,
                              general_coset_system, m_function, rho_invariants)
from unlinking.groups import FiniteAbelianGroup
from unlinking.linalg import mod2_reduce

GOERITZ = [
    [[-2]],
    [[-4, 2], [2, -3]],
    [[-6, 4], [4, -5]],
    [[-4, 2], [2, -7]],
    [[-2, 0, 1], [0, -2, 1], [1, 1, -2]],
    [[-4, 1, 0], [1, -3, 1], [0, 1, -2]],
    [[-3, 1, 1], [1, -3, 1], [1, 1, -3]],
]


@pytest.mark.parametrize("p", [2, 3, 5, 8])
def test_rank_one_values(p):
    system = coset_system([[-p]])
    got = sorted(m_function(system).values.values())
    want = sorted(Fraction(p - (p - 2 * i) ** 2, 4 * p) for i in range(p))
    assert got == want


@pytest.mark.parametrize("G", GOERITZ[:4])
def test_box_attains_maximum(G):
    # search a box ten times wider and compare the per-coset maximum
    system = coset_system(G)
    m = m_function(system).values
    r = len(G)
    wide = {}
    ranges = [range(10 * G[i][i] + (G[i][i] % 2), -10 * G[i][i], 2) for i in range(r)]
    for xi in product(*ranges):
        g = system.label_of(xi)
        val = (system.square(xi) + r) / 4
        wide[g] = max(wide.get(g, val), val)
    assert wide == m


@pytest.mark.parametrize("G", GOERITZ)
def test_box_rep_count_and_involution(G):
    system = coset_system(G)
    assert len(system.labels) == system.group.order
    for g, reps in system.representatives.items():
        for xi in reps:
            assert system.label_of(xi) == g
            assert system.label_of(tuple(-x for x in xi)) == system.involution(g)
    assert d_invariants_alternating(G).is_conjugation_symmetric()


@pytest.mark.parametrize("G", GOERITZ)
def test_general_system_agrees_with_box_mod_two(G):
    box = coset_system(G)
    gen = general_coset_system(G)
    rho_box = rho_invariants(box)
    for g, reps in gen.representatives.items():
        xi = reps[0]
        lab = box.label_of(xi)
        assert mod2_reduce((gen.square(xi) + len(G)) / 4) == rho_box[lab]
    assert sorted(rho_invariants(gen).values()) == sorted(rho_box.values())


def test_indefinite_general_system():
    gen = general_coset_system([[1, 2], [2, 1]])
    assert gen.group.order == 3
    assert len(gen.fixed_labels) == 1


def test_requires_negative_definite():
    with pytest.raises(NotDefiniteError):
        coset_system(G3)
    with pytest.raises(NotDefiniteError):
        coset_system([[1, 2], [2, 1]])
    with pytest.raises(ValueError):
        general_coset_system([[1, 1], [1, 1]])


def test_q13_value():
    system = coset_system(Q(13))
    assert m_function(system).values[system.label_of(Q13_XI)] == M_Q13_AT_XI


def test_fixed_vectors():
    system = coset_system(negate(G3))
    fixed = set(system.fixed_labels)
    for g in system.labels:
        assert system.is_fixed_vector(system.representative(g)) == (g in fixed)
    assert len(system.fixed_labels) == len(system.group.two_torsion())


def test_cyclic_listing():
    Z5 = FiniteAbelianGroup([5])
    vals = {(i,): i * i for i in range(5)}
    assert cyclic_listing(vals, Z5, (0,), (2,)) == [0, 4, 16, 1, 9]
    hits = cyclic_listing_matches(vals, Z5, [0, 4, 16, 1, 9], [(0,)])
    assert ((0,), (2,)) in hits
