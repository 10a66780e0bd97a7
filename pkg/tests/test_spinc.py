from fractions import Fraction as F

import pytest

from reference_values import D_INVARIANTS_Y, Q
from unlinking.cosets import coset_system, d_invariants_alternating
from unlinking.groups import FiniteAbelianGroup
from unlinking.spinc import (OrderMismatch, SpincTorsor, affine_monomorphisms,
                             d_obstruction, rho_obstruction, spin_rho_check,
                             subgroup_order)


def own_torsor(G):
    return SpincTorsor.from_table(d_invariants_alternating(G))


def y_torsor():
    return SpincTorsor.from_values([48], {(i,): v for i, v in enumerate(D_INVARIANTS_Y)})


def test_subgroup_order():
    assert subgroup_order(3, 12) == 2
    assert subgroup_order(5, 5) == 1
    for delta, order in [(5, 12), (3, 6), (0, 4)]:
        with pytest.raises(OrderMismatch):
            subgroup_order(delta, order)


@pytest.mark.parametrize("G", [[[-2]], [[-5]], [[-4, 2], [2, -3]],
                               [[-4, 2, 1], [2, -4, 1], [1, 1, -5]]])
def test_form_bounds_its_own_boundary(G):
    Y = own_torsor(G)
    res = d_obstruction(G, Y)
    assert not res and res.level == "d"
    assert not rho_obstruction(G, Y)
    assert not spin_rho_check(G, Y)


def test_mirror_lens_space_is_obstructed():
    Y = own_torsor([[-3]]).mirror()
    assert d_obstruction([[-3]], Y)
    assert spin_rho_check([[-3]], Y).level == "spin"
    assert rho_obstruction([[-3]], Y).obstructed


def test_order_mismatch_obstructs():
    res = d_obstruction([[-3]], own_torsor([[-2, 0], [0, -4]]))
    assert res and res.level == "order"


def test_equivalence_levels_nest():
    system = coset_system(Q(4))
    Y = y_torsor()
    every = affine_monomorphisms(system, Y, level="congruence", up_to=None)
    conj = affine_monomorphisms(system, Y, level="congruence", up_to="conjugation")
    sym = affine_monomorphisms(system, Y, level="congruence", up_to="symmetry")
    assert len(every) >= len(conj) >= len(sym) >= 1
    assert not affine_monomorphisms(system, Y, level="d")
    with pytest.raises(ValueError):
        affine_monomorphisms(system, Y, up_to="sideways")


def test_rank_three_forms_against_y():
    assert d_obstruction(Q(4), y_torsor()).level == "d"
    assert d_obstruction(Q(13), y_torsor())


def test_from_signatures():
    torsors = SpincTorsor.from_signatures([2], (1, -1))
    assert len(torsors) == 2
    assert {frozenset(t.values.values()) for t in torsors} == {frozenset({F(-1, 4), F(1, 4)})}
    assert all(t.value_kind == "rho" for t in torsors)
    with pytest.raises(ValueError):
        SpincTorsor.from_signatures([2], (1,))


def test_rho_fallback():
    Y = SpincTorsor.from_signatures([2], (-1, -1))[0]
    res = d_obstruction([[-2]], Y)
    assert res.level == "rho-fallback"


def test_mirror_involution_and_validation():
    Y = y_torsor()
    assert Y.mirror().mirror() == Y
    G = FiniteAbelianGroup([4])
    with pytest.raises(ValueError):
        SpincTorsor(G, {}, frozenset([(1,)]))
    with pytest.raises(ValueError):
        SpincTorsor(G, {(1,): F(1), (3,): F(0)}, frozenset())
    with pytest.raises(ValueError):
        SpincTorsor(G, {}, frozenset(), "eta")


def test_t_two_search_runs():
    # |H| = 4 over a unimodular form forces t = 2
    res = d_obstruction([[-1]], own_torsor([[-4]]))
    assert res.level in ("d", "congruence")
