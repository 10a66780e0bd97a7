import pytest

from unlinking import diagram as D
from unlinking.dataset import load_table
from unlinking.linalg import determinant

TREFOIL = "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]"
HOPF = "PD[X[2,1,3,0], X[0,3,1,2]]"
TABLE = load_table()


def test_trefoil():
    T = D.parse_pd(TREFOIL)
    assert D.crossing_signs(T) == [1, 1, 1] and D.writhe(T) == 3
    assert D.signatures(T) == [-2]
    assert D.signatures(D.mirror(T)) == [2]
    assert D.is_alternating(T)
    g = D.analyse(T)
    assert g.determinant == 3 and g.nullity_zero


def test_hopf_orientations():
    H = D.parse_pd(HOPF)
    assert H.components == 2
    assert H.quasi_orientations() == [(False, False), (False, True)]
    assert D.signatures(H) == [1, -1]
    assert [list(r) for r in D.linking_matrix(H)] == [[0, -1], [-1, 0]]
    assert [list(r) for r in D.linking_matrix(H.with_orientation((False, True)))] == [[0, 1], [1, 0]]


def test_parse_formats_agree():
    a = D.parse_pd(TREFOIL)
    b = D.parse_pd("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]")
    c = D.parse_pd([[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]])
    assert a == b == c
    assert D.parse_pd(str(a)) == a
    assert a.to_json() == [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]


@pytest.mark.parametrize("text", [
    "", "PD[X[1,2,3]]", "PD[X[1,5,2,4],X[3,1,4,6]]", "[[1,2,3,4]", "knot",
    "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,a]]", "PD[X[1,5,2,4] junk]",
])
def test_bad_codes(text):
    with pytest.raises(D.PDError):
        D.parse_pd(text)


def test_orientation_flag_count():
    with pytest.raises(D.PDError):
        D.parse_pd(HOPF, orientation=(False,))


@pytest.mark.parametrize("name", sorted(TABLE))
def test_diagram_invariants_match_record(name):
    r = TABLE[name]
    for o in r.pd.quasi_orientations():
        a, b = D.signature_gl_both(r.pd, o)
        assert a == b
    assert tuple(D.signatures(r.pd)) == tuple(r.signatures)
    g = D.goeritz_from_pd(r.pd)
    assert abs(determinant(g.white_gram)) == abs(determinant(g.black_gram)) == r.determinant
    assert D.nullity(r.pd) == r.nullity
    assert D.is_alternating(r.pd) == r.alternating


@pytest.mark.parametrize("name", ["L2a1", "L6n1", "L7a6", "L9a10", "L8n3"])
def test_mirror_is_an_involution(name):
    pd = TABLE[name].pd
    twice = D.mirror(D.mirror(pd))
    assert D.signatures(twice) == D.signatures(pd)
    assert D.linking_matrix(twice) == D.linking_matrix(pd)
    for o in pd.quasi_orientations():
        m = D.mirror(pd.with_orientation(o))
        assert D.signature_gl(m) == -D.signature_gl(pd, o)
    assert sorted(D.signatures(D.mirror(pd))) == sorted(-s for s in D.signatures(pd))
