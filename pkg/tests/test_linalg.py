from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import descartes_inertia, leibniz_det
from unlinking.linalg import (IntMatrix, SingularMatrixError, as_matrix, congruent_mod2,
                              definiteness, determinant, evaluate_form, format_rational,
                              inertia, integer_kernel, invariant_factors, leading_minors,
                              mod2_reduce, parse_rational, rank, rational_inverse, signature,
                              smith_normal_form, solve, solve_integer)

square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                       min_size=n, max_size=n))


def _sym(rows):
    n = len(rows)
    return [[rows[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]


@settings(max_examples=300, deadline=None)
@given(square)
def test_determinant_matches_leibniz(rows):
    assert determinant(rows) == leibniz_det(rows)


@settings(max_examples=300, deadline=None)
@given(square)
def test_inertia_matches_characteristic_polynomial(rows):
    S = _sym(rows)
    assert inertia(S) == descartes_inertia(S)


@settings(max_examples=200, deadline=None)
@given(square)
def test_rational_inverse(rows):
    if determinant(rows) == 0:
        with pytest.raises(SingularMatrixError):
            rational_inverse(rows)
        return
    inv = rational_inverse(rows)
    n = len(rows)
    for i in range(n):
        for j in range(n):
            assert sum(rows[i][k] * inv[k][j] for k in range(n)) == (1 if i == j else 0)


def test_snf_known():
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == (2, 6, 12)
    assert invariant_factors([[0, 0], [0, 0]]) == (0, 0)
    assert smith_normal_form([[4]]).rank == 1


def test_snf_deterministic():
    a = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
    s1, s2 = smith_normal_form(a), smith_normal_form(a)
    assert (s1.U.rows, s1.V.rows) == (s2.U.rows, s2.V.rows)


def test_definiteness_and_signature():
    assert definiteness([[2, -1], [-1, 2]]) == "positive"
    assert definiteness([[-2, 1], [1, -2]]) == "negative"
    assert definiteness([[1, 0], [0, -1]]) == "indefinite"
    assert signature([[1, 0], [0, -1]]) == 0
    assert inertia([[0, 1], [1, 0]]) == (1, 1, 0)
    assert inertia([[1, 1], [1, 1]]) == (1, 0, 1)
    assert leading_minors([[2, 1], [1, 3]]) == [2, 5]


def test_solve_and_kernel():
    x = solve([[2, 1], [1, 3]], [3, 4])
    assert x == [1, 1] or tuple(x) == (1, 1)
    K = integer_kernel([[1, 1, 1]])
    assert K.nrows == 2
    for r in K.rows:
        assert sum(r) == 0
    assert rank(K) == 2
    assert solve_integer(IntMatrix([[1, 1, 0], [0, 2, 0]]), (1, 2, 0)) is None
    assert list(solve_integer(IntMatrix([[1, 1, 0], [0, 1, 0]]), (2, 5, 0))) == [2, 3]


def test_evaluate_form():
    assert evaluate_form([[2, 1], [1, 2]], (1, -1)) == 2


def test_rationals():
    assert mod2_reduce(Fraction(3, 4)) == Fraction(3, 4)
    assert mod2_reduce(Fraction(-5, 4)) == Fraction(3, 4)
    assert mod2_reduce(-1) == 1
    assert congruent_mod2(Fraction(-1, 4), Fraction(7, 4))
    assert format_rational(Fraction(-5, 4)) == "-5/4"
    assert format_rational(2) == "2/1"
    assert parse_rational("-55/48") == Fraction(-55, 48)


def test_matrix_basics():
    M = as_matrix([[1, 2], [3, 4]])
    assert M.T.rows == ((1, 3), (2, 4))
    assert (M @ IntMatrix.identity(2)).rows == M.rows
    assert not M.is_symmetric()
    assert M.submatrix([1], [0]).rows == ((3,),)
