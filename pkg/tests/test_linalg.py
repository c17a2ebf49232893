from fractions import Fraction

import pytest
from hypothesis import given, settings

from keyvar.linalg import RatMatrix, rat_det, rat_nullspace, rat_rank, rat_solve
from keyvar.type_r.data import POINTS_Q

from oracles import leibniz_det, minor_rank
from strategies import matrices, square_matrices


def test_rank_examples():
    assert rat_rank([[1, 2], [2, 4]]) == 1
    rows = [list(p) for p in POINTS_Q[:4]]
    assert rat_rank(rows) == 4
    assert rat_det(rows) == leibniz_det([[Fraction(a) for a in r] for r in rows])


def test_identity_solve_has_only_zero_solution():
    eye = RatMatrix.identity(4)
    assert rat_solve(eye, [0, 0, 0, 0]) == (0, 0, 0, 0)
    assert rat_nullspace(eye) == []


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        rat_solve([[1, 0], [0, 1]], [1, 2, 3])


def test_inconsistent_system():
    assert rat_solve([[1, 1], [1, 1]], [0, 1]) is None


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_against_minors(rows):
    assert rat_rank(rows) == minor_rank(rows)
    assert rat_rank(rows) == rat_rank(RatMatrix(rows).T())


@settings(max_examples=150, deadline=None)
@given(square_matrices())
def test_det_against_leibniz(rows):
    assert rat_det(rows) == leibniz_det(rows)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity(rows):
    basis = rat_nullspace(rows)
    n = len(rows[0])
    assert rat_rank(rows) + len(basis) == n
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_solve_returns_a_solution(rows):
    b = [sum(r) for r in rows]  # A * (1, ..., 1)
    x = rat_solve(rows, b)
    assert x is not None
    assert [sum(a * c for a, c in zip(r, x)) for r in rows] == b
