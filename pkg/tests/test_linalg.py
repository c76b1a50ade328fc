import random
from fractions import Fraction

import pytest

from resfault.linalg import (
    SingularMatrixError,
    fraction_free_invert,
    leading_principal_minors,
    multiply,
    solve_unit_column,
)


def random_spd(rng, n):
    # M^T M + I is symmetric positive definite with integer entries
    m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
    return [
        [sum(m[k][i] * m[k][j] for k in range(n)) + (i == j) for j in range(n)]
        for i in range(n)
    ]


def as_fractions(adj, det, scale):
    n = len(adj)
    return [[Fraction(adj[i][j] * scale, det) for j in range(n)] for i in range(n)]


def test_inverse_times_matrix_is_identity():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 7)
        a = random_spd(rng, n)
        inv = as_fractions(*fraction_free_invert(a))
        prod = multiply(a, inv)
        assert prod == [[Fraction(i == j) for j in range(n)] for i in range(n)]


def test_rational_entries_are_scaled_exactly():
    a = [[Fraction(3, 2), Fraction(1, 3)], [Fraction(1, 3), Fraction(5, 7)]]
    inv = as_fractions(*fraction_free_invert(a))
    assert multiply(a, inv) == [[1, 0], [0, 1]]


def test_solve_unit_column_matches_full_inverse():
    rng = random.Random(11)
    for _ in range(15):
        n = rng.randint(1, 6)
        a = random_spd(rng, n)
        inv = as_fractions(*fraction_free_invert(a))
        j = rng.randrange(n)
        assert solve_unit_column(a, j) == [inv[i][j] for i in range(n)]


def test_pivots_are_leading_minors_and_positive_for_spd():
    rng = random.Random(3)
    a = random_spd(rng, 5)
    minors = leading_principal_minors(a)
    assert len(minors) == 5
    assert all(m > 0 for m in minors)
    # first minor is the top-left entry, last is the determinant
    assert minors[0] == a[0][0]
    _, det, _ = fraction_free_invert(a)
    assert minors[-1] == det


def test_singular_matrix_raises():
    with pytest.raises(SingularMatrixError):
        fraction_free_invert([[1, 1], [1, 1]])
    with pytest.raises(SingularMatrixError):
        solve_unit_column([[0, 1], [1, 0]], 0)
