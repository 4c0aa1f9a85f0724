from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from clustercat import linalg


def test_rref_pivots():
    m = linalg.mat([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    red, pivots = linalg.rref(m)
    assert pivots == [0, 1]
    assert red[0] == [Fraction(1), Fraction(0), Fraction(-1)]
    assert red[1] == [Fraction(0), Fraction(1), Fraction(2)]


def test_nullspace_of_empty_system_is_identity():
    basis = linalg.nullspace([], 3)
    assert basis == [list(row) for row in linalg.identity(3)]


def test_solve_inconsistent_returns_none():
    assert linalg.solve(linalg.mat([[1, 1], [1, 1]]), [1, 2], 2) is None


def test_solve_finds_solution():
    a = linalg.mat([[2, 0], [0, 3]])
    x = linalg.solve(a, [4, 9], 2)
    assert x == [Fraction(2), Fraction(3)]


def test_inverse_roundtrip():
    a = linalg.mat([[1, 2], [3, 5]])
    inv = linalg.inverse(a)
    assert linalg.mat_mul(a, inv) == linalg.identity(2)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-4, 4), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_plus_nullity(rows):
    m = linalg.mat(rows)
    cols = len(rows[0])
    assert linalg.rank(m) + len(linalg.nullspace(m, cols)) == cols


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_nullspace_vectors_annihilate(rows):
    m = linalg.mat(rows)
    cols = len(rows[0])
    for vec in linalg.nullspace(m, cols):
        assert all(x == 0 for x in linalg.mat_vec(m, vec))
