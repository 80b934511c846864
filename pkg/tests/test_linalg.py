from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import small_rationals
from oracles import sympy_nullity, sympy_rank
from vsing.linalg import InconsistentSystem, mat_vec, nullspace, rank, rref, solve


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    n = draw(st.integers(1, max_rows))
    m = draw(st.integers(1, max_cols))
    # sparse-ish entries so that rank deficiency is common
    entry = st.one_of(st.just(Fraction(0)), small_rationals)
    return [[draw(entry) for _ in range(m)] for _ in range(n)], m


@given(matrices())
def test_rank_matches_sympy(mat):
    rows, m = mat
    assert rank(rows) == sympy_rank(rows, m)


@given(matrices())
def test_nullspace_matches_sympy(mat):
    rows, m = mat
    null = nullspace(rows, m)
    assert len(null) == sympy_nullity(rows, m)
    for x in null:
        assert all(y == 0 for y in mat_vec(rows, x))


@given(matrices())
def test_nullspace_is_canonical(mat):
    rows, m = mat
    null = nullspace(rows, m)
    R, pivots = rref(rows)
    free = [c for c in range(m) if c not in pivots]
    for x, f in zip(null, free):
        assert [x[g] for g in free] == [int(g == f) for g in free]


@given(matrices(), st.lists(small_rationals, min_size=5, max_size=5))
def test_solve(mat, coeffs):
    rows, m = mat
    x0 = coeffs[:m]
    b = mat_vec(rows, x0)
    x, null = solve(rows, b)
    assert mat_vec(rows, x) == b
    assert len(null) == m - rank(rows)


def test_inconsistent():
    with pytest.raises(InconsistentSystem):
        solve([[1, 1], [2, 2]], [1, 3])


def test_rref_example():
    R, piv = rref([[2, 4, 6], [1, 2, 4]])
    assert piv == [0, 2]
    assert R == [[1, 2, 0], [0, 0, 1]]


def test_empty_rows():
    assert nullspace([], 2) == [[1, 0], [0, 1]]
    assert rank([]) == 0
