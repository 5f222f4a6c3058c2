from hypothesis import given, settings, strategies as st
import sympy

from lcmlattice.linalg import bareiss_rank, modular_rank, sparse_rank


def columns_of(rows):
    if not rows:
        return []
    return [{i: rows[i][j] for i in range(len(rows)) if rows[i][j]} for j in range(len(rows[0]))]


matrices = st.integers(1, 7).flatmap(
    lambda m: st.integers(1, 7).flatmap(
        lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_small_examples():
    assert sparse_rank([]) == 0
    assert sparse_rank(columns_of([[1, 2], [2, 4]])) == 1
    assert bareiss_rank([[0, 0], [0, 0]]) == 0
    # 2 is invertible over Q but zero over GF(2)
    assert sparse_rank(columns_of([[2]])) == 1
    assert sparse_rank(columns_of([[2]]), p=2) == 0


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_rank_over_q_matches_sympy(rows):
    want = sympy.Matrix(rows).rank()
    assert sparse_rank(columns_of(rows)) == want
    assert bareiss_rank(rows) == want


@settings(max_examples=200, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5]))
def test_rank_mod_p_agrees(rows, p):
    assert sparse_rank(columns_of(rows), p) == modular_rank(rows, p)
