import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasspair.field import field_of_order
from grasspair.linalg import (
    Matrix,
    annihilator,
    identity,
    inverse,
    is_invertible,
    kernel_basis,
    matmul,
    rank,
    row_space,
    rref,
    subspace_intersection,
    subspace_sum,
    transpose,
    zeros,
)

GF2, GF3, GF4, GF5 = (field_of_order(q) for q in (2, 3, 4, 5))


def span_set(m: Matrix) -> set:
    """All vectors of the row space, by enumerating coefficient vectors."""
    F, out = m.field, set()
    for coeffs in itertools.product(range(F.q), repeat=m.nrows):
        v = [0] * m.ncols
        for c, r in zip(coeffs, m.rows):
            v = [F.add[x][F.mul[c][y]] for x, y in zip(v, r)]
        out.add(tuple(v))
    return out


def brute_kernel(m: Matrix) -> set:
    F = m.field
    return {
        x
        for x in itertools.product(range(F.q), repeat=m.ncols)
        if all(_dot(F, r, x) == 0 for r in m.rows)
    }


def _dot(F, a, b):
    s = 0
    for x, y in zip(a, b):
        s = F.add[s][F.mul[x][y]]
    return s


def matrices(field, max_rows=4, max_cols=4):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(0, field.q - 1), min_size=c, max_size=c), min_size=0, max_size=max_rows
        ).map(lambda rows: Matrix(field, tuple(map(tuple, rows)), c))
    )


def test_rref_examples():
    R, r, piv = rref(Matrix.of(GF2, [[1, 1], [0, 1]]))
    assert R.rows == ((1, 0), (0, 1)) and r == 2 and piv == (0, 1)
    R, r, _ = rref(zeros(GF3, 2, 3))
    assert R == zeros(GF3, 2, 3) and r == 0
    R, r, piv = rref(Matrix.of(GF5, [[1, 2], [2, 4]]))
    assert R.rows == ((1, 2), (0, 0)) and r == 1 and piv == (0,)


def test_kernel_examples():
    assert kernel_basis(Matrix.of(GF2, [[1, 1]])).rows == ((1, 1),)
    assert kernel_basis(identity(GF3, 3)).nrows == 0
    K = kernel_basis(Matrix.of(GF3, [[1, 0, 1], [0, 1, 1]]))
    assert K.rows == ((1, 1, 2),)
    assert span_set(K) == brute_kernel(Matrix.of(GF3, [[1, 0, 1], [0, 1, 1]]))


def test_sum_and_intersection_examples():
    e = identity(GF2, 3).rows
    full = subspace_sum(Matrix.of(GF2, [e[0][:2]]), Matrix.of(GF2, [e[1][:2]]))
    assert full.nrows == 2
    A = Matrix.of(GF2, [e[0], e[1]])
    B = Matrix.of(GF2, [e[1], e[2]])
    assert subspace_intersection(A, B).rows == (e[1],)
    assert subspace_intersection(A, A) == row_space(A)


def test_annihilator_examples():
    assert annihilator(identity(GF2, 2)).nrows == 0
    assert annihilator(Matrix(GF2, (), 2)).nrows == 2
    assert annihilator(Matrix.of(GF2, [[1, 1]])).rows == ((1, 1),)
    with pytest.raises(ValueError):
        annihilator(Matrix.of(GF2, [[1, 1], [1, 1]]))


def test_ambient_mismatch():
    with pytest.raises(ValueError):
        subspace_sum(identity(GF2, 2), identity(GF2, 3))
    with pytest.raises(ValueError):
        subspace_intersection(identity(GF2, 2), identity(GF3, 2))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([GF2, GF3, GF4]).flatmap(matrices))
def test_rref_properties(m):
    R, r, piv = rref(m)
    assert R.shape == m.shape
    assert rref(R)[0] == R
    assert list(piv) == sorted(set(piv)) and r == len(piv)
    for i, c in enumerate(piv):
        assert R.rows[i][c] == 1
        assert all(R.rows[j][c] == 0 for j in range(m.nrows) if j != i)
    assert span_set(Matrix(m.field, R.rows[:r], m.ncols)) == span_set(m)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([GF2, GF3, GF4]).flatmap(matrices))
def test_kernel_matches_brute_force(m):
    K = kernel_basis(m)
    assert K.nrows == m.ncols - rank(m)
    assert span_set(K) == brute_kernel(m)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([GF2, GF3]).flatmap(matrices), st.data())
def test_rref_is_canonical_under_row_operations(m, data):
    F = m.field
    rows = [list(r) for r in m.rows]
    for _ in range(5):
        if len(rows) < 2:
            break
        i, j = data.draw(st.lists(st.integers(0, len(rows) - 1), min_size=2, max_size=2, unique=True))
        c = data.draw(st.integers(0, F.q - 1))
        rows[i] = [F.add[a][F.mul[c][b]] for a, b in zip(rows[i], rows[j])]
        rows[i], rows[j] = rows[j], rows[i]
    assert row_space(Matrix.of(F, rows, m.ncols)) == row_space(m)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([GF2, GF3]), st.data())
def test_intersection_matches_vector_membership(F, data):
    n = data.draw(st.integers(1, 4))
    rows_a = data.draw(st.lists(st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n), max_size=3))
    rows_b = data.draw(st.lists(st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n), max_size=3))
    A, B = Matrix.of(F, rows_a, n), Matrix.of(F, rows_b, n)
    inter = subspace_intersection(A, B)
    assert span_set(inter) == span_set(A) & span_set(B)
    assert span_set(subspace_sum(A, B)) == span_set(Matrix.of(F, rows_a + rows_b, n))
    # double annihilator: S ∩ T = (S° + T°)°
    SA, SB = row_space(A), row_space(B)
    assert row_space(annihilator(row_space(subspace_sum(annihilator(SA), annihilator(SB))))) == inter


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([GF2, GF3, GF4]).flatmap(lambda F: matrices(F, 4, 4)))
def test_double_annihilator(m):
    S = row_space(m)
    assert annihilator(annihilator(S)) == S
    assert annihilator(S).nrows == m.ncols - S.nrows


def test_inverse_over_all_gl2_gf3():
    count = 0
    for entries in itertools.product(range(3), repeat=4):
        m = Matrix.of(GF3, [entries[:2], entries[2:]])
        if is_invertible(m):
            count += 1
            assert matmul(m, inverse(m)) == identity(GF3, 2)
        else:
            with pytest.raises(ValueError):
                inverse(m)
    assert count == (9 - 1) * (9 - 3)


def test_transpose_of_empty():
    t = transpose(Matrix(GF2, (), 3))
    assert t.shape == (3, 0)
    assert transpose(t).shape == (0, 3)


def test_entries_validated():
    with pytest.raises(ValueError):
        Matrix.of(GF2, [[0, 2]])
    with pytest.raises(ValueError):
        Matrix(GF2, ((0, 1), (1,)), 2)
