import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcsurf.linalg import (
    CompositionNonzero,
    IncrementalEchelon,
    SparseMatrix,
    cohomology_dim,
    dense_nullspace,
    dense_rank,
    nullspace_basis,
    rank,
)


def mat(rows):
    return SparseMatrix.from_dense(rows)


def test_rank_identity():
    assert rank(mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3


def test_rank_zero():
    assert rank(SparseMatrix(2, 2)) == 0


def test_rank_dependent_rows():
    # [[1,2],[2,4]] row-reduces to a single nonzero row.
    assert rank(mat([[1, 2], [2, 4]])) == 1


def test_nullspace_identity():
    assert nullspace_basis(mat([[1, 0], [0, 1]])) == []


def test_nullspace_zero_matrix():
    basis = nullspace_basis(SparseMatrix(1, 3))
    assert len(basis) == 3


def test_nullspace_one_row():
    (v,) = nullspace_basis(mat([[1, 1]]))
    # proportional to (1, -1)
    assert v[0] * Fraction(-1) == v[1]


def test_nullspace_vectors_annihilate():
    m = mat([[1, 2, 3], [0, 1, 1]])
    for v in nullspace_basis(m):
        assert m.apply(v) == {}


def test_cohomology_trivial_middle():
    d_in = SparseMatrix(4, 0)
    d_out = SparseMatrix(0, 4)
    assert cohomology_dim(d_in, d_out) == 4


def test_cohomology_identity_in():
    d_in = mat([[1, 0], [0, 1]])
    d_out = SparseMatrix(0, 2)
    assert cohomology_dim(d_in, d_out) == 0


def test_cohomology_exact_complex():
    # 1 -> 2 -> 1 with d_out.d_in = 0: ker(d_out) is 1-dim, rank(d_in)=1.
    d_in = mat([[1], [0]])
    d_out = mat([[0, 1]])
    assert cohomology_dim(d_in, d_out) == 0


def test_cohomology_rejects_nonzero_composition():
    d_in = mat([[1], [0]])
    d_out = mat([[1, 0]])
    with pytest.raises(CompositionNonzero):
        cohomology_dim(d_in, d_out)


def random_matrix(rng, rows, cols):
    return SparseMatrix(rows, cols, {
        (r, c): Fraction(rng.randint(-3, 3))
        for r in range(rows) for c in range(cols)
        if rng.random() < 0.6
    })


def test_rank_plus_nullity_and_transpose():
    rng = random.Random(20240)
    for _ in range(40):
        rows = rng.randint(0, 6)
        cols = rng.randint(0, 6)
        m = random_matrix(rng, rows, cols)
        rk = rank(m)
        assert rk + len(nullspace_basis(m)) == m.cols
        assert rk == rank(m.transpose())
        assert rk == dense_rank(m.to_dense()) if m.rows else rk == 0


def test_sparse_vs_dense_nullspace_dims():
    rng = random.Random(7)
    for _ in range(25):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        assert len(nullspace_basis(m)) == len(dense_nullspace(m.to_dense(), m.cols))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                min_size=1, max_size=5))
def test_rank_transpose_property(rows):
    m = mat(rows)
    assert rank(m) == rank(m.transpose())


def test_echelon_projection_and_kernel():
    ech = IncrementalEchelon()
    assert ech.add({0: 1, 1: 2})
    assert ech.add({1: 1, 2: 1})
    assert not ech.add({0: 1, 1: 3, 2: 1})  # dependent
    assert ech.rank == 2
    res = ech.project({0: Fraction(1), 1: Fraction(3), 2: Fraction(1)})
    assert res == {}
    res = ech.project({2: Fraction(5)})
    assert res == {2: Fraction(5)}
    kern = ech.kernel_basis(3)
    assert len(kern) == 1


def test_matrix_json_roundtrip():
    m = mat([[1, Fraction(1, 2)], [0, -3]])
    again = SparseMatrix.from_json_obj(m.to_json_obj())
    assert again == m


def test_immutability():
    m = mat([[1]])
    with pytest.raises(AttributeError):
        m.rows = 5
